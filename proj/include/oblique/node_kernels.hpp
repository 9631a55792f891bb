#pragma once

// Node-parallel Green integration. green_integrals_serial is the reference
// implementation; green_integrals_omp distributes (node, zeta-node) pairs
// across OpenMP threads and reduces in the same order, so both return
// bit-identical values.

#include "oblique/quadrature.hpp"
#include "oblique/sphere_geom.hpp"

#include <functional>
#include <span>
#include <vector>

namespace oblique {

enum class Execution { serial, parallel };

using SurfaceData = std::function<complex(double phi, double theta)>;

/// G(P, Q) b(Q) as a function of Q = (phi', theta').
SurfaceFunction green_integrand(const SphericalPoint& p, const SurfaceData& b, const SingularityPolicy& policy);

/// (1/4pi) int_S G(P, Q) b(Q) dS_Q for one P.
IntegralResult green_integral(const SphericalPoint& p, const SurfaceData& b, const QuadratureConfig& cfg);

std::vector<complex> green_integrals_serial(std::span<const SphericalPoint> points, const SurfaceData& b,
                                            const QuadratureConfig& cfg);
std::vector<complex> green_integrals_omp(std::span<const SphericalPoint> points, const SurfaceData& b,
                                         const QuadratureConfig& cfg);

std::vector<complex> green_integrals(std::span<const SphericalPoint> points, const SurfaceData& b,
                                     const QuadratureConfig& cfg, Execution exec);

/// Threads the OpenMP kernel will use (1 without OpenMP).
int kernel_threads();

} // namespace oblique
