#pragma once

#include "oblique/green_kernel.hpp"
#include "oblique/sphere_geom.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace oblique {

/// Which surface integrator the solver uses for Green integrals.
///   nested  - Gauss-Legendre in zeta = cos(theta') outside, adaptive in phi' inside.
///   rotated - fully adaptive 2-D integration in a frame whose pole is P.
enum class SurfaceScheme { nested, rotated };

struct QuadratureConfig {
  int n_gauss_zeta = 5;
  double inner_abs_tol = 1e-10;
  double inner_rel_tol = 1e-8;
  /// Maximum number of interval bisections per adaptive integral.
  int max_subdivisions = 50;
  SurfaceScheme scheme = SurfaceScheme::nested;
  SingularityPolicy kernel{};

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct IntegralResult {
  complex value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], 2 <= n <= 64. Nodes ascending.
GaussRule gauss_legendre(int n);

using ScalarFunction = std::function<complex(double)>;
using SurfaceFunction = std::function<complex(double phi, double theta)>;

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. Real and imaginary parts
/// share one subdivision tree. Stops when the summed error estimate is below
/// max(abs_tol, rel_tol |I|) or has reached the round-off floor of every
/// segment (the estimate then stays above the tolerance); if the bisection budget runs out first the
/// result comes back with converged == false.
IntegralResult adaptive_integrate_1d(const ScalarFunction& f, double a, double b, const QuadratureConfig& cfg);

/// Inner integral of the nested scheme: int_0^{2pi} f(phi', arccos(zeta)) dphi'.
/// Throws ToleranceNotMetError when it does not converge.
IntegralResult nested_inner_integral(const SurfaceFunction& f, double zeta, const QuadratureConfig& cfg);

/// Plain surface integral over the unit sphere, sum_i w_i I1(zeta_i) with
/// I1(zeta) = int_0^{2pi} f dphi'. The caller applies any 1/(4 pi).
IntegralResult surface_integral_nested(const SurfaceFunction& f, const QuadratureConfig& cfg);

/// Right-handed orthonormal frame; points are parametrized as
/// sin t cos p e1 + sin t sin p e2 + cos t e3.
struct Frame {
  CartesianVec e1{1, 0, 0};
  CartesianVec e2{0, 1, 0};
  CartesianVec e3{0, 0, 1};

  /// Frame whose pole e3 is the direction of p.
  static Frame aligned_to(const SphericalPoint& p);
};

/// Fully adaptive 2-D integral over the unit sphere parametrized in `frame`.
IntegralResult surface_integral_in_frame(const SurfaceFunction& f, const Frame& frame, const QuadratureConfig& cfg);

/// surface_integral_in_frame with the frame pole placed on P's direction, so
/// the kernel's P == Q singularity sits at a parametric pole where the area
/// element vanishes.
IntegralResult surface_integral_2d_rotated(const SurfaceFunction& f, const SphericalPoint& p,
                                           const QuadratureConfig& cfg);

} // namespace oblique
