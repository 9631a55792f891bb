#pragma once

#include "oblique/harmonics.hpp"
#include "oblique/node_kernels.hpp"
#include "oblique/quadrature.hpp"
#include "oblique/sphere_geom.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace oblique {

enum class BoundaryLabel { h, b1, b2, b3, bn };

/// Complex function on the unit sphere: the intensity data h or one of the
/// Neumann data B_k of the cascade.
struct BoundaryData {
  std::function<complex(double phi, double theta)> fn;
  BoundaryLabel label = BoundaryLabel::h;
  int order = 0; // k for B_k, 0 for h

  complex operator()(double phi, double theta) const { return fn(phi, theta); }

  static BoundaryData zero(BoundaryLabel label = BoundaryLabel::h, int order = 0);
};

/// B1 = h / 2.
BoundaryData b1_from_h(const BoundaryData& h);

/// (1/4pi) int_S G(P, Q) B_k(Q) dS_Q with the configured surface scheme.
complex solve_uk_at(const SphericalPoint& p, const BoundaryData& bk, const QuadratureConfig& cfg);

/// grad u_k . grad u_j on r = 1, where the radial parts are -B_k and -B_j and
/// the tangential parts come from the fitted expansions.
complex surface_gradient_dot(complex bk, const HarmonicSample& uk, complex bj, const HarmonicSample& uj);

/// B2 = -1/2 (grad u1 . grad u1)_S, radial part of grad u1 is -h/2.
BoundaryData b2_from_fit(const BoundaryData& h, const HarmonicExpansion& exp1);

/// B3 = -(grad u1 . grad u2)_S, radial parts -h/2 and -B2.
BoundaryData b3_from_fit(const BoundaryData& h, const BoundaryData& b2, const HarmonicExpansion& exp1,
                         const HarmonicExpansion& exp2);

/// B_m = -1/2 sum over ordered pairs (k, j), k + j = m, of (grad u_k . grad u_j)_S.
/// Off-diagonal pairs therefore count twice and the k == j term once.
/// `b_list` holds B_1..B_{m-1}, `exp_list` the fits of u_1..u_{m-1}.
BoundaryData bn_general(std::span<const BoundaryData> b_list, std::span<const HarmonicExpansion> exp_list, int m);

inline constexpr int kMaxCascadeOrder = 6;

struct CascadeOptions {
  int order = 3;
  HarmonicBasis basis{};
  QuadratureConfig quadrature{};
  Execution execution = Execution::parallel;
};

struct PerturbationSolution {
  double epsilon = 0.0;
  int order = 0;
  SurfaceMesh mesh;
  HarmonicBasis basis{};
  QuadratureConfig quadrature{};
  /// B_1..B_n.
  std::vector<BoundaryData> boundary;
  /// u_k at the mesh nodes' directions on r = 1 (the fit samples).
  std::vector<std::vector<complex>> u_surface;
  /// u_k at the mesh nodes (mesh radius).
  std::vector<std::vector<complex>> u_values;
  /// Fits of u_1..u_n on r = 1. The last order is fitted too so the
  /// gradient can use it.
  std::vector<HarmonicExpansion> expansions;
  /// v_k = 1/r + sum_{j <= k} eps^j u_j at the mesh nodes.
  std::vector<std::vector<complex>> v_values;

  /// Notes carried into run metadata.
  static constexpr const char* kPairConvention =
      "B_m = -1/2 sum over ordered (k,j), k+j=m; diagonal k=j term counted once";
  static constexpr bool kLastOrderFitted = true;
};

/// B1 -> u1 -> fit -> B2 -> u2 -> fit -> ... up to `order` (1..6). Errors
/// are rethrown as NumericalError with the failing stage recorded.
PerturbationSolution run_cascade(const BoundaryData& h, const SurfaceMesh& mesh, double epsilon,
                                 const CascadeOptions& options = {});

/// u_k(P) by Green integration of the stored B_k (k = 1..order).
complex evaluate_u(const PerturbationSolution& sol, int k, const SphericalPoint& p);

/// v_order(P) = 1/r + sum_{k <= order} eps^k u_k(P) by Green integration.
complex evaluate_v(const PerturbationSolution& sol, const SphericalPoint& p, int order);

/// |grad v_n|^2 - (1 + eps h) on r = 1 at the mesh directions, with the
/// normal derivative of u_k taken from its Neumann data B_k and the
/// tangential parts from the fits. Shrinks like eps^{n+1} when the cascade
/// is consistent.
std::vector<complex> boundary_residual(const PerturbationSolution& sol, const BoundaryData& h, int order);

enum class GradientMethod { expansion, finite_difference };

/// grad v_n at P. The expansion method sums -1/r^2 r_hat and the exterior
/// gradients of the fitted u_k; the finite-difference method differences
/// evaluate_v (steps 1e-6 r in r, 1e-6 rad in angles, one-sided in r on the
/// surface). The finite-difference phi component is undefined within 1e-7 rad
/// of a pole and throws std::domain_error there.
SphericalVecC gradient_v(const PerturbationSolution& sol, const SphericalPoint& p,
                         GradientMethod method = GradientMethod::expansion);

} // namespace oblique
