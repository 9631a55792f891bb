#include "oblique/perturbation.hpp"

#include "oblique/errors.hpp"
#include "oblique/green_kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oblique {

BoundaryData BoundaryData::zero(BoundaryLabel label, int order) {
  return {[](double, double) { return complex{}; }, label, order};
}

BoundaryData b1_from_h(const BoundaryData& h) {
  return {[h](double phi, double theta) { return 0.5 * h(phi, theta); }, BoundaryLabel::b1, 1};
}

complex solve_uk_at(const SphericalPoint& p, const BoundaryData& bk, const QuadratureConfig& cfg) {
  return green_integral(p, bk.fn, cfg).value;
}

complex surface_gradient_dot(complex bk, const HarmonicSample& uk, complex bj, const HarmonicSample& uj) {
  return bk * bj + uk.dtheta * uj.dtheta + uk.dphi_over_sin * uj.dphi_over_sin;
}

BoundaryData b2_from_fit(const BoundaryData& h, const HarmonicExpansion& exp1) {
  auto fn = [h, exp1](double phi, double theta) {
    const complex hv = h(phi, theta);
    const HarmonicSample s = exp1.sample(phi, theta);
    // -h^2/8 - (sum a dw/dtheta)^2 / 2 - (sum a dw/dphi)^2 / (2 sin^2)
    return -0.125 * hv * hv - 0.5 * s.dtheta * s.dtheta - 0.5 * s.dphi_over_sin * s.dphi_over_sin;
  };
  return {std::move(fn), BoundaryLabel::b2, 2};
}

BoundaryData b3_from_fit(const BoundaryData& h, const BoundaryData& b2, const HarmonicExpansion& exp1,
                         const HarmonicExpansion& exp2) {
  auto fn = [h, b2, exp1, exp2](double phi, double theta) {
    const HarmonicSample s1 = exp1.sample(phi, theta);
    const HarmonicSample s2 = exp2.sample(phi, theta);
    return -0.5 * h(phi, theta) * b2(phi, theta) - s1.dtheta * s2.dtheta - s1.dphi_over_sin * s2.dphi_over_sin;
  };
  return {std::move(fn), BoundaryLabel::b3, 3};
}

BoundaryData bn_general(std::span<const BoundaryData> b_list, std::span<const HarmonicExpansion> exp_list, int m) {
  if (m < 2) throw std::invalid_argument("bn_general: order must be >= 2");
  const auto need = static_cast<std::size_t>(m - 1);
  if (b_list.size() < need || exp_list.size() < need)
    throw std::invalid_argument("bn_general: B_1..B_" + std::to_string(m - 1) + " and fits of u_1..u_" +
                                std::to_string(m - 1) + " are required");
  std::vector<BoundaryData> bs(b_list.begin(), b_list.begin() + static_cast<std::ptrdiff_t>(need));
  std::vector<HarmonicExpansion> fits(exp_list.begin(), exp_list.begin() + static_cast<std::ptrdiff_t>(need));
  auto fn = [bs = std::move(bs), fits = std::move(fits), m](double phi, double theta) {
    std::vector<complex> b(bs.size());
    std::vector<HarmonicSample> s(fits.size());
    for (std::size_t k = 0; k < bs.size(); ++k) {
      b[k] = bs[k](phi, theta);
      s[k] = fits[k].sample(phi, theta);
    }
    complex acc{};
    for (int k = 1; k < m; ++k) {
      const int j = m - k;
      acc += surface_gradient_dot(b[k - 1], s[k - 1], b[j - 1], s[j - 1]);
    }
    return -0.5 * acc;
  };
  const BoundaryLabel label = m == 2 ? BoundaryLabel::b2 : m == 3 ? BoundaryLabel::b3 : BoundaryLabel::bn;
  return {std::move(fn), label, m};
}

namespace {

// Re-throws the active exception with `stage` attached, keeping its type.
[[noreturn]] void rethrow_with_stage(const std::string& stage) {
  try {
    throw;
  } catch (const SurfaceCollisionError& e) {
    throw SurfaceCollisionError(stage + ": " + e.what(), stage);
  } catch (const ToleranceNotMetError& e) {
    throw ToleranceNotMetError(stage + ": " + e.what(), stage);
  } catch (const RankDeficientError& e) {
    throw RankDeficientError(stage + ": " + e.what(), stage);
  } catch (const NumericalError& e) {
    throw NumericalError(stage + ": " + e.what(), stage);
  }
}

} // namespace

PerturbationSolution run_cascade(const BoundaryData& h, const SurfaceMesh& mesh, double epsilon,
                                 const CascadeOptions& options) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("run_cascade: epsilon must be positive");
  if (options.order < 1 || options.order > kMaxCascadeOrder)
    throw std::invalid_argument("run_cascade: order must be in [1, " + std::to_string(kMaxCascadeOrder) + "]");
  if (mesh.nodes.empty()) throw std::invalid_argument("run_cascade: mesh has no nodes");
  if (!(mesh.radius >= 1.0 - kSurfaceTol)) throw std::invalid_argument("run_cascade: mesh radius must be >= 1");
  options.quadrature.validate();

  PerturbationSolution sol;
  sol.epsilon = epsilon;
  sol.order = options.order;
  sol.mesh = mesh;
  sol.basis = options.basis;
  sol.quadrature = options.quadrature;

  const SurfaceMesh surface = mesh.at_radius(1.0);
  const bool on_surface = std::abs(mesh.radius - 1.0) <= kSurfaceTol;

  BoundaryData bk = b1_from_h(h);
  for (int k = 1; k <= options.order; ++k) {
    const std::string tag = "u" + std::to_string(k);
    sol.boundary.push_back(bk);
    try {
      sol.u_surface.push_back(green_integrals(surface.nodes, bk.fn, options.quadrature, options.execution));
      sol.u_values.push_back(on_surface ? sol.u_surface.back()
                                        : green_integrals(mesh.nodes, bk.fn, options.quadrature, options.execution));
    } catch (...) {
      rethrow_with_stage(tag + " quadrature");
    }
    try {
      sol.expansions.push_back(fit_least_squares(surface.nodes, sol.u_surface.back(), options.basis));
    } catch (...) {
      rethrow_with_stage("fit " + tag);
    }
    if (k == options.order) break;
    if (k == 1)
      bk = b2_from_fit(h, sol.expansions[0]);
    else if (k == 2)
      bk = b3_from_fit(h, sol.boundary[1], sol.expansions[0], sol.expansions[1]);
    else
      bk = bn_general(sol.boundary, sol.expansions, k + 1);
  }

  std::vector<complex> v(mesh.size());
  for (std::size_t n = 0; n < mesh.size(); ++n) v[n] = 1.0 / mesh.nodes[n].r;
  double eps_k = 1.0;
  for (int k = 1; k <= options.order; ++k) {
    eps_k *= epsilon;
    for (std::size_t n = 0; n < mesh.size(); ++n) v[n] += eps_k * sol.u_values[k - 1][n];
    sol.v_values.push_back(v);
  }
  return sol;
}

complex evaluate_u(const PerturbationSolution& sol, int k, const SphericalPoint& p) {
  if (k < 1 || k > sol.order) throw std::out_of_range("evaluate_u: order outside the solution");
  return solve_uk_at(p, sol.boundary[k - 1], sol.quadrature);
}

complex evaluate_v(const PerturbationSolution& sol, const SphericalPoint& p, int order) {
  if (order < 0 || order > sol.order) throw std::out_of_range("evaluate_v: order outside the solution");
  complex v = 1.0 / p.r;
  double eps_k = 1.0;
  for (int k = 1; k <= order; ++k) {
    eps_k *= sol.epsilon;
    v += eps_k * evaluate_u(sol, k, p);
  }
  return v;
}

std::vector<complex> boundary_residual(const PerturbationSolution& sol, const BoundaryData& h, int order) {
  if (order < 1 || order > sol.order) throw std::out_of_range("boundary_residual: order outside the solution");
  const double eps = sol.epsilon;
  std::vector<complex> out;
  out.reserve(sol.mesh.size());
  for (const SphericalPoint& p : sol.mesh.nodes) {
    // u = sum eps^{k-1} u_k; on S the inward normal derivative is sum eps^{k-1} B_k
    complex dn{}, dt{}, dp{};
    double w = 1.0;
    for (int k = 1; k <= order; ++k) {
      const HarmonicSample s = sol.expansions[k - 1].sample(p.phi, p.theta);
      dn += w * sol.boundary[k - 1](p.phi, p.theta);
      dt += w * s.dtheta;
      dp += w * s.dphi_over_sin;
      w *= eps;
    }
    out.push_back(2.0 * eps * dn + eps * eps * (dn * dn + dt * dt + dp * dp) - eps * h(p.phi, p.theta));
  }
  return out;
}

namespace {

// Point at (r, phi, theta) with theta reflected back into [0, pi].
SphericalPoint reflected(double r, double phi, double theta) {
  if (theta < 0.0) return {r, normalize_phi(phi + kPi), -theta};
  if (theta > kPi) return {r, normalize_phi(phi + kPi), kTwoPi - theta};
  return {r, normalize_phi(phi), theta};
}

} // namespace

SphericalVecC gradient_v(const PerturbationSolution& sol, const SphericalPoint& p, GradientMethod method) {
  if (!(p.r >= 1.0 - kSurfaceTol)) throw std::invalid_argument("gradient_v needs P.r >= 1");
  if (method == GradientMethod::expansion) {
    SphericalVecC g{complex(-1.0 / (p.r * p.r)), {}, {}};
    double eps_k = 1.0;
    for (int k = 1; k <= sol.order; ++k) {
      eps_k *= sol.epsilon;
      const SphericalVecC gk = grad_expansion_exterior(sol.expansions[k - 1], p);
      g.r += eps_k * gk.r;
      g.theta += eps_k * gk.theta;
      g.phi += eps_k * gk.phi;
    }
    return g;
  }

  constexpr double kStep = 1e-6;
  constexpr double kPoleClamp = 1e-7;
  const double sin_t = std::sin(p.theta);
  if (sin_t < std::sin(kPoleClamp))
    throw std::domain_error("finite-difference gradient: phi component undefined at a pole");
  const int n = sol.order;
  auto v = [&](double r, double phi, double theta) { return evaluate_v(sol, reflected(r, phi, theta), n); };

  SphericalVecC g;
  const double dr = kStep * p.r;
  if (p.r - dr < 1.0) {
    g.r = (-3.0 * v(p.r, p.phi, p.theta) + 4.0 * v(p.r + dr, p.phi, p.theta) - v(p.r + 2 * dr, p.phi, p.theta)) /
          (2.0 * dr);
  } else {
    g.r = (v(p.r + dr, p.phi, p.theta) - v(p.r - dr, p.phi, p.theta)) / (2.0 * dr);
  }
  g.theta = (v(p.r, p.phi, p.theta + kStep) - v(p.r, p.phi, p.theta - kStep)) / (2.0 * kStep * p.r);
  g.phi = (v(p.r, p.phi + kStep, p.theta) - v(p.r, p.phi - kStep, p.theta)) / (2.0 * kStep * p.r * sin_t);
  return g;
}

} // namespace oblique
