#include "oblique/green_kernel.hpp"

#include "oblique/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace oblique {

namespace {

void check_policy(const SingularityPolicy& policy) {
  if (!(policy.gamma_tol > 0.0)) throw std::invalid_argument("gamma_tol must be positive");
}

void check_source_radius(double r) {
  if (!(r >= 1.0 - kSurfaceTol)) throw std::invalid_argument("Green kernel needs the source radius r >= 1");
}

// Evaluates the kernel away from the collinear configuration. The log
// argument (1 + s - r cos g)/(r - r cos g) equals 1 + 2/(s + r - 1), which is
// free of the 0/0 cancellation near gamma = 0.
double kernel_core(double r, double hav, double& s_out) {
  const double rm1 = r - 1.0;
  const double s = std::sqrt(rm1 * rm1 + 4.0 * r * hav);
  s_out = s;
  return 2.0 / s - std::log1p(2.0 / (s + rm1));
}

} // namespace

double green_collinear_limit(double r) {
  if (!(r > 1.0 + kSurfaceTol))
    throw std::invalid_argument("collinear limit of the Green kernel exists only for r > 1");
  return 2.0 / (r - 1.0) - std::log(r / (r - 1.0));
}

double green_value(double r, double hav, const SingularityPolicy& policy) {
  check_source_radius(r);
  r = std::max(r, 1.0);
  const double half = std::sin(0.5 * policy.gamma_tol);
  if (hav <= half * half) {
    if (r <= 1.0 + kSurfaceTol) {
      if (policy.surface_collision == CollisionBehavior::return_infinite)
        return std::numeric_limits<double>::infinity();
      throw SurfaceCollisionError("Green kernel: evaluation point coincides with a quadrature point on r = 1");
    }
    return green_collinear_limit(r);
  }
  double s = 0.0;
  return kernel_core(r, hav, s);
}

KernelEval green(const SphericalPoint& p, const SphericalPoint& q, const SingularityPolicy& policy) {
  check_policy(policy);
  check_source_radius(p.r);
  if (std::abs(q.r - 1.0) > kSurfaceTol) throw std::invalid_argument("Green kernel needs Q on the unit sphere");
  const double r = std::max(p.r, 1.0);
  const double hav = haversine(p, q);

  KernelEval out;
  out.gamma = 2.0 * std::asin(std::sqrt(hav));
  const double rm1 = r - 1.0;
  out.s = std::sqrt(rm1 * rm1 + 4.0 * r * hav);
  if (out.gamma <= policy.gamma_tol) {
    if (r <= 1.0 + kSurfaceTol) {
      if (policy.surface_collision == CollisionBehavior::return_infinite) {
        out.value = std::numeric_limits<double>::infinity();
        return out;
      }
      throw SurfaceCollisionError("Green kernel: P and Q overlap on the unit sphere (gamma = " +
                                  std::to_string(out.gamma) + ")");
    }
    out.value = green_collinear_limit(r);
    out.regularized = true;
    return out;
  }
  double s = 0.0;
  out.value = kernel_core(r, hav, s);
  return out;
}

} // namespace oblique
