#pragma once

#include "oblique/sphere_geom.hpp"

namespace oblique {

/// What the kernel does when P and Q coincide on the unit sphere.
enum class CollisionBehavior { error, return_infinite };

struct SingularityPolicy {
  /// Angular separation (radians) below which P and Q count as collinear.
  double gamma_tol = 1e-8;
  CollisionBehavior surface_collision = CollisionBehavior::error;
};

struct KernelEval {
  double value = 0.0;
  double gamma = 0.0;
  double s = 0.0;
  /// True when the collinear limit was substituted (r > 1, gamma <= gamma_tol).
  bool regularized = false;
};

/// Tolerance on |r - 1| used to decide that a point lies on the unit sphere.
inline constexpr double kSurfaceTol = 1e-12;

/// Neumann function of the second kind for the exterior of the unit sphere,
///   G = 2/s - ln[(1 + s - r cos g) / (r - r cos g)],  s^2 = 1 + r^2 - 2 r cos g,
/// with P at radius r >= 1 and Q on the unit sphere. Throws
/// SurfaceCollisionError when r == 1 and gamma <= gamma_tol (unless the policy
/// asks for +inf).
KernelEval green(const SphericalPoint& p, const SphericalPoint& q, const SingularityPolicy& policy = {});

/// Fast path used by the integrators: r is the source radius and `hav` is
/// (1 - cos gamma) / 2. Same semantics as green().
double green_value(double r, double hav, const SingularityPolicy& policy = {});

/// lim_{gamma -> 0+} G = 2/(r - 1) - ln(r / (r - 1)). Requires r > 1 + 1e-12.
double green_collinear_limit(double r);

} // namespace oblique
