#pragma once

#include "oblique/sphere_geom.hpp"

#include <functional>
#include <optional>

namespace oblique {

struct BoundaryData; // perturbation.hpp

/// Manufactured exterior solutions v = 1/r + eps u used for validation.
///   degree1: u = sin(theta) e^{i phi} / r^2
///   degree4: u = -(5/2) sin(theta) (7 cos^3 - 3 cos) e^{i phi} / r^5
enum class ModelKind { degree1, degree4 };

struct ExactModel {
  ModelKind kind = ModelKind::degree1;
  double epsilon = 1e-4; // 0 gives the bare monopole
};

/// The perturbing potential u alone (without the monopole or epsilon).
complex u_exact(const ExactModel& model, const SphericalPoint& p);
SphericalVecC grad_u_exact(const ExactModel& model, const SphericalPoint& p);

complex v_exact(const ExactModel& model, const SphericalPoint& p);
SphericalVecC grad_v_exact(const ExactModel& model, const SphericalPoint& p);

/// Closed-form intensity data: (grad v . grad v) on r = 1 equals 1 + eps h.
complex h_of(const ExactModel& model, double phi, double theta);

/// h_of wrapped as boundary data.
BoundaryData h_data(const ExactModel& model);

/// An exterior field u with an optional analytic gradient.
struct ExteriorField {
  std::function<complex(const SphericalPoint&)> value;
  std::function<SphericalVecC(const SphericalPoint&)> gradient; // may be empty
};

/// Builds h from an arbitrary exterior field:
///   h = 2 grad(1/r).grad u + eps grad u . grad u  on r = 1,
/// which is ((grad(1/r + eps u))^2 - 1) / eps without the cancellation. Uses
/// the analytic gradient when present, otherwise central differences
/// (step 1e-5 in r, theta and phi).
BoundaryData h_numeric(const ExteriorField& u, double epsilon);

} // namespace oblique
