#include "oblique/exact_models.hpp"

#include "oblique/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace oblique {

namespace {

void check_model(const ExactModel& model) {
  if (!(model.epsilon >= 0.0)) throw std::invalid_argument("exact model needs epsilon >= 0");
}

// sin(theta) (7 cos^3 - 3 cos) and its theta derivative 28 c^4 - 27 c^2 + 3
double quartic_factor(double c) { return 7.0 * c * c * c - 3.0 * c; }
double quartic_factor_dtheta(double c) { return 28.0 * c * c * c * c - 27.0 * c * c + 3.0; }

} // namespace

complex u_exact(const ExactModel& model, const SphericalPoint& p) {
  const complex e = std::polar(1.0, p.phi);
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  switch (model.kind) {
  case ModelKind::degree1:
    return s * e / (p.r * p.r);
  case ModelKind::degree4:
    return -2.5 * s * quartic_factor(c) * e / std::pow(p.r, 5);
  }
  throw std::logic_error("unknown model kind");
}

SphericalVecC grad_u_exact(const ExactModel& model, const SphericalPoint& p) {
  const complex e = std::polar(1.0, p.phi);
  const complex i(0.0, 1.0);
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  switch (model.kind) {
  case ModelKind::degree1: {
    const double r3 = p.r * p.r * p.r;
    return {-2.0 * s * e / r3, c * e / r3, i * e / r3};
  }
  case ModelKind::degree4: {
    // u = -Y / r^5 with Y = (5/2) sin(theta) q(cos theta) e^{i phi}
    const double r6 = std::pow(p.r, 6);
    const complex y = 2.5 * s * quartic_factor(c) * e;
    const complex y_theta = 2.5 * quartic_factor_dtheta(c) * e;
    const complex y_phi_over_sin = 2.5 * i * quartic_factor(c) * e;
    return {5.0 * y / r6, -y_theta / r6, -y_phi_over_sin / r6};
  }
  }
  throw std::logic_error("unknown model kind");
}

complex v_exact(const ExactModel& model, const SphericalPoint& p) {
  check_model(model);
  return 1.0 / p.r + model.epsilon * u_exact(model, p);
}

SphericalVecC grad_v_exact(const ExactModel& model, const SphericalPoint& p) {
  check_model(model);
  const SphericalVecC gu = grad_u_exact(model, p);
  return {-1.0 / (p.r * p.r) + model.epsilon * gu.r, model.epsilon * gu.theta, model.epsilon * gu.phi};
}

complex h_of(const ExactModel& model, double phi, double theta) {
  check_model(model);
  const double eps = model.epsilon;
  const complex e = std::polar(1.0, phi);
  const complex e2 = e * e;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  switch (model.kind) {
  case ModelKind::degree1:
    return 4.0 * s * e + eps * 3.0 * s * s * e2;
  case ModelKind::degree4: {
    const double q = quartic_factor(c);
    const double dq = 3.0 - 27.0 * c * c + 28.0 * c * c * c * c;
    return -25.0 * e * s * q + eps * (25.0 / 4.0) * (25.0 * e2 * s * s * q * q + e2 * dq * dq - e2 * q * q);
  }
  }
  throw std::logic_error("unknown model kind");
}

BoundaryData h_data(const ExactModel& model) {
  check_model(model);
  return {[model](double phi, double theta) { return h_of(model, phi, theta); }, BoundaryLabel::h, 0};
}

namespace {

SphericalVecC finite_difference_gradient(const std::function<complex(const SphericalPoint&)>& u,
                                         const SphericalPoint& p) {
  constexpr double kStep = 1e-5;
  const double st = std::sin(p.theta);
  if (st < 1e-7) throw std::domain_error("h_numeric: finite-difference gradient undefined at a pole");
  auto at = [&](double r, double phi, double theta) { return u(SphericalPoint{r, phi, theta}); };
  SphericalVecC g;
  g.r = (at(p.r + kStep, p.phi, p.theta) - at(p.r - kStep, p.phi, p.theta)) / (2.0 * kStep);
  g.theta = (at(p.r, p.phi, p.theta + kStep) - at(p.r, p.phi, p.theta - kStep)) / (2.0 * kStep * p.r);
  g.phi = (at(p.r, p.phi + kStep, p.theta) - at(p.r, p.phi - kStep, p.theta)) / (2.0 * kStep * p.r * st);
  return g;
}

} // namespace

BoundaryData h_numeric(const ExteriorField& u, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("h_numeric needs epsilon > 0");
  if (!u.value && !u.gradient) throw std::invalid_argument("h_numeric needs a field value or gradient");
  auto fn = [u, epsilon](double phi, double theta) {
    const SphericalPoint p{1.0, phi, theta};
    const SphericalVecC g = u.gradient ? u.gradient(p) : finite_difference_gradient(u.value, p);
    // grad(1/r) = -r_hat on r = 1
    return -2.0 * g.r + epsilon * (g.r * g.r + g.theta * g.theta + g.phi * g.phi);
  };
  return {std::move(fn), BoundaryLabel::h, 0};
}

} // namespace oblique
