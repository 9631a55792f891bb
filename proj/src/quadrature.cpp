#include "oblique/quadrature.hpp"

#include "oblique/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace oblique {

void QuadratureConfig::validate() const {
  if (n_gauss_zeta < 2 || n_gauss_zeta > 64) throw std::invalid_argument("n_gauss_zeta must be in [2, 64]");
  if (!(inner_abs_tol > 0.0) || !(inner_rel_tol > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be positive");
  if (!(kernel.gamma_tol > 0.0)) throw std::invalid_argument("gamma_tol must be positive");
}

GaussRule gauss_legendre(int n) {
  if (n < 2 || n > 64) throw std::invalid_argument("gauss_legendre: n must be in [2, 64]");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // three-term recurrence for P_n(x) and P_{n-1}(x)
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    // final derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

// Kronrod 15-point abscissae on [0, 1] (odd indices are the Gauss 7 nodes).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Segment {
  double a = 0.0;
  double b = 0.0;
  complex value{};
  double error = 0.0;
  double floor = 0.0;
};

Segment gk15(const ScalarFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const complex fc = f(center);
  complex kronrod = fc * kWgk[7];
  complex gauss = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const complex lo = f(center - dx), hi = f(center + dx);
    kronrod += kWgk[j] * (lo + hi);
    resabs += kWgk[j] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
  }
  // round-off floor on the embedded estimate
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(half);
  return {a, b, kronrod * half, std::max(std::abs((kronrod - gauss) * half), floor), floor};
}

bool worse(const Segment& x, const Segment& y) { return x.error < y.error; }

} // namespace

IntegralResult adaptive_integrate_1d(const ScalarFunction& f, double a, double b, const QuadratureConfig& cfg) {
  IntegralResult out;
  if (a == b) return out;
  std::vector<Segment> heap{gk15(f, a, b)};
  out.evaluations = 15;
  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));

  double noise = 0.0;
  auto totals = [&] {
    complex v{};
    double e = 0.0;
    noise = 0.0;
    for (const auto& s : heap) {
      v += s.value;
      e += s.error;
      noise += s.floor;
    }
    return std::pair{v, e};
  };

  // once every segment sits at its round-off floor, bisection cannot help
  auto done = [&](complex v, double e) {
    return e <= std::max(cfg.inner_abs_tol, cfg.inner_rel_tol * std::abs(v)) || e <= noise;
  };

  auto [value, error] = totals();
  int bisections = 0;
  while (!done(value, error)) {
    if (bisections >= cfg.max_subdivisions) {
      out.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.b - worst.a <= min_width) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), worse);
      out.converged = false;
      break;
    }
    heap.push_back(gk15(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(gk15(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), worse);
    out.evaluations += 30;
    ++bisections;
    std::tie(value, error) = totals();
  }
  // sum in left-to-right order so the result does not depend on heap layout
  std::sort(heap.begin(), heap.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  std::tie(value, error) = totals();
  out.value = value;
  out.error_estimate = error;
  return out;
}

IntegralResult nested_inner_integral(const SurfaceFunction& f, double zeta, const QuadratureConfig& cfg) {
  const double theta = std::acos(std::clamp(zeta, -1.0, 1.0));
  IntegralResult inner =
      adaptive_integrate_1d([&](double phi) { return f(phi, theta); }, 0.0, kTwoPi, cfg);
  if (!inner.converged)
    throw ToleranceNotMetError("adaptive phi' integral did not reach tolerance at zeta = " + std::to_string(zeta) +
                               " (error estimate " + sci(inner.error_estimate) + ")");
  return inner;
}

IntegralResult surface_integral_nested(const SurfaceFunction& f, const QuadratureConfig& cfg) {
  cfg.validate();
  const GaussRule rule = gauss_legendre(cfg.n_gauss_zeta);
  IntegralResult out;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const IntegralResult inner = nested_inner_integral(f, rule.nodes[i], cfg);
    out.value += rule.weights[i] * inner.value;
    out.error_estimate += rule.weights[i] * inner.error_estimate;
    out.evaluations += inner.evaluations;
  }
  return out;
}

Frame Frame::aligned_to(const SphericalPoint& p) {
  return {unit_theta(p.phi, p.theta), unit_phi(p.phi, p.theta), unit_r(p.phi, p.theta)};
}

IntegralResult surface_integral_in_frame(const SurfaceFunction& f, const Frame& frame, const QuadratureConfig& cfg) {
  cfg.validate();
  double worst_inner = 0.0;
  std::size_t inner_evals = 0;
  auto ring = [&](double t) -> complex {
    const double st = std::sin(t);
    const double ct = std::cos(t);
    auto on_ring = [&](double p) {
      const double a = st * std::cos(p);
      const double b = st * std::sin(p);
      const CartesianVec q{a * frame.e1.x + b * frame.e2.x + ct * frame.e3.x,
                           a * frame.e1.y + b * frame.e2.y + ct * frame.e3.y,
                           a * frame.e1.z + b * frame.e2.z + ct * frame.e3.z};
      const SphericalPoint s = cart_to_sph(q);
      return f(s.phi, s.theta);
    };
    const IntegralResult inner = adaptive_integrate_1d(on_ring, 0.0, kTwoPi, cfg);
    if (!inner.converged)
      throw ToleranceNotMetError("rotated-frame ring integral did not reach tolerance at t = " + std::to_string(t));
    worst_inner = std::max(worst_inner, inner.error_estimate);
    inner_evals += inner.evaluations;
    return st * inner.value;
  };
  IntegralResult outer = adaptive_integrate_1d(ring, 0.0, kPi, cfg);
  if (!outer.converged)
    throw ToleranceNotMetError("rotated-frame polar integral did not reach tolerance (error estimate " +
                               sci(outer.error_estimate) + ")");
  outer.error_estimate += kPi * worst_inner;
  outer.evaluations = inner_evals;
  return outer;
}

IntegralResult surface_integral_2d_rotated(const SurfaceFunction& f, const SphericalPoint& p,
                                           const QuadratureConfig& cfg) {
  if (!(p.r >= 1.0 - kSurfaceTol)) throw std::invalid_argument("rotated integral needs P.r >= 1");
  return surface_integral_in_frame(f, Frame::aligned_to(p), cfg);
}

} // namespace oblique
