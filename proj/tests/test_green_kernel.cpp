#include "oblique/errors.hpp"
#include "oblique/green_kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace oblique;

namespace {

// G written exactly as the closed form, no rearrangement.
double green_raw(double r, double cg) {
  const double s = std::sqrt(1 + r * r - 2 * r * cg);
  return 2 / s - std::log((1 + s - r * cg) / (r - r * cg));
}

// Raw form at angle g from the pole, for the numerical-limit oracle.
double green_raw_at(double r, double g) { return green_raw(r, std::cos(g)); }

// Raw closed form in extended precision, for angles down to ~1e-5.
long double green_raw_ld(long double r, long double g) {
  const long double cg = std::cos(g);
  const long double s = std::sqrt(1 + r * r - 2 * r * cg);
  return 2 / s - std::log((1 + s - r * cg) / (r - r * cg));
}

} // namespace

TEST_CASE("closed-form kernel values") {
  const KernelEval a = green({1, 0, 0}, {1, 0, kPi / 2});
  CHECK(a.value == doctest::Approx(std::sqrt(2.0) - std::log(1 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(a.value == doctest::Approx(0.5328399).epsilon(1e-7));
  CHECK(a.s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(a.gamma == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK_FALSE(a.regularized);

  const KernelEval b = green({2, 0, kPi / 2}, {1, kPi, kPi / 2});
  CHECK(b.s == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(b.value == doctest::Approx(2.0 / 3.0 - std::log(1.5)).epsilon(1e-14));
  CHECK(b.value == doctest::Approx(0.2612011).epsilon(1e-6));

  const KernelEval c = green({1.5, 0, 0}, {1, 0, 0});
  CHECK(c.regularized);
  CHECK(c.value == doctest::Approx(4 - std::log(3.0)).epsilon(1e-15));
  CHECK(c.value == doctest::Approx(2.9013877).epsilon(1e-7));
}

TEST_CASE("stable form agrees with the raw formula") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ph(0, kTwoPi), th(0, kPi), lr(0, 3);
  for (int i = 0; i < 2000; ++i) {
    const double r = std::pow(10.0, lr(rng));
    const SphericalPoint p{r, ph(rng), th(rng)}, q{1, ph(rng), th(rng)};
    const KernelEval k = green(p, q);
    if (k.gamma < 1e-3) continue;
    const double raw = green_raw(r, cos_gamma(p, q));
    CHECK(std::abs(k.value - raw) <= 1e-11 * std::max(1.0, std::abs(raw)));
    CHECK(std::abs(k.s - std::sqrt(1 + r * r - 2 * r * cos_gamma(p, q))) <= 1e-12 * std::max(1.0, r));
    CHECK(k.s >= std::abs(r - 1) - 1e-12);
  }
}

TEST_CASE("collinear limit matches a Richardson-extrapolated numerical limit") {
  for (double r : {1.5, 2.0, 3.0, 10.0}) {
    // G is smooth in g^2 near the axis, so extrapolate in h = g^2
    const double g1 = 1e-3, g2 = 5e-4;
    const double f1 = green_raw_at(r, g1), f2 = green_raw_at(r, g2);
    const double extrap = (4 * f2 - f1) / 3;
    CHECK(green_collinear_limit(r) == doctest::Approx(extrap).epsilon(1e-9));
    // closer to the axis in extended precision
    const long double near = green_raw_ld(r, 1e-5L);
    CHECK(std::abs(static_cast<double>(near) - green_collinear_limit(r)) < 1e-8);
  }
  CHECK(green_collinear_limit(1.5) == doctest::Approx(2.9013877).epsilon(1e-7));
  CHECK(green_collinear_limit(2.0) == doctest::Approx(1.3068528).epsilon(1e-7));
  CHECK(green_collinear_limit(1e6) < 3e-6);
  CHECK(green_collinear_limit(1e6) > 0);
  CHECK_THROWS_AS(green_collinear_limit(1.0), std::invalid_argument);
  CHECK_THROWS_AS(green_collinear_limit(1.0 + 1e-13), std::invalid_argument);
  double prev = std::numeric_limits<double>::infinity();
  for (double r = 1.01; r < 1000; r *= 1.3) {
    const double v = green_collinear_limit(r);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("the kernel is continuous through the collinear switch") {
  for (double r : {1.2, 2.0, 7.0}) {
    const double below = green({r, 0, 0}, {1, 0, 0.5e-8}).value;
    const double above = green({r, 0, 0}, {1, 0, 2e-8}).value;
    const double limit = green_collinear_limit(r);
    CHECK(std::abs(below - limit) < 1e-12);
    CHECK(std::abs(above - limit) < 1e-12);
    CHECK(green({r, 0, 0}, {1, 0, 0.5e-8}).regularized);
    CHECK_FALSE(green({r, 0, 0}, {1, 0, 2e-8}).regularized);
  }
}

TEST_CASE("surface collisions") {
  CHECK_THROWS_AS(green({1, 0.4, 1.0}, {1, 0.4, 1.0}), SurfaceCollisionError);
  CHECK_THROWS_AS(green({1, 0.4, 1.0}, {1, 0.4, 1.0 + 5e-9}), SurfaceCollisionError);
  CHECK_NOTHROW(green({1, 0.4, 1.0}, {1, 0.4, 1.0 + 1e-6}));
  SingularityPolicy inf;
  inf.surface_collision = CollisionBehavior::return_infinite;
  CHECK(std::isinf(green({1, 0, 0}, {1, 0, 0}, inf).value));
  SingularityPolicy loose;
  loose.gamma_tol = 1e-3;
  CHECK_THROWS_AS(green({1, 0, 0}, {1, 0, 5e-4}, loose), SurfaceCollisionError);
}

TEST_CASE("kernel rejects points off the domain") {
  CHECK_THROWS_AS(green({0.9, 0, 0}, {1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(green({2, 0, 0}, {1.1, 0, 1}), std::invalid_argument);
  CHECK_NOTHROW(green({2, 0, 0}, {1 + 1e-13, 0, 1}));
}

TEST_CASE("azimuthal symmetry") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ph(0, kTwoPi), th(0.01, kPi - 0.01), rr(1, 5);
  for (int i = 0; i < 200; ++i) {
    const SphericalPoint p{rr(rng), ph(rng), th(rng)}, q{1, ph(rng), th(rng)};
    const double d = ph(rng);
    const double a = green(p, q).value;
    const double b = green({p.r, p.phi + d, p.theta}, {1, q.phi + d, q.theta}).value;
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("decreasing in r for fixed angle") {
  for (double g : {0.1, 0.7, 2.0, 3.1}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double r = 1.0; r < 1e4; r *= 1.5) {
      const double v = green({r, 0, 0}, {1, 0, g}).value;
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("fast path agrees with green()") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ph(0, kTwoPi), th(0, kPi), rr(1, 4);
  for (int i = 0; i < 200; ++i) {
    const SphericalPoint p{rr(rng), ph(rng), th(rng)}, q{1, ph(rng), th(rng)};
    CHECK(green_value(p.r, haversine(p, q)) == green(p, q).value);
  }
}
