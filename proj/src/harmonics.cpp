#include "oblique/harmonics.hpp"

#include "oblique/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace oblique {

namespace {

using Poly = std::vector<double>; // coefficients, lowest degree first

// Legendre polynomial coefficients P_0..P_kMaxHarmonicDegree+1.
const std::vector<Poly>& legendre_table() {
  static const std::vector<Poly> table = [] {
    std::vector<Poly> t(kMaxHarmonicDegree + 2);
    t[0] = {1.0};
    t[1] = {0.0, 1.0};
    for (int k = 1; k + 1 < static_cast<int>(t.size()); ++k) {
      Poly next(k + 2, 0.0);
      for (int i = 0; i <= k; ++i) next[i + 1] += (2.0 * k + 1.0) * t[k][i];
      for (int i = 0; i < k; ++i) next[i] -= k * t[k - 1][i];
      for (auto& c : next) c /= (k + 1.0);
      t[k + 1] = std::move(next);
    }
    return t;
  }();
  return table;
}

// m-th derivative of P_l evaluated at x.
double legendre_derivative(int l, int m, double x) {
  const Poly& p = legendre_table()[l];
  if (m > l) return 0.0;
  double acc = 0.0;
  for (int i = l; i >= m; --i) {
    double c = p[i];
    for (int k = 0; k < m; ++k) c *= (i - k);
    acc = acc * x + c;
  }
  return acc;
}

void check_term(int l, int m) {
  if (l < 0 || l > kMaxHarmonicDegree) throw std::invalid_argument("harmonic degree out of range");
  if (std::abs(m) > l) throw std::invalid_argument("harmonic order must satisfy |m| <= l");
}

} // namespace

HarmonicBasis::HarmonicBasis() : HarmonicBasis(degrees(1, 2)) {}

HarmonicBasis::HarmonicBasis(std::vector<HarmonicTerm> terms) : terms_(std::move(terms)) {
  std::set<HarmonicTerm> seen;
  for (const auto& t : terms_) {
    check_term(t.l, t.m);
    if (!seen.insert(t).second)
      throw std::invalid_argument("duplicate harmonic (" + std::to_string(t.l) + ", " + std::to_string(t.m) + ")");
  }
  if (terms_.empty()) throw std::invalid_argument("harmonic basis is empty");
}

HarmonicBasis HarmonicBasis::degrees(int lmin, int lmax) {
  if (lmin < 0 || lmax < lmin) throw std::invalid_argument("bad degree range for harmonic basis");
  std::vector<HarmonicTerm> terms;
  for (int l = lmin; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) terms.push_back({l, m});
  return HarmonicBasis(std::move(terms));
}

HarmonicSample eval_harmonic(int l, int m, double phi, double theta) {
  check_term(l, m);
  const int am = std::abs(m);
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  const double dm = legendre_derivative(l, am, x);
  const double dm1 = legendre_derivative(l, am + 1, x);
  const double s_pow = std::pow(s, am);
  const double s_pow_m1 = am >= 1 ? std::pow(s, am - 1) : 0.0;

  const double plm = s_pow * dm;
  // d/dtheta [s^m D^m P(cos theta)] = m cos s^{m-1} D^m P - s^{m+1} D^{m+1} P
  const double dplm = am * x * s_pow_m1 * dm - s_pow * s * dm1;
  const complex e = std::polar(1.0, m * phi);
  const complex im(0.0, static_cast<double>(m));

  HarmonicSample out;
  out.value = plm * e;
  out.dtheta = dplm * e;
  out.dphi = im * out.value;
  out.dphi_over_sin = im * (s_pow_m1 * dm) * e;
  return out;
}

complex eval_surface_harmonic(int l, int m, double phi, double theta) { return eval_harmonic(l, m, phi, theta).value; }
complex eval_dtheta(int l, int m, double phi, double theta) { return eval_harmonic(l, m, phi, theta).dtheta; }
complex eval_dphi(int l, int m, double phi, double theta) { return eval_harmonic(l, m, phi, theta).dphi; }

HarmonicExpansion HarmonicExpansion::zero(const HarmonicBasis& basis) {
  HarmonicExpansion e;
  e.basis = basis;
  e.coeffs.assign(basis.size(), complex{});
  return e;
}

HarmonicSample HarmonicExpansion::sample(double phi, double theta) const {
  HarmonicSample acc;
  const auto& terms = basis.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (coeffs[k] == complex{}) continue;
    const HarmonicSample y = eval_harmonic(terms[k].l, terms[k].m, phi, theta);
    acc.value += coeffs[k] * y.value;
    acc.dtheta += coeffs[k] * y.dtheta;
    acc.dphi += coeffs[k] * y.dphi;
    acc.dphi_over_sin += coeffs[k] * y.dphi_over_sin;
  }
  return acc;
}

HarmonicExpansion fit_least_squares(std::span<const SphericalPoint> nodes, std::span<const complex> samples,
                                    const HarmonicBasis& basis, double max_condition) {
  if (nodes.size() != samples.size()) throw std::invalid_argument("fit_least_squares: node/sample count mismatch");
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const auto k = static_cast<Eigen::Index>(basis.size());
  if (n < k)
    throw RankDeficientError("fit_least_squares: " + std::to_string(n) + " nodes cannot determine " +
                             std::to_string(k) + " coefficients");

  Eigen::MatrixXcd design(n, k);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = nodes[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& t = basis.terms()[static_cast<std::size_t>(j)];
      design(i, j) = eval_surface_harmonic(t.l, t.m, p.phi, p.theta);
    }
    rhs(i) = samples[static_cast<std::size_t>(i)];
  }

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(design);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(cond <= max_condition))
    throw RankDeficientError("fit_least_squares: design matrix condition number " + std::to_string(cond) +
                             " exceeds " + std::to_string(max_condition) + "; node set cannot resolve the basis");

  const Eigen::VectorXcd coeffs = design.colPivHouseholderQr().solve(rhs);
  HarmonicExpansion out;
  out.basis = basis;
  out.coeffs.assign(coeffs.data(), coeffs.data() + coeffs.size());
  out.residual_norm = (design * coeffs - rhs).norm();
  out.condition_number = cond;
  return out;
}

complex eval_expansion_exterior(const HarmonicExpansion& exp, const SphericalPoint& p) {
  if (!(p.r > 0.0)) throw std::invalid_argument("exterior evaluation needs r > 0");
  complex acc{};
  const auto& terms = exp.basis.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (exp.coeffs[k] == complex{}) continue;
    acc += exp.coeffs[k] * eval_surface_harmonic(terms[k].l, terms[k].m, p.phi, p.theta) /
           std::pow(p.r, terms[k].l + 1);
  }
  return acc;
}

SphericalVecC grad_expansion_exterior(const HarmonicExpansion& exp, const SphericalPoint& p) {
  if (!(p.r > 0.0)) throw std::invalid_argument("exterior gradient needs r > 0");
  SphericalVecC g;
  const auto& terms = exp.basis.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (exp.coeffs[k] == complex{}) continue;
    const int l = terms[k].l;
    const HarmonicSample y = eval_harmonic(l, terms[k].m, p.phi, p.theta);
    const double decay = std::pow(p.r, -(l + 2));
    g.r += exp.coeffs[k] * (-(l + 1.0) * decay) * y.value;
    g.theta += exp.coeffs[k] * decay * y.dtheta;
    g.phi += exp.coeffs[k] * decay * y.dphi_over_sin;
  }
  return g;
}

} // namespace oblique
