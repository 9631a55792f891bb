#pragma once

#include "oblique/sphere_geom.hpp"

#include <compare>
#include <span>
#include <vector>

namespace oblique {

inline constexpr int kMaxHarmonicDegree = 32;

struct HarmonicTerm {
  int l = 0;
  int m = 0;

  auto operator<=>(const HarmonicTerm&) const = default;
};

/// Ordered list of (l, m) surface harmonics.
class HarmonicBasis {
public:
  /// The 8-term fitting basis: every (l, m) with l in {1, 2}.
  HarmonicBasis();
  /// Throws std::invalid_argument on |m| > l, l out of range or duplicates.
  explicit HarmonicBasis(std::vector<HarmonicTerm> terms);

  /// All (l, m) with lmin <= l <= lmax, ordered by l then m.
  static HarmonicBasis degrees(int lmin, int lmax);

  const std::vector<HarmonicTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

private:
  std::vector<HarmonicTerm> terms_;
};

/// Value and angular derivatives of one harmonic (or a sum of them).
/// `dphi_over_sin` is (1/sin theta) d/dphi, which stays finite at the poles.
struct HarmonicSample {
  complex value{};
  complex dtheta{};
  complex dphi{};
  complex dphi_over_sin{};
};

/// Y_lm = P_l^|m|(cos theta) e^{i m phi}, unnormalized, no Condon-Shortley
/// phase, so Y_11 = sin theta e^{i phi}.
HarmonicSample eval_harmonic(int l, int m, double phi, double theta);

complex eval_surface_harmonic(int l, int m, double phi, double theta);
complex eval_dtheta(int l, int m, double phi, double theta);
complex eval_dphi(int l, int m, double phi, double theta);

struct HarmonicExpansion {
  HarmonicBasis basis;
  std::vector<complex> coeffs;
  /// 2-norm of the fit residual at the fit nodes.
  double residual_norm = 0.0;
  /// 2-norm condition number of the design matrix.
  double condition_number = 0.0;

  static HarmonicExpansion zero(const HarmonicBasis& basis);

  /// Sum over terms of coefficient times eval_harmonic.
  HarmonicSample sample(double phi, double theta) const;
  complex value(double phi, double theta) const { return sample(phi, theta).value; }
};

/// Least-squares fit of samples at the nodes' directions (radii ignored).
/// Column-pivoted Householder QR; throws RankDeficientError when the design
/// matrix condition number exceeds `max_condition`.
HarmonicExpansion fit_least_squares(std::span<const SphericalPoint> nodes, std::span<const complex> samples,
                                    const HarmonicBasis& basis, double max_condition = 1e12);

/// Exterior extension: each degree-l term becomes Y_lm / r^{l+1}.
complex eval_expansion_exterior(const HarmonicExpansion& exp, const SphericalPoint& p);

/// Gradient of the exterior extension in (r_hat, theta_hat, phi_hat).
SphericalVecC grad_expansion_exterior(const HarmonicExpansion& exp, const SphericalPoint& p);

} // namespace oblique
