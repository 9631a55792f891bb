#include "oblique/node_kernels.hpp"

#include "oblique/green_kernel.hpp"

#include <exception>
#include <stdexcept>

#ifdef OBLIQUE_HAS_OPENMP
#include <omp.h>
#endif

namespace oblique {

namespace {

constexpr double kInvFourPi = 1.0 / (4.0 * kPi);

void check_point(const SphericalPoint& p) {
  if (!(p.r >= 1.0 - kSurfaceTol)) throw std::invalid_argument("Green integral needs P.r >= 1");
}

} // namespace

SurfaceFunction green_integrand(const SphericalPoint& p, const SurfaceData& b, const SingularityPolicy& policy) {
  return [p, b, policy](double phi, double theta) -> complex {
    const double hav = haversine(p, SphericalPoint{1.0, phi, theta});
    return green_value(p.r, hav, policy) * b(phi, theta);
  };
}

IntegralResult green_integral(const SphericalPoint& p, const SurfaceData& b, const QuadratureConfig& cfg) {
  check_point(p);
  const SurfaceFunction f = green_integrand(p, b, cfg.kernel);
  IntegralResult res = cfg.scheme == SurfaceScheme::nested ? surface_integral_nested(f, cfg)
                                                           : surface_integral_2d_rotated(f, p, cfg);
  res.value *= kInvFourPi;
  res.error_estimate *= kInvFourPi;
  return res;
}

std::vector<complex> green_integrals_serial(std::span<const SphericalPoint> points, const SurfaceData& b,
                                            const QuadratureConfig& cfg) {
  cfg.validate();
  std::vector<complex> out(points.size());
  if (cfg.scheme == SurfaceScheme::rotated) {
    for (std::size_t n = 0; n < points.size(); ++n) out[n] = green_integral(points[n], b, cfg).value;
    return out;
  }
  const GaussRule rule = gauss_legendre(cfg.n_gauss_zeta);
  for (std::size_t n = 0; n < points.size(); ++n) {
    check_point(points[n]);
    const SurfaceFunction f = green_integrand(points[n], b, cfg.kernel);
    complex acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * nested_inner_integral(f, rule.nodes[i], cfg).value;
    out[n] = acc * kInvFourPi;
  }
  return out;
}

std::vector<complex> green_integrals_omp(std::span<const SphericalPoint> points, const SurfaceData& b,
                                         const QuadratureConfig& cfg) {
#ifndef OBLIQUE_HAS_OPENMP
  return green_integrals_serial(points, b, cfg);
#else
  cfg.validate();
  for (const auto& p : points) check_point(p);
  const auto npts = static_cast<long>(points.size());
  std::vector<complex> out(points.size());
  std::exception_ptr failure;

  if (cfg.scheme == SurfaceScheme::rotated) {
#pragma omp parallel for schedule(dynamic)
    for (long n = 0; n < npts; ++n) {
      try {
        out[n] = green_integral(points[n], b, cfg).value;
      } catch (...) {
#pragma omp critical(oblique_kernel_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
  }

  const GaussRule rule = gauss_legendre(cfg.n_gauss_zeta);
  const auto nz = static_cast<long>(rule.nodes.size());
  std::vector<complex> partial(static_cast<std::size_t>(npts * nz));
#pragma omp parallel for schedule(dynamic)
  for (long task = 0; task < npts * nz; ++task) {
    const long n = task / nz;
    const long i = task % nz;
    try {
      const SurfaceFunction f = green_integrand(points[n], b, cfg.kernel);
      partial[task] = nested_inner_integral(f, rule.nodes[i], cfg).value;
    } catch (...) {
#pragma omp critical(oblique_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (long n = 0; n < npts; ++n) {
    complex acc{};
    for (long i = 0; i < nz; ++i) acc += rule.weights[i] * partial[n * nz + i];
    out[n] = acc * kInvFourPi;
  }
  return out;
#endif
}

std::vector<complex> green_integrals(std::span<const SphericalPoint> points, const SurfaceData& b,
                                     const QuadratureConfig& cfg, Execution exec) {
  return exec == Execution::serial ? green_integrals_serial(points, b, cfg) : green_integrals_omp(points, b, cfg);
}

int kernel_threads() {
#ifdef OBLIQUE_HAS_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace oblique
