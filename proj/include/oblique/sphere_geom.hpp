#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace oblique {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Point in spherical coordinates. `theta` is the co-latitude measured from
/// +z, `phi` the longitude in [0, 2pi).
struct SphericalPoint {
  double r = 1.0;
  double phi = 0.0;
  double theta = 0.0;
};

struct CartesianVec {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

double dot(const CartesianVec& a, const CartesianVec& b);

/// Complex vector field value in the local (r_hat, theta_hat, phi_hat) frame.
struct SphericalVecC {
  complex r{};
  complex theta{};
  complex phi{};
};

/// Wraps phi into [0, 2pi).
double normalize_phi(double phi);

/// Validating constructor: r > 0, theta in [0, pi]; phi is normalized.
SphericalPoint make_point(double r, double phi, double theta);

CartesianVec sph_to_cart(const SphericalPoint& p);
/// Throws std::invalid_argument for the zero vector.
SphericalPoint cart_to_sph(const CartesianVec& v);

/// cos of the angle between the directions of p and q (radii ignored),
/// clamped to [-1, 1].
double cos_gamma(const SphericalPoint& p, const SphericalPoint& q);

/// (1 - cos gamma) / 2 computed in haversine form, accurate for tiny angles.
double haversine(const SphericalPoint& p, const SphericalPoint& q);

/// Local unit vectors at (phi, theta).
CartesianVec unit_r(double phi, double theta);
CartesianVec unit_theta(double phi, double theta);
CartesianVec unit_phi(double phi, double theta);

/// Converts a local-frame complex vector to Cartesian components.
std::array<complex, 3> to_cartesian(const SphericalVecC& v, double phi, double theta);

enum class MeshKind { icosahedron, uv_grid, triangle_import };

struct SurfaceMesh {
  double radius = 1.0;
  std::vector<SphericalPoint> nodes;
  std::vector<std::vector<std::size_t>> elements;
  MeshKind kind = MeshKind::icosahedron;

  std::size_t size() const { return nodes.size(); }
  /// Same angular nodes, all moved to radius `r`.
  SurfaceMesh at_radius(double r) const;
};

/// Icosahedron colatitudes from the closed forms used for the vertex table.
double icosahedron_theta_u();
double icosahedron_theta_l();

/// The 12 icosahedron vertices P1..P12 in table order.
SurfaceMesh icosahedron_nodes(double radius);

/// n_phi * n_theta nodes, phi_i = 2 pi i / n_phi, theta_j = pi j / (n_theta + 1).
/// Poles are never included.
SurfaceMesh uv_grid_nodes(int n_phi, int n_theta, double radius);

/// Reads the plain-text triangle format (`nv nf`, nv vertex lines, nf face
/// lines, `#` comments) and projects every vertex onto the sphere of the
/// given radius.
SurfaceMesh load_triangle_mesh(const std::filesystem::path& path, double radius);

} // namespace oblique
