#include "oblique/sphere_geom.hpp"

#include "oblique/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oblique {

double CartesianVec::norm() const { return std::sqrt(x * x + y * y + z * z); }

double dot(const CartesianVec& a, const CartesianVec& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

double normalize_phi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod can round a tiny negative up to exactly 2 pi
  if (w >= kTwoPi) w = 0.0;
  return w;
}

SphericalPoint make_point(double r, double phi, double theta) {
  if (!(r > 0.0)) throw std::invalid_argument("spherical point needs r > 0");
  if (!(theta >= 0.0 && theta <= kPi))
    throw std::invalid_argument("co-latitude must lie in [0, pi]");
  return {r, normalize_phi(phi), theta};
}

CartesianVec sph_to_cart(const SphericalPoint& p) {
  const double st = std::sin(p.theta);
  return {p.r * st * std::cos(p.phi), p.r * st * std::sin(p.phi), p.r * std::cos(p.theta)};
}

SphericalPoint cart_to_sph(const CartesianVec& v) {
  const double rho = std::hypot(v.x, v.y);
  const double r = std::hypot(rho, v.z);
  if (r == 0.0) throw std::invalid_argument("cart_to_sph: zero vector has no direction");
  const double theta = std::atan2(rho, v.z);
  const double phi = rho == 0.0 ? 0.0 : normalize_phi(std::atan2(v.y, v.x));
  return {r, phi, theta};
}

double cos_gamma(const SphericalPoint& p, const SphericalPoint& q) {
  const double c = std::cos(p.theta) * std::cos(q.theta) +
                   std::sin(p.theta) * std::sin(q.theta) * std::cos(p.phi - q.phi);
  return std::clamp(c, -1.0, 1.0);
}

double haversine(const SphericalPoint& p, const SphericalPoint& q) {
  const double sdt = std::sin(0.5 * (p.theta - q.theta));
  const double sdp = std::sin(0.5 * (p.phi - q.phi));
  const double h = sdt * sdt + std::sin(p.theta) * std::sin(q.theta) * sdp * sdp;
  return std::clamp(h, 0.0, 1.0);
}

CartesianVec unit_r(double phi, double theta) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

CartesianVec unit_theta(double phi, double theta) {
  const double ct = std::cos(theta);
  return {ct * std::cos(phi), ct * std::sin(phi), -std::sin(theta)};
}

CartesianVec unit_phi(double phi, double /*theta*/) {
  return {-std::sin(phi), std::cos(phi), 0.0};
}

std::array<complex, 3> to_cartesian(const SphericalVecC& v, double phi, double theta) {
  const CartesianVec er = unit_r(phi, theta);
  const CartesianVec et = unit_theta(phi, theta);
  const CartesianVec ep = unit_phi(phi, theta);
  return {v.r * er.x + v.theta * et.x + v.phi * ep.x,
          v.r * er.y + v.theta * et.y + v.phi * ep.y,
          v.r * er.z + v.theta * et.z + v.phi * ep.z};
}

SurfaceMesh SurfaceMesh::at_radius(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("mesh radius must be positive");
  SurfaceMesh out = *this;
  out.radius = r;
  for (auto& n : out.nodes) n.r = r;
  return out;
}

namespace {

double cos_two_fifths_pi() { return std::cos(2.0 * kPi / 5.0); }

// Faces of the icosahedron: triples of mutually nearest neighbours.
std::vector<std::vector<std::size_t>> icosahedron_faces(const std::vector<SphericalPoint>& nodes) {
  const std::size_t n = nodes.size();
  double edge = 4.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edge = std::min(edge, 1.0 - cos_gamma(nodes[i], nodes[j]));
  auto adjacent = [&](std::size_t i, std::size_t j) {
    return std::abs(1.0 - cos_gamma(nodes[i], nodes[j]) - edge) < 1e-9;
  };
  std::vector<std::vector<std::size_t>> faces;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) faces.push_back({i, j, k});
  return faces;
}

} // namespace

double icosahedron_theta_u() {
  const double c = cos_two_fifths_pi();
  return std::acos(c / (c - 1.0));
}

double icosahedron_theta_l() {
  const double c = cos_two_fifths_pi();
  return std::acos(c / (1.0 - c));
}

SurfaceMesh icosahedron_nodes(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("icosahedron radius must be positive");
  SurfaceMesh mesh;
  mesh.radius = radius;
  mesh.kind = MeshKind::icosahedron;
  mesh.nodes.reserve(12);
  mesh.nodes.push_back({radius, 0.0, 0.0});
  // P2..P11 alternate between the two rings, phi_k = k pi / 5 (P11 sits at 2 pi)
  const double tu = icosahedron_theta_u();
  const double tl = icosahedron_theta_l();
  for (int k = 1; k <= 10; ++k)
    mesh.nodes.push_back({radius, normalize_phi(k * kPi / 5.0), (k % 2 == 1) ? tu : tl});
  mesh.nodes.push_back({radius, 0.0, kPi});
  mesh.elements = icosahedron_faces(mesh.nodes);
  return mesh;
}

SurfaceMesh uv_grid_nodes(int n_phi, int n_theta, double radius) {
  if (n_phi < 2 || n_theta < 2) throw std::invalid_argument("uv grid needs n_phi >= 2 and n_theta >= 2");
  if (!(radius > 0.0)) throw std::invalid_argument("uv grid radius must be positive");
  SurfaceMesh mesh;
  mesh.radius = radius;
  mesh.kind = MeshKind::uv_grid;
  mesh.nodes.reserve(static_cast<std::size_t>(n_phi) * n_theta);
  for (int j = 1; j <= n_theta; ++j) {
    const double theta = kPi * j / (n_theta + 1);
    for (int i = 0; i < n_phi; ++i) mesh.nodes.push_back({radius, kTwoPi * i / n_phi, theta});
  }
  // quads between neighbouring rings; node index = (j - 1) * n_phi + i
  const auto np = static_cast<std::size_t>(n_phi);
  for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(n_theta); ++j)
    for (std::size_t i = 0; i < np; ++i) {
      const std::size_t i1 = (i + 1) % np;
      mesh.elements.push_back({j * np + i, j * np + i1, (j + 1) * np + i1, (j + 1) * np + i});
    }
  return mesh;
}

namespace {

// Tokenizes the mesh file with comments stripped.
std::vector<std::string> mesh_tokens(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

template <typename T>
T parse_number(const std::string& tok, const char* what) {
  std::size_t used = 0;
  T value{};
  try {
    if constexpr (std::is_floating_point_v<T>)
      value = static_cast<T>(std::stod(tok, &used));
    else
      value = static_cast<T>(std::stoll(tok, &used));
  } catch (const std::exception&) {
    throw MeshParseError(std::string("triangle mesh: bad ") + what + " '" + tok + "'");
  }
  if (used != tok.size()) throw MeshParseError(std::string("triangle mesh: bad ") + what + " '" + tok + "'");
  return value;
}

} // namespace

SurfaceMesh load_triangle_mesh(const std::filesystem::path& path, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("mesh radius must be positive");
  std::ifstream in(path);
  if (!in) throw MeshParseError("triangle mesh: cannot open " + path.string());
  const auto tokens = mesh_tokens(in);
  if (tokens.size() < 2) throw MeshParseError("triangle mesh: missing 'nv nf' header");
  const auto nv = parse_number<long long>(tokens[0], "vertex count");
  const auto nf = parse_number<long long>(tokens[1], "face count");
  if (nv <= 0 || nf < 0) throw MeshParseError("triangle mesh: counts must be nv > 0, nf >= 0");
  const auto expected = 2 + 3 * static_cast<std::size_t>(nv) + 3 * static_cast<std::size_t>(nf);
  if (tokens.size() != expected)
    throw MeshParseError("triangle mesh: expected " + std::to_string(expected) + " tokens, found " +
                         std::to_string(tokens.size()));

  SurfaceMesh mesh;
  mesh.radius = radius;
  mesh.kind = MeshKind::triangle_import;
  std::size_t t = 2;
  for (long long v = 0; v < nv; ++v) {
    CartesianVec c{parse_number<double>(tokens[t], "coordinate"), parse_number<double>(tokens[t + 1], "coordinate"),
                   parse_number<double>(tokens[t + 2], "coordinate")};
    t += 3;
    if (c.norm() == 0.0)
      throw MeshParseError("triangle mesh: vertex " + std::to_string(v) + " is at the origin (degenerate)");
    SphericalPoint p = cart_to_sph(c);
    p.r = radius;
    mesh.nodes.push_back(p);
  }
  for (long long f = 0; f < nf; ++f) {
    std::vector<std::size_t> face;
    for (int k = 0; k < 3; ++k) {
      const auto idx = parse_number<long long>(tokens[t++], "vertex index");
      if (idx < 0 || idx >= nv)
        throw MeshParseError("triangle mesh: face " + std::to_string(f) + " references vertex " +
                             std::to_string(idx));
      face.push_back(static_cast<std::size_t>(idx));
    }
    mesh.elements.push_back(std::move(face));
  }
  return mesh;
}

} // namespace oblique
