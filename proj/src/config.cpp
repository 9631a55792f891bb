#include "oblique/config.hpp"

#include "oblique/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace oblique {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

std::string to_string(ModelSource m) {
  switch (m) {
  case ModelSource::degree1: return "degree1";
  case ModelSource::degree4: return "degree4";
  case ModelSource::external: return "external";
  }
  return "?";
}

std::string to_string(ReportKind k) {
  switch (k) {
  case ReportKind::error_table: return "error_table";
  case ReportKind::field: return "field";
  case ReportKind::radius_sweep: return "radius_sweep";
  }
  return "?";
}

std::string to_string(SurfaceScheme s) { return s == SurfaceScheme::nested ? "nested" : "rotated"; }

MeshSpec MeshSpec::parse(const std::string& text) {
  const std::string t = trim(text);
  MeshSpec spec;
  if (t == "ico" || t == "icosahedron") return spec;
  if (t.rfind("uv:", 0) == 0) {
    const std::string dims = t.substr(3);
    const auto x = dims.find_first_of("xX");
    if (x == std::string::npos) throw ConfigError("mesh: expected uv:NxM, got '" + t + "'");
    spec.kind = Kind::uv;
    spec.n_phi = to_int("mesh", dims.substr(0, x));
    spec.n_theta = to_int("mesh", dims.substr(x + 1));
    if (spec.n_phi < 2 || spec.n_theta < 2) throw ConfigError("mesh: uv grid needs N, M >= 2");
    return spec;
  }
  if (t.rfind("tri:", 0) == 0) {
    spec.kind = Kind::tri;
    spec.path = t.substr(4);
    if (spec.path.empty()) throw ConfigError("mesh: tri: needs a file path");
    return spec;
  }
  throw ConfigError("mesh: expected ico | uv:NxM | tri:<path>, got '" + t + "'");
}

std::string MeshSpec::str() const {
  switch (kind) {
  case Kind::ico: return "ico";
  case Kind::uv: return "uv:" + std::to_string(n_phi) + "x" + std::to_string(n_theta);
  case Kind::tri: return "tri:" + path;
  }
  return "?";
}

void RunConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
  if (!(radius >= 1.0)) throw ConfigError("config: radius must be >= 1");
  if (order < 1 || order > 3) throw ConfigError("config: order must be 1, 2 or 3");
  if (basis_lmax < 1 || basis_lmax > 8) throw ConfigError("config: basis_lmax must be in [1, 8]");
  if (model == ModelSource::external && h_file.empty()) throw ConfigError("config: external model needs h_file");
  if (h_lmax < 0 || h_lmax > 16) throw ConfigError("config: h_lmax must be in [0, 16]");
  if (sweep_probe < 1) throw ConfigError("config: sweep probe is a 1-based node id");
  for (double r : sweep_radii)
    if (!(r >= 1.0)) throw ConfigError("config: sweep radii must be >= 1");
  try {
    quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void apply_setting(RunConfig& cfg, const std::string& section, const std::string& key, const std::string& value) {
  const std::string k = section.empty() ? key : section + "." + key;
  if (k == "model.kind") {
    if (value == "degree1") cfg.model = ModelSource::degree1;
    else if (value == "degree4") cfg.model = ModelSource::degree4;
    else if (value == "external") cfg.model = ModelSource::external;
    else throw ConfigError("config: model.kind must be degree1 | degree4 | external");
  } else if (k == "model.epsilon") {
    cfg.epsilon = to_double(k, value);
  } else if (k == "model.h_file") {
    cfg.h_file = value;
  } else if (k == "model.h_lmax") {
    cfg.h_lmax = to_int(k, value);
  } else if (k == "mesh.spec") {
    cfg.mesh = MeshSpec::parse(value);
  } else if (k == "mesh.radius") {
    cfg.radius = to_double(k, value);
  } else if (k == "solver.order") {
    cfg.order = to_int(k, value);
  } else if (k == "solver.basis_lmax") {
    cfg.basis_lmax = to_int(k, value);
  } else if (k == "quadrature.n_gauss_zeta") {
    cfg.quadrature.n_gauss_zeta = to_int(k, value);
  } else if (k == "quadrature.inner_abs_tol") {
    cfg.quadrature.inner_abs_tol = to_double(k, value);
  } else if (k == "quadrature.inner_rel_tol") {
    cfg.quadrature.inner_rel_tol = to_double(k, value);
  } else if (k == "quadrature.max_subdivisions") {
    cfg.quadrature.max_subdivisions = to_int(k, value);
  } else if (k == "quadrature.gamma_tol") {
    cfg.quadrature.kernel.gamma_tol = to_double(k, value);
  } else if (k == "quadrature.scheme") {
    if (value == "nested") cfg.quadrature.scheme = SurfaceScheme::nested;
    else if (value == "rotated") cfg.quadrature.scheme = SurfaceScheme::rotated;
    else throw ConfigError("config: quadrature.scheme must be nested | rotated");
  } else if (k == "output.reports") {
    cfg.outputs.clear();
    for (const auto& item : split_list(value)) {
      if (item == "error_table") cfg.outputs.push_back(ReportKind::error_table);
      else if (item == "field") cfg.outputs.push_back(ReportKind::field);
      else if (item == "radius_sweep") cfg.outputs.push_back(ReportKind::radius_sweep);
      else throw ConfigError("config: unknown report '" + item + "'");
    }
  } else if (k == "output.dir") {
    cfg.out_dir = value;
  } else if (k == "sweep.radii") {
    cfg.sweep_radii.clear();
    for (const auto& item : split_list(value)) cfg.sweep_radii.push_back(to_double(k, item));
  } else if (k == "sweep.probe") {
    cfg.sweep_probe = to_int(k, value);
  } else {
    throw ConfigError("config: unknown setting '" + k + "'");
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  return parse_config(in);
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[model]\n"
     << "kind = " << to_string(cfg.model) << "\n"
     << "epsilon = " << fmt(cfg.epsilon) << "\n";
  if (!cfg.h_file.empty()) os << "h_file = " << cfg.h_file << "\n";
  os << "h_lmax = " << cfg.h_lmax << "\n\n"
     << "[mesh]\n"
     << "spec = " << cfg.mesh.str() << "\n"
     << "radius = " << fmt(cfg.radius) << "\n\n"
     << "[solver]\n"
     << "order = " << cfg.order << "\n"
     << "basis_lmax = " << cfg.basis_lmax << "\n\n"
     << "[quadrature]\n"
     << "scheme = " << to_string(cfg.quadrature.scheme) << "\n"
     << "n_gauss_zeta = " << cfg.quadrature.n_gauss_zeta << "\n"
     << "inner_abs_tol = " << fmt(cfg.quadrature.inner_abs_tol) << "\n"
     << "inner_rel_tol = " << fmt(cfg.quadrature.inner_rel_tol) << "\n"
     << "max_subdivisions = " << cfg.quadrature.max_subdivisions << "\n"
     << "gamma_tol = " << fmt(cfg.quadrature.kernel.gamma_tol) << "\n\n"
     << "[output]\n"
     << "reports = ";
  for (std::size_t i = 0; i < cfg.outputs.size(); ++i) os << (i ? ", " : "") << to_string(cfg.outputs[i]);
  os << "\n"
     << "dir = " << cfg.out_dir.string() << "\n\n"
     << "[sweep]\n"
     << "radii = ";
  for (std::size_t i = 0; i < cfg.sweep_radii.size(); ++i) os << (i ? ", " : "") << fmt(cfg.sweep_radii[i]);
  os << "\n"
     << "probe = " << cfg.sweep_probe << "\n";
  return os.str();
}

} // namespace oblique
