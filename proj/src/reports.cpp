#include "oblique/reports.hpp"

#include "oblique/errors.hpp"
#include "oblique/green_kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace oblique {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SurfaceMesh build_mesh(const RunConfig& cfg) {
  switch (cfg.mesh.kind) {
  case MeshSpec::Kind::ico: return icosahedron_nodes(cfg.radius);
  case MeshSpec::Kind::uv: return uv_grid_nodes(cfg.mesh.n_phi, cfg.mesh.n_theta, cfg.radius);
  case MeshSpec::Kind::tri: return load_triangle_mesh(cfg.mesh.path, cfg.radius);
  }
  throw ConfigError("unknown mesh kind");
}

std::vector<HSample> load_h_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("h file: cannot open " + path.string());
  std::vector<HSample> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    HSample s;
    double re = 0.0, im = 0.0;
    if (!(ls >> s.phi >> s.theta >> re >> im)) {
      if (out.empty() && lineno == 1) continue; // header row
      throw ConfigError("h file line " + std::to_string(lineno) + ": expected phi,theta,h_re,h_im");
    }
    s.h = {re, im};
    out.push_back(s);
  }
  if (out.empty()) throw ConfigError("h file: no samples in " + path.string());
  return out;
}

BoundaryData h_from_samples(const std::vector<HSample>& samples, int lmax) {
  std::vector<SphericalPoint> nodes;
  std::vector<complex> values;
  for (const auto& s : samples) {
    nodes.push_back(make_point(1.0, s.phi, s.theta));
    values.push_back(s.h);
  }
  HarmonicExpansion fit;
  try {
    fit = fit_least_squares(nodes, values, HarmonicBasis::degrees(0, lmax));
  } catch (const RankDeficientError& e) {
    throw RankDeficientError(e.what(), "fit h");
  }
  return {[fit = std::move(fit)](double phi, double theta) { return fit.value(phi, theta); }, BoundaryLabel::h, 0};
}

BoundaryData build_h(const RunConfig& cfg) {
  switch (cfg.model) {
  case ModelSource::degree1: return h_data({ModelKind::degree1, cfg.epsilon});
  case ModelSource::degree4: return h_data({ModelKind::degree4, cfg.epsilon});
  case ModelSource::external: return h_from_samples(load_h_samples(cfg.h_file), cfg.h_lmax);
  }
  throw ConfigError("unknown model");
}

ReferencePotential build_reference(const RunConfig& cfg) {
  switch (cfg.model) {
  case ModelSource::degree1: {
    const ExactModel m{ModelKind::degree1, cfg.epsilon};
    return [m](const SphericalPoint& p) { return v_exact(m, p); };
  }
  case ModelSource::degree4: {
    const ExactModel m{ModelKind::degree4, cfg.epsilon};
    return [m](const SphericalPoint& p) { return v_exact(m, p); };
  }
  case ModelSource::external:
    return [](const SphericalPoint& p) { return complex(1.0 / p.r); };
  }
  throw ConfigError("unknown model");
}

void emit_error_table(const PerturbationSolution& sol, const ReferencePotential& ref, std::ostream& out) {
  constexpr int kColumns = 3;
  out << "node,phi,theta,v_exact_re,v_exact_im";
  for (int k = 1; k <= kColumns; ++k) out << ",e" << k << "_re,e" << k << "_im";
  out << "\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = 0; n < sol.mesh.size(); ++n) {
    const SphericalPoint& p = sol.mesh.nodes[n];
    const complex v = ref(p);
    out << n + 1 << "," << format_double(p.phi) << "," << format_double(p.theta) << "," << format_double(v.real())
        << "," << format_double(v.imag());
    for (int k = 1; k <= kColumns; ++k) {
      const complex e = k <= sol.order ? v - sol.v_values[k - 1][n] : complex(nan, nan);
      out << "," << format_double(e.real()) << "," << format_double(e.imag());
    }
    out << "\n";
  }
}

void emit_field_csv(const PerturbationSolution& sol, std::ostream& out) {
  out << "node,x,y,z,gx_re,gy_re,gz_re,gx_im,gy_im,gz_im\n";
  for (std::size_t n = 0; n < sol.mesh.size(); ++n) {
    const SphericalPoint& p = sol.mesh.nodes[n];
    const CartesianVec x = sph_to_cart(p);
    const auto g = to_cartesian(gradient_v(sol, p, GradientMethod::expansion), p.phi, p.theta);
    out << n + 1 << "," << format_double(x.x) << "," << format_double(x.y) << "," << format_double(x.z);
    for (const auto& c : g) out << "," << format_double(c.real());
    for (const auto& c : g) out << "," << format_double(c.imag());
    out << "\n";
  }
}

std::vector<SweepRow> radius_sweep(const PerturbationSolution& sol, const ReferencePotential& ref,
                                   const std::vector<double>& radii, int probe_node) {
  if (probe_node < 1 || static_cast<std::size_t>(probe_node) > sol.mesh.size())
    throw ConfigError("radius sweep: probe node " + std::to_string(probe_node) + " is not in the mesh");
  const SphericalPoint dir = sol.mesh.nodes[static_cast<std::size_t>(probe_node - 1)];
  std::vector<SweepRow> rows;
  for (double r : radii) {
    const SphericalPoint p{r, dir.phi, dir.theta};
    rows.push_back({r, ref(p) - evaluate_v(sol, p, sol.order)});
  }
  return rows;
}

void emit_radius_sweep(const PerturbationSolution& sol, const ReferencePotential& ref, const RunConfig& cfg,
                       std::ostream& out) {
  out << "r,abs_error,error_re,error_im,order,probe,scheme,n_gauss_zeta,inner_abs_tol,inner_rel_tol,basis_lmax\n";
  for (const auto& row : radius_sweep(sol, ref, cfg.sweep_radii, cfg.sweep_probe)) {
    out << format_double(row.r) << "," << format_double(std::abs(row.error)) << ","
        << format_double(row.error.real()) << "," << format_double(row.error.imag()) << "," << sol.order << ","
        << cfg.sweep_probe << "," << to_string(sol.quadrature.scheme) << "," << sol.quadrature.n_gauss_zeta << ","
        << format_double(sol.quadrature.inner_abs_tol) << "," << format_double(sol.quadrature.inner_rel_tol) << ","
        << cfg.basis_lmax << "\n";
  }
}

double max_node_error(const PerturbationSolution& sol, const ReferencePotential& ref, int order) {
  if (order < 1 || order > sol.order) throw std::out_of_range("max_node_error: order outside the solution");
  double worst = 0.0;
  for (std::size_t n = 0; n < sol.mesh.size(); ++n)
    worst = std::max(worst, std::abs(ref(sol.mesh.nodes[n]) - sol.v_values[order - 1][n]));
  return worst;
}

namespace {

std::ofstream open_report(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_metadata(const PerturbationSolution& sol, const RunConfig& cfg, std::ostream& out) {
  out << "model = " << to_string(cfg.model) << "\n"
      << "epsilon = " << format_double(sol.epsilon) << "\n"
      << "mesh = " << cfg.mesh.str() << "\n"
      << "radius = " << format_double(sol.mesh.radius) << "\n"
      << "nodes = " << sol.mesh.size() << "\n"
      << "order = " << sol.order << "\n"
      << "scheme = " << to_string(sol.quadrature.scheme) << "\n"
      << "n_gauss_zeta = " << sol.quadrature.n_gauss_zeta << "\n"
      << "inner_abs_tol = " << format_double(sol.quadrature.inner_abs_tol) << "\n"
      << "inner_rel_tol = " << format_double(sol.quadrature.inner_rel_tol) << "\n"
      << "max_subdivisions = " << sol.quadrature.max_subdivisions << "\n"
      << "basis_terms = " << sol.basis.size() << "\n"
      << "last_order_fitted = " << (PerturbationSolution::kLastOrderFitted ? "true" : "false") << "\n"
      << "pair_convention = " << PerturbationSolution::kPairConvention << "\n";
  for (std::size_t k = 0; k < sol.expansions.size(); ++k)
    out << "fit_u" << k + 1 << "_residual = " << format_double(sol.expansions[k].residual_norm) << "\n"
        << "fit_u" << k + 1 << "_condition = " << format_double(sol.expansions[k].condition_number) << "\n";
}

} // namespace

RunSummary run(const RunConfig& cfg) {
  cfg.validate();
  const SurfaceMesh mesh = build_mesh(cfg);
  const BoundaryData h = build_h(cfg);
  const ReferencePotential ref = build_reference(cfg);

  CascadeOptions options;
  options.order = cfg.order;
  options.basis = HarmonicBasis::degrees(1, cfg.basis_lmax);
  options.quadrature = cfg.quadrature;
  const PerturbationSolution sol = run_cascade(h, mesh, cfg.epsilon, options);

  RunSummary summary;
  summary.order = sol.order;
  summary.nodes = mesh.size();
  summary.max_error = max_node_error(sol, ref, sol.order);

  std::filesystem::create_directories(cfg.out_dir);
  for (ReportKind kind : cfg.outputs) {
    const std::filesystem::path path = cfg.out_dir / (to_string(kind) + ".csv");
    auto out = open_report(path);
    switch (kind) {
    case ReportKind::error_table: emit_error_table(sol, ref, out); break;
    case ReportKind::field: emit_field_csv(sol, out); break;
    case ReportKind::radius_sweep: emit_radius_sweep(sol, ref, cfg, out); break;
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    summary.files.push_back(path);
  }
  const std::filesystem::path meta = cfg.out_dir / "run_metadata.txt";
  auto out = open_report(meta);
  write_metadata(sol, cfg, out);
  summary.files.push_back(meta);
  return summary;
}

} // namespace oblique
