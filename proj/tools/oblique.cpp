// oblique: perturbation solver for the exterior potential from |grad v| data.
#include "oblique/config.hpp"
#include "oblique/errors.hpp"
#include "oblique/reports.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Overrides {
  std::string config;
  std::optional<std::string> model, h_file, mesh, scheme, reports, out;
  std::optional<double> epsilon, radius, tol;
  std::optional<int> order, n_gauss, basis_lmax, h_lmax;
  bool print_config = false;
};

oblique::RunConfig resolve(const Overrides& o) {
  oblique::RunConfig cfg = o.config.empty() ? oblique::RunConfig{} : oblique::load_config(o.config);
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (o.model) {
    if (*o.model == "degree1" || *o.model == "degree4" || *o.model == "external") {
      oblique::apply_setting(cfg, "model", "kind", *o.model);
    } else {
      // anything else names an external h file
      oblique::apply_setting(cfg, "model", "kind", "external");
      oblique::apply_setting(cfg, "model", "h_file", *o.model);
    }
  }
  if (o.h_file) oblique::apply_setting(cfg, "model", "h_file", *o.h_file);
  if (o.h_lmax) oblique::apply_setting(cfg, "model", "h_lmax", std::to_string(*o.h_lmax));
  if (o.epsilon) oblique::apply_setting(cfg, "model", "epsilon", num(*o.epsilon));
  if (o.radius) oblique::apply_setting(cfg, "mesh", "radius", num(*o.radius));
  if (o.mesh) oblique::apply_setting(cfg, "mesh", "spec", *o.mesh);
  if (o.order) oblique::apply_setting(cfg, "solver", "order", std::to_string(*o.order));
  if (o.basis_lmax) oblique::apply_setting(cfg, "solver", "basis_lmax", std::to_string(*o.basis_lmax));
  if (o.n_gauss) oblique::apply_setting(cfg, "quadrature", "n_gauss_zeta", std::to_string(*o.n_gauss));
  if (o.tol) oblique::apply_setting(cfg, "quadrature", "inner_abs_tol", num(*o.tol));
  if (o.scheme) oblique::apply_setting(cfg, "quadrature", "scheme", *o.scheme);
  if (o.reports) oblique::apply_setting(cfg, "output", "reports", *o.reports);
  if (o.out) oblique::apply_setting(cfg, "output", "dir", *o.out);
  cfg.validate();
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exterior potential from gradient-magnitude data by a Neumann perturbation cascade"};
  app.require_subcommand(1);
  Overrides o;

  auto* solve = app.add_subcommand("solve", "Run the cascade and write reports");
  solve->add_option("--config", o.config, "INI-style config file")->check(CLI::ExistingFile);
  solve->add_option("--model", o.model, "degree1 | degree4 | external | <h csv path>");
  solve->add_option("--h-file", o.h_file, "CSV of phi,theta,h_re,h_im samples");
  solve->add_option("--h-lmax", o.h_lmax, "Highest degree of the harmonic fit to the h samples");
  solve->add_option("--epsilon", o.epsilon, "Perturbation parameter");
  solve->add_option("--radius", o.radius, "Radius of the evaluation mesh (>= 1)");
  solve->add_option("--mesh", o.mesh, "ico | uv:NxM | tri:<path>");
  solve->add_option("--order", o.order, "Approximation order")->check(CLI::Range(1, 3));
  solve->add_option("--n-gauss", o.n_gauss, "Gauss-Legendre points in cos(theta')");
  solve->add_option("--tol", o.tol, "Absolute tolerance of the inner adaptive integral");
  solve->add_option("--scheme", o.scheme, "nested | rotated");
  solve->add_option("--basis-lmax", o.basis_lmax, "Highest degree of the fit basis");
  solve->add_option("--reports", o.reports, "Comma list of error_table, field, radius_sweep");
  solve->add_option("--out", o.out, "Output directory");
  solve->add_flag("--print-config", o.print_config, "Print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  oblique::RunConfig cfg;
  try {
    cfg = resolve(o);
  } catch (const oblique::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (o.print_config) {
    std::cout << oblique::format_config(cfg);
    return 0;
  }

  try {
    const oblique::RunSummary s = oblique::run(cfg);
    std::printf("order %d, %zu nodes: max |v - v%d| = %.6e\n", s.order, s.nodes, s.order, s.max_error);
    for (const auto& f : s.files) std::printf("  wrote %s\n", f.string().c_str());
  } catch (const oblique::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const oblique::MeshParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const oblique::NumericalError& e) {
    std::cerr << "numerical failure in stage '" << e.stage() << "': " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
