#include "oblique/config.hpp"
#include "oblique/errors.hpp"
#include "oblique/reports.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace oblique;
namespace fs = std::filesystem;

namespace {

const fs::path kData = OBLIQUE_TEST_DATA;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("oblique_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

} // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse("# comment\n[model]\nkind = degree4 ; trailing\nepsilon = 1e-2\n\n"
                            "[mesh]\nspec = uv:8x6\nradius = 1.5\n[solver]\norder = 2\nbasis_lmax = 3\n"
                            "[quadrature]\nn_gauss_zeta = 20\ninner_abs_tol = 1e-11\nscheme = rotated\n"
                            "[output]\nreports = field, radius_sweep\ndir = results\n"
                            "[sweep]\nradii = 1, 2, 4\nprobe = 3\n");
  CHECK(c.model == ModelSource::degree4);
  CHECK(c.epsilon == 1e-2);
  CHECK(c.mesh.kind == MeshSpec::Kind::uv);
  CHECK(c.mesh.n_phi == 8);
  CHECK(c.mesh.n_theta == 6);
  CHECK(c.radius == 1.5);
  CHECK(c.order == 2);
  CHECK(c.basis_lmax == 3);
  CHECK(c.quadrature.n_gauss_zeta == 20);
  CHECK(c.quadrature.inner_abs_tol == 1e-11);
  CHECK(c.quadrature.scheme == SurfaceScheme::rotated);
  CHECK(c.outputs == std::vector<ReportKind>{ReportKind::field, ReportKind::radius_sweep});
  CHECK(c.out_dir == fs::path("results"));
  CHECK(c.sweep_radii == std::vector<double>{1, 2, 4});
  CHECK(c.sweep_probe == 3);

  const RunConfig d = parse("");
  CHECK(d.model == ModelSource::degree1);
  CHECK(d.epsilon == 1e-4);
  CHECK(d.order == 3);
  CHECK(d.quadrature.n_gauss_zeta == 5);
  CHECK(d.quadrature.scheme == SurfaceScheme::nested);
}

TEST_CASE("config round trip") {
  RunConfig c;
  c.model = ModelSource::external;
  c.h_file = "h.csv";
  c.h_lmax = 3;
  c.epsilon = 0.1 + 0.2;
  c.mesh = MeshSpec::parse("tri:some/mesh.tri");
  c.quadrature.inner_rel_tol = 1.0 / 3.0;
  c.sweep_radii = {1.0, 1.0 / 7.0 + 1};
  const RunConfig back = parse(format_config(c));
  CHECK(format_config(back) == format_config(c));
  CHECK(back.epsilon == c.epsilon);
  CHECK(back.quadrature.inner_rel_tol == c.quadrature.inner_rel_tol);
  CHECK(back.sweep_radii == c.sweep_radii);
  CHECK(back.mesh.path == "some/mesh.tri");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse("[model]\ncolour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nepsilon = small\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nepsilon = 1e-4x\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model\n"), ConfigError);
  CHECK_THROWS_AS(parse("just text\n"), ConfigError);
  CHECK_THROWS_AS(parse("[output]\nreports = pictures\n"), ConfigError);
  CHECK_THROWS_AS(parse("[quadrature]\nscheme = magic\n"), ConfigError);
  CHECK_THROWS_AS(parse("[solver]\norder = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(load_config(kData / "missing.ini"), ConfigError);

  RunConfig c;
  c.epsilon = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.order = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.radius = 0.9;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.model = ModelSource::external;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.quadrature.n_gauss_zeta = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.sweep_radii = {0.5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("mesh selector") {
  CHECK(MeshSpec::parse("ico").kind == MeshSpec::Kind::ico);
  CHECK(MeshSpec::parse("uv:12x7").str() == "uv:12x7");
  CHECK(MeshSpec::parse("tri:a.tri").path == "a.tri");
  CHECK_THROWS_AS(MeshSpec::parse("uv:12"), ConfigError);
  CHECK_THROWS_AS(MeshSpec::parse("uv:1x5"), ConfigError);
  CHECK_THROWS_AS(MeshSpec::parse("tri:"), ConfigError);
  CHECK_THROWS_AS(MeshSpec::parse("cube"), ConfigError);

  RunConfig c;
  c.mesh = MeshSpec::parse("tri:" + (kData / "octahedron.tri").string());
  CHECK(build_mesh(c).size() == 6);
  c.mesh = MeshSpec::parse("uv:8x6");
  CHECK(build_mesh(c).size() == 48);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-2) == "-2");
}

TEST_CASE("report files and determinism") {
  RunConfig c;
  c.outputs = {ReportKind::error_table, ReportKind::field, ReportKind::radius_sweep};
  c.out_dir = scratch("a");
  const RunSummary s = run(c);
  CHECK(s.order == 3);
  CHECK(s.nodes == 12);
  CHECK(s.files.size() == 4);
  CHECK(s.max_error > 1e-6);
  CHECK(s.max_error < 2e-5);

  const auto table = read_csv(c.out_dir / "error_table.csv");
  REQUIRE(table.size() == 13);
  CHECK(table[0] == std::vector<std::string>{"node", "phi", "theta", "v_exact_re", "v_exact_im", "e1_re", "e1_im",
                                              "e2_re", "e2_im", "e3_re", "e3_im"});
  for (std::size_t i = 1; i < table.size(); ++i) {
    REQUIRE(table[i].size() == 11);
    for (std::size_t j = 1; j < 11; ++j) {
      const double v = std::stod(table[i][j]);
      CHECK(format_double(v) == table[i][j]);
    }
  }

  const auto field = read_csv(c.out_dir / "field.csv");
  REQUIRE(field.size() == 13);
  CHECK(field[0] == std::vector<std::string>{"node", "x", "y", "z", "gx_re", "gy_re", "gz_re", "gx_im", "gy_im",
                                              "gz_im"});

  const auto sweep = read_csv(c.out_dir / "radius_sweep.csv");
  REQUIRE(sweep.size() == 4);
  CHECK(sweep[0][0] == "r");
  CHECK(sweep[0].size() == 11);
  const double e1 = std::stod(sweep[1][1]), e10 = std::stod(sweep[2][1]), e100 = std::stod(sweep[3][1]);
  CHECK(e10 < e1);
  CHECK(e100 < e10);
  CHECK(e10 <= 1e-10);
  CHECK(e10 / e100 >= 1e2);

  const std::string meta = slurp(c.out_dir / "run_metadata.txt");
  CHECK(meta.find("scheme = nested") != std::string::npos);
  CHECK(meta.find("fit_u3_residual") != std::string::npos);

  RunConfig again = c;
  again.out_dir = scratch("b");
  run(again);
  for (const char* f : {"error_table.csv", "field.csv", "radius_sweep.csv", "run_metadata.txt"})
    CHECK(slurp(c.out_dir / f) == slurp(again.out_dir / f));
}

TEST_CASE("lower orders leave empty columns") {
  RunConfig c;
  c.order = 1;
  c.outputs = {ReportKind::error_table};
  c.out_dir = scratch("order1");
  run(c);
  const auto table = read_csv(c.out_dir / "error_table.csv");
  CHECK(table[3][5] != "nan");
  CHECK(table[3][7] == "nan");
  CHECK(table[3][10] == "nan");
}

TEST_CASE("error columns at the printed vertices") {
  const ExactModel model{ModelKind::degree1, 1e-4};
  const PerturbationSolution sol = run_cascade(h_data(model), icosahedron_nodes(1.0), 1e-4);
  RunConfig c;
  const ReferencePotential ref = build_reference(c);

  // printed rows P2..P11 in units of 1e-5, listed against our node order
  struct Row {
    int node;
    complex e1;
  };
  const Row rows[] = {{9, {0.161760813233158, -0.496755613709122}},  {8, {-0.161186200620111, -0.497173094206143}},
                      {7, {-0.422852870662904, -0.307478610759380}}, {6, {-0.522894375099003, 0.0}},
                      {5, {-0.422852870662904, 0.307478610759379}},  {4, {-0.161186200620111, 0.497173094206137}},
                      {3, {0.161760813233158, 0.496755613709128}},   {2, {0.422633388175164, 0.306803113129086}},
                      {11, {0.522184114859492, 0.0}},                {10, {0.422633388175164, -0.306803113129081}}};
  for (const Row& row : rows) {
    const auto n = static_cast<std::size_t>(row.node - 1);
    const complex e1 = (ref(sol.mesh.nodes[n]) - sol.v_values[0][n]) * 1e5;
    CHECK(std::abs(e1 - row.e1) <= 1e-9);
  }

  // third order at the printed P5 direction, three significant figures
  const complex e3 = (ref(sol.mesh.nodes[5]) - sol.v_values[2][5]) * 1e5;
  CHECK(std::abs(e3.real() - (-0.522420853610317)) <= 5e-4);
  CHECK(std::abs(e3.imag()) <= 1e-9);
  CHECK(std::abs(ref(sol.mesh.nodes[0]) - sol.v_values[2][0]) <= 1e-10);
  CHECK(std::abs(ref(sol.mesh.nodes[11]) - sol.v_values[2][11]) <= 1e-10);
}

TEST_CASE("radius sweep probe validation") {
  const PerturbationSolution sol = run_cascade(BoundaryData::zero(), icosahedron_nodes(1.0), 1e-4);
  const ReferencePotential ref = build_reference(RunConfig{});
  CHECK_THROWS_AS(radius_sweep(sol, ref, {1.0}, 0), ConfigError);
  CHECK_THROWS_AS(radius_sweep(sol, ref, {1.0}, 13), ConfigError);
  CHECK(radius_sweep(sol, ref, {2.0}, 12).size() == 1);
}

TEST_CASE("external samples") {
  const auto samples = load_h_samples(kData / "h_zero.csv");
  CHECK(samples.size() == 48);
  CHECK_THROWS_AS(load_h_samples(kData / "missing.csv"), ConfigError);
  CHECK_THROWS_AS(load_h_samples(kData / "octahedron.tri"), ConfigError);

  // samples of the degree-1 h are reproduced by the fit
  std::vector<HSample> h1;
  const BoundaryData exact = h_data({ModelKind::degree1, 1e-4});
  for (const SphericalPoint& p : uv_grid_nodes(8, 6, 1.0).nodes) h1.push_back({p.phi, p.theta, exact(p.phi, p.theta)});
  const BoundaryData fitted = h_from_samples(h1, 2);
  for (double t : {0.3, 1.1, 2.9}) CHECK(std::abs(fitted(0.7, t) - exact(0.7, t)) <= 1e-12);

  RunConfig c;
  c.model = ModelSource::external;
  c.h_file = (kData / "h_zero.csv").string();
  c.outputs = {ReportKind::error_table, ReportKind::field};
  c.out_dir = scratch("zero");
  // 8 longitudes alias m = 4 onto m = -4
  try {
    run(c);
    FAIL("expected a rank failure");
  } catch (const RankDeficientError& e) {
    CHECK(e.stage() == "fit h");
  }
  c.h_lmax = 2;
  const RunSummary s = run(c);
  CHECK(s.max_error <= 1e-12);

  // h = 0: field is -r_hat / r^2
  const auto field = read_csv(c.out_dir / "field.csv");
  for (std::size_t i = 1; i < field.size(); ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(std::stod(field[i][4 + j]) + std::stod(field[i][1 + j])) <= 1e-12);
      CHECK(std::abs(std::stod(field[i][7 + j])) <= 1e-12);
    }
  }

  c.radius = 1.5;
  c.out_dir = scratch("zero15");
  run(c);
  const auto far = read_csv(c.out_dir / "field.csv");
  for (std::size_t i = 1; i < far.size(); ++i) {
    const double g = std::hypot(std::stod(far[i][4]), std::stod(far[i][5]), std::stod(far[i][6]));
    CHECK(std::abs(g - 1 / 2.25) <= 1e-3);
  }
}
