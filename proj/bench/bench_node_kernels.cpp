#include "oblique/exact_models.hpp"
#include "oblique/node_kernels.hpp"
#include "oblique/perturbation.hpp"
#include "oblique/sphere_geom.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace oblique;

const BoundaryData& model_b1() {
  static const BoundaryData b1 = b1_from_h(h_data({ModelKind::degree1, 1e-4}));
  return b1;
}

void run_kernel(benchmark::State& state, Execution exec, double radius) {
  const SurfaceMesh mesh = icosahedron_nodes(radius);
  QuadratureConfig cfg;
  cfg.n_gauss_zeta = static_cast<int>(state.range(0));
  const SurfaceData b = model_b1().fn;
  for (auto _ : state) {
    auto u = green_integrals(mesh.nodes, b, cfg, exec);
    benchmark::DoNotOptimize(u.data());
  }
  state.counters["threads"] = exec == Execution::serial ? 1 : kernel_threads();
  state.SetItemsProcessed(state.iterations() * static_cast<long>(mesh.size()));
}

void BM_serial_r1(benchmark::State& s) { run_kernel(s, Execution::serial, 1.0); }
void BM_omp_r1(benchmark::State& s) { run_kernel(s, Execution::parallel, 1.0); }
void BM_serial_r1_5(benchmark::State& s) { run_kernel(s, Execution::serial, 1.5); }
void BM_omp_r1_5(benchmark::State& s) { run_kernel(s, Execution::parallel, 1.5); }

void BM_cascade(benchmark::State& state) {
  const SurfaceMesh mesh = icosahedron_nodes(1.0);
  const BoundaryData h = h_data({ModelKind::degree1, 1e-4});
  CascadeOptions opt;
  opt.execution = state.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : state) {
    auto sol = run_cascade(h, mesh, 1e-4, opt);
    benchmark::DoNotOptimize(sol.v_values.data());
  }
}

} // namespace

BENCHMARK(BM_serial_r1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_omp_r1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial_r1_5)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_omp_r1_5)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cascade)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
