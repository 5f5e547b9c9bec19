// Serial vs OpenMP kernel-table construction, plus the solve pipeline stages.
#include <benchmark/benchmark.h>

#include <memory>

#include "bor/debye_operators.hpp"
#include "bor/kernel_table.hpp"
#include "bor/solver.hpp"

using namespace bor;

namespace {

struct Fixture {
  GeneratingCurve curve = GeneratingCurve::torus(2.0, 1.0);
  Grid grid;
  std::unique_ptr<NystromStencil> st;
  explicit Fixture(int n) : grid(make_grid(curve, n)), st(std::make_unique<NystromStencil>(curve, grid, alpert_rule(n, 16))) {}
};

void kernel_table(benchmark::State& state, Execution exec) {
  Fixture f(static_cast<int>(state.range(0)));
  const int M = static_cast<int>(state.range(1));
  for (auto _ : state) {
    KernelTable t(*f.st, KernelKind::Helmholtz, 2.0, M + 1, true, exec);
    benchmark::DoNotOptimize(t.g(0, 1));
  }
  state.SetItemsProcessed(state.iterations() * f.st->n() * f.st->slots());
}

void BM_KernelTableSerial(benchmark::State& s) { kernel_table(s, Execution::Serial); }
void BM_KernelTableParallel(benchmark::State& s) { kernel_table(s, Execution::Parallel); }

void BM_SolveAll(benchmark::State& state) {
  auto curve = GeneratingCurve::torus(2.0, 1.0);
  SolverOptions o;
  o.n = static_cast<int>(state.range(0));
  o.M = static_cast<int>(state.range(1));
  o.alias_tol = 0.0;
  o.exec = state.range(2) ? Execution::Parallel : Execution::Serial;
  auto field = IncidentField::electric_dipole(2.0, {2.6, 0.2, 0.4}, {0.3, 1.0, 0.5});
  double kernels = 0, total = 0;
  for (auto _ : state) {
    auto sol = solve_all(field, curve, o);
    for (auto& [k, v] : sol.timings) total += v;
    kernels += sol.timings["kernels"];
  }
  state.counters["kernel_share"] = kernels / total;
}

}  // namespace

BENCHMARK(BM_KernelTableSerial)->Args({61, 12})->Args({121, 12})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelTableParallel)->Args({61, 12})->Args({121, 12})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveAll)->Args({61, 12, 0})->Args({61, 12, 1})->Args({121, 12, 1})->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
