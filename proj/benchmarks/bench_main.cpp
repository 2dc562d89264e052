#include <benchmark/benchmark.h>

#include <cmath>

#include "desinc/box.hpp"
#include "desinc/catalog.hpp"
#include "desinc/hilbert.hpp"
#include "desinc/optimizer.hpp"
#include "desinc/quadrature.hpp"
#include "desinc/sinc.hpp"

namespace {

using namespace desinc;

void BM_TrapezoidOptimized(benchmark::State& state) {
  const CatalogEntry& e = catalog_entry("ex4");
  const CatalogScheme& s = e.scheme("opt");
  const int n = static_cast<int>(state.range(0));
  const RuleConfig cfg{n, optimal_step(s.params, n, false)};
  for (auto _ : state)
    benchmark::DoNotOptimize(trapezoid_nodes(s.fused, cfg));
  state.SetItemsProcessed(state.iterations() * (2 * n + 1));
}
BENCHMARK(BM_TrapezoidOptimized)->Arg(32)->Arg(128)->Arg(512);

void BM_ParameterProgram(benchmark::State& state) {
  const CatalogEntry& e = catalog_entry("ex1");
  const auto pre = preimages(e.problem.singularities, e.problem.domain);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_parameter_problem(pre));
}
BENCHMARK(BM_ParameterProgram)->Unit(benchmark::kMillisecond);

void BM_SincEval(benchmark::State& state) {
  SincExpansion e;
  e.step = 0.25;
  e.transform = std::make_shared<LinearTransform>();
  for (int j = -64; j <= 64; ++j)
    e.coefficients.push_back(std::exp(-0.01 * j * j));
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sinc_eval(e, x));
    x = x < 3.0 ? x + 0.01 : -3.0;
  }
}
BENCHMARK(BM_SincEval);

void BM_BoxReduced(benchmark::State& state) {
  BoxProblem p;
  p.m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(box_expectation_reduced(p, 64));
}
BENCHMARK(BM_BoxReduced)->Arg(2)->Arg(5);

void BM_BoxTensorThreads(benchmark::State& state) {
  BoxProblem p;
  p.m = 4;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        box_expectation_tensor(p, 16, TensorVariant::Optimized, threads));
}
BENCHMARK(BM_BoxTensorThreads)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_HilbertMatrix(benchmark::State& state) {
  const BOConfig& cfg = bo_config();
  const BOScheme& s = cfg.scheme("opt");
  const int n = 32;
  const double h = optimal_step(s.params, n, true);
  for (auto _ : state)
    benchmark::DoNotOptimize(hilbert_derivative_matrix(*s.transform, n, h));
}
BENCHMARK(BM_HilbertMatrix)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
