// Serial against OpenMP execution for the three parallel entry points.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <random>

#include "surgeflow/experiment.hpp"
#include "surgeflow/surge_continuous.hpp"
#include "surgeflow/surge_discrete.hpp"

using namespace surgeflow;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_CompetitiveExperiment(benchmark::State& state) {
  const auto g = parse_generator_spec("single:k=25,T=2000");
  const auto a = parse_algorithm_spec("comp");
  ExperimentOptions options;
  options.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(competitive_experiment(g, a, 16, 1, options));
}
BENCHMARK(BM_CompetitiveExperiment)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_UniqueInduction(benchmark::State& state) {
  const std::size_t k = 6;
  std::vector<WeightedEdge> edges;
  for (Vertex v = 0; v + 1 < k; ++v) edges.push_back({v, v + 1, 1});
  const auto m = MetricSpace::from_edges(k, edges);
  const MassVector s({Rational(1, 2), Rational(1, 2), 0, 0, 0, 0});
  const MassVector d({0, 0, Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  const auto r = continuous_surge_prices(s, d, m).surge;
  const auto candidates = perturbed_supplies(d, 200, 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_unique_induction(s, d, r, m, candidates, mode(state)));
}
BENCHMARK(BM_UniqueInduction)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Truthfulness(benchmark::State& state) {
  std::vector<std::vector<Rational>> dist(4, std::vector<Rational>(4));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) dist[a][b] = std::abs(a - b);
  }
  const DiscreteInstance inst(MetricSpace(dist), {{"p0", 0, 7}, {"p1", 1, 4}, {"p2", 3, 9}, {"p3", 2, 2}},
                              {{"t0", 1}, {"t1", 2}, {"t2", 3}});
  std::vector<Rational> grid;
  for (int x = 0; x <= 48; ++x) grid.push_back(Rational(x, 4));
  for (auto _ : state) benchmark::DoNotOptimize(verify_truthful(inst, grid, mode(state)));
}
BENCHMARK(BM_Truthfulness)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
