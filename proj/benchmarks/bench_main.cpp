#include <benchmark/benchmark.h>

#include "nnc/exposure.hpp"
#include "nnc/harness.hpp"

namespace {

using namespace nnc;

Graph ztp_graph(std::size_t n) {
  ExperimentConfig cfg;
  cfg.graph = GeneratedGraph{ZeroTruncatedPoisson{10.0}, n, 1, true};
  return resolve_scenario(cfg).graph;
}

void BM_Perturb(benchmark::State& state) {
  const Graph g = ztp_graph(static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(perturb(g, NoiseParams{0.005, 0.1}, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_Perturb)->Arg(500)->Arg(5000);

void BM_MomentStats(benchmark::State& state) {
  const Graph g = ztp_graph(static_cast<std::size_t>(state.range(0)));
  const auto reps = replicate(g, NoiseParams{0.005, 0.1}, 3, Rng(4));
  for (auto _ : state) benchmark::DoNotOptimize(moment_stats(reps[0], reps[1], reps[2]));
}
BENCHMARK(BM_MomentStats)->Arg(500)->Arg(5000);

void BM_MmeEstimate(benchmark::State& state) {
  const Graph g = ztp_graph(static_cast<std::size_t>(state.range(0)));
  Rng rng(5);
  const Treatment t = assign_treatment(g.num_vertices(), 0.1, rng);
  const auto y = OutcomeTable::constant(g.num_vertices(), LevelVector{10, 7, 5, 1});
  const auto r = realize_outcomes(g, t, y);
  const Graph obs = perturb(g, NoiseParams{0.005, 0.1}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mme_estimate(obs, t, r, NoiseParams{0.005, 0.1}));
}
BENCHMARK(BM_MmeEstimate)->Arg(500)->Arg(5000);

void BM_Bootstrap(benchmark::State& state) {
  Rng rng(6);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_mean_sd(xs, 1000, 0.95, rng));
}
BENCHMARK(BM_Bootstrap)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
