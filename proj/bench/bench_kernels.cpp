// Serial reference kernels against their OpenMP counterparts. Each iteration
// uses a fresh family cache so the counting work is measured, not lookups.

#include <benchmark/benchmark.h>

#include "bnmoo/kernels.hpp"
#include "bnmoo/nsga2.hpp"
#include "bnmoo/synth.hpp"

namespace {

using namespace bnmoo;

struct Workload {
  Dataset data;
  std::vector<Individual> population;
  Dag dag;
  std::vector<Move> moves;
};

Workload make_workload(int n, int m) {
  Rng rng(12345);
  const Dag truth = random_dag(n, 0.2, rng);
  const auto bn = random_cpts(truth, std::vector<int>(n, 2), rng);
  Workload w{forward_sample(bn, m, rng), {}, random_dag(n, 0.15, rng), {}};
  for (int i = 0; i < 200; ++i) w.population.push_back(random_individual(n, 0.1, rng));
  w.moves = neighbor_moves(w.dag);
  return w;
}

template <bool Parallel>
void BM_EvaluateObjectives(benchmark::State& state) {
  const Workload w = make_workload(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto pop = w.population;
    FamilyScoreCache cache(w.data);
    if constexpr (Parallel) evaluate_objectives_parallel(pop, cache);
    else evaluate_objectives_serial(pop, cache);
    benchmark::DoNotOptimize(pop.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.population.size()));
}

template <bool Parallel>
void BM_ScoreMoves(benchmark::State& state) {
  const Workload w = make_workload(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)));
  for (auto _ : state) {
    FamilyScoreCache cache(w.data);
    auto gains = Parallel ? score_moves_parallel(cache, w.dag, w.moves, ScoreKind::BIC,
                                                 Complexity::Parameters)
                          : score_moves_serial(cache, w.dag, w.moves, ScoreKind::BIC,
                                               Complexity::Parameters);
    benchmark::DoNotOptimize(gains.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.moves.size()));
}

void Sizes(benchmark::internal::Benchmark* b) {
  b->Args({15, 50})->Args({15, 500})->Args({30, 500})->Args({30, 5000})->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_EvaluateObjectives<false>)->Name("evaluate_objectives/serial")->Apply(Sizes);
BENCHMARK(BM_EvaluateObjectives<true>)->Name("evaluate_objectives/parallel")->Apply(Sizes);
BENCHMARK(BM_ScoreMoves<false>)->Name("score_moves/serial")->Apply(Sizes);
BENCHMARK(BM_ScoreMoves<true>)->Name("score_moves/parallel")->Apply(Sizes);

}  // namespace

BENCHMARK_MAIN();
