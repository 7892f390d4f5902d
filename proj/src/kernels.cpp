#include "bnmoo/kernels.hpp"

#include <stdexcept>

namespace bnmoo {

namespace {

void check_population(std::span<const Individual> population,
                      const FamilyScoreCache& cache) {
  for (const auto& ind : population)
    if (ind.dag.size() != cache.data().variables())
      throw std::invalid_argument("evaluate_objectives: dimension mismatch");
}

Objectives evaluate_one(const Dag& dag, const FamilyScoreCache& cache) {
  return {cache.log_likelihood(dag), static_cast<int>(dag.edge_count())};
}

}  // namespace

void evaluate_objectives_serial(std::span<Individual> population,
                                const FamilyScoreCache& cache) {
  check_population(population, cache);
  for (auto& ind : population) ind.objectives = evaluate_one(ind.dag, cache);
}

void evaluate_objectives_parallel(std::span<Individual> population,
                                  const FamilyScoreCache& cache) {
  check_population(population, cache);
  const auto count = static_cast<std::ptrdiff_t>(population.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    population[i].objectives = evaluate_one(population[i].dag, cache);
}

void evaluate_objectives(std::span<Individual> population,
                         const FamilyScoreCache& cache, ExecPolicy policy) {
  if (policy == ExecPolicy::Parallel)
    evaluate_objectives_parallel(population, cache);
  else
    evaluate_objectives_serial(population, cache);
}

std::vector<double> score_moves_serial(const FamilyScoreCache& cache,
                                       const Dag& dag,
                                       std::span<const Move> moves,
                                       ScoreKind kind, Complexity complexity) {
  std::vector<double> gains(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i)
    gains[i] = move_gain(cache, dag, moves[i], kind, complexity);
  return gains;
}

std::vector<double> score_moves_parallel(const FamilyScoreCache& cache,
                                         const Dag& dag,
                                         std::span<const Move> moves,
                                         ScoreKind kind, Complexity complexity) {
  std::vector<double> gains(moves.size());
  const auto count = static_cast<std::ptrdiff_t>(moves.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    gains[i] = move_gain(cache, dag, moves[i], kind, complexity);
  return gains;
}

std::vector<double> score_moves(const FamilyScoreCache& cache, const Dag& dag,
                                std::span<const Move> moves, ScoreKind kind,
                                Complexity complexity, ExecPolicy policy) {
  return policy == ExecPolicy::Parallel
             ? score_moves_parallel(cache, dag, moves, kind, complexity)
             : score_moves_serial(cache, dag, moves, kind, complexity);
}

}  // namespace bnmoo
