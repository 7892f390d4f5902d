#pragma once

#include <span>
#include <vector>

#include "bnmoo/exec.hpp"
#include "bnmoo/hillclimb.hpp"
#include "bnmoo/individual.hpp"
#include "bnmoo/likelihood.hpp"

namespace bnmoo {

/// Fills objectives of every individual from its (repaired) dag.
void evaluate_objectives_serial(std::span<Individual> population,
                                const FamilyScoreCache& cache);
void evaluate_objectives_parallel(std::span<Individual> population,
                                  const FamilyScoreCache& cache);
void evaluate_objectives(std::span<Individual> population,
                         const FamilyScoreCache& cache, ExecPolicy policy);

/// Gain of each move against `dag`.
std::vector<double> score_moves_serial(const FamilyScoreCache& cache,
                                       const Dag& dag,
                                       std::span<const Move> moves,
                                       ScoreKind kind, Complexity complexity);
std::vector<double> score_moves_parallel(const FamilyScoreCache& cache,
                                         const Dag& dag,
                                         std::span<const Move> moves,
                                         ScoreKind kind, Complexity complexity);
std::vector<double> score_moves(const FamilyScoreCache& cache, const Dag& dag,
                                std::span<const Move> moves, ScoreKind kind,
                                Complexity complexity, ExecPolicy policy);

}  // namespace bnmoo
