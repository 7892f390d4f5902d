#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bnmoo/dataset.hpp"
#include "bnmoo/exec.hpp"
#include "bnmoo/individual.hpp"
#include "bnmoo/likelihood.hpp"
#include "bnmoo/rng.hpp"

namespace bnmoo {

enum class CrossoverKind { SinglePoint, Uniform };

CrossoverKind parse_crossover(std::string_view s);
std::string_view to_string(CrossoverKind k);

struct Nsga2Config {
  int population_size = 100;
  int generations = 100;
  std::optional<double> p_mu;  // unset: 1 / (n(n-1))
  double p_chi = 0.9;
  double init_density = 0.1;
  CrossoverKind crossover = CrossoverKind::SinglePoint;
  std::uint64_t seed = 0;
  ExecPolicy exec = ExecPolicy::Parallel;

  double mutation_rate(int n) const;
  /// Throws std::invalid_argument.
  void validate() const;
};

/// Rank-1 members, deduplicated by graph, sorted by ascending arcs and then
/// descending log-likelihood.
struct ParetoFront {
  std::vector<Individual> members;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

struct GenerationStats {
  int generation = 0;
  double best_f1 = 0.0;
  double median_f1 = 0.0;
  int best_f2 = 0;
  int front_size = 0;
};

struct EvolveResult {
  ParetoFront front;
  std::vector<GenerationStats> trace;  // generation 0 is the initial population
  std::vector<Individual> population;
};

enum class CrowdedOrder { ABetter, BBetter, Tie };

/// Deb's fast non-dominated sort. Fronts hold indices into the input;
/// front k has rank k+1. Throws std::invalid_argument on empty input.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    std::span<const Objectives> objectives);
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    std::span<Individual> population);

/// Boundary members get +inf; interior ones sum normalized neighbor gaps per
/// objective. A zero-range objective contributes nothing.
std::vector<double> crowding_distance(std::span<const Objectives> front);
void assign_crowding(std::span<Individual> population,
                     const std::vector<std::size_t>& front);

/// Lower rank wins, then larger crowding. Throws std::logic_error if rank or
/// crowding is unassigned.
CrowdedOrder crowded_compare(const Individual& a, const Individual& b);

ParetoFront make_front(std::span<const Individual> population);

/// Random genome with each bit set with probability `density`, repaired.
Individual random_individual(int n, double density, Rng& rng);

/// Q offspring from ranked parents. Per pair the stream is consumed as:
/// tournament A, tournament B, crossover decision, crossover draws, child 1
/// mutation, child 2 mutation, child 1 repair, child 2 repair. Objective
/// evaluation happens afterwards and draws nothing.
std::vector<Individual> make_offspring(std::span<const Individual> parents,
                                       const Nsga2Config& config,
                                       const FamilyScoreCache& cache, Rng& rng);

/// Elitist NSGA-II loop for a fixed number of generations.
EvolveResult evolve(const Dataset& data, const Nsga2Config& config, Rng& rng);
EvolveResult evolve(const FamilyScoreCache& cache, const Nsga2Config& config,
                    Rng& rng);

}  // namespace bnmoo
