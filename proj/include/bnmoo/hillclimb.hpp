#pragma once

#include <cstdint>
#include <vector>

#include "bnmoo/dag.hpp"
#include "bnmoo/dataset.hpp"
#include "bnmoo/exec.hpp"
#include "bnmoo/likelihood.hpp"
#include "bnmoo/rng.hpp"

namespace bnmoo {

enum class MoveKind { Add, Delete, Reverse };

struct Move {
  MoveKind kind = MoveKind::Add;
  int from = 0;  // for Delete/Reverse, the existing edge from->to
  int to = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

/// Acyclic additions, all deletions, acyclic reversals, in that order;
/// within each group by (from, to).
std::vector<Move> neighbor_moves(const Dag& dag);

Dag apply_move(Dag dag, const Move& move);

struct HcConfig {
  ScoreKind score = ScoreKind::BIC;
  Complexity complexity = Complexity::Parameters;
  int max_iterations = 100000;
  int restarts = 0;
  double restart_density = 0.1;
  std::uint64_t seed = 0;
  /// Move scoring inside one step. Runs themselves stay single-threaded.
  ExecPolicy exec = ExecPolicy::Serial;

  void validate() const;
};

struct HcResult {
  Dag dag;
  double score = 0.0;
  int iterations = 0;     // accepted moves of the winning run
  int restarts_used = 0;  // restarts actually run
  int best_restart = 0;   // 0 = the empty-graph start
  std::vector<double> trace;  // score after each accepted move, winning run
};

/// Regularized family score: LL_family - R(family).
double family_score(const FamilyScoreCache& cache, int node,
                    const std::vector<int>& parents, ScoreKind kind,
                    Complexity complexity);
double dag_score(const FamilyScoreCache& cache, const Dag& dag, ScoreKind kind,
                 Complexity complexity);

/// Score change of applying `move`, rescoring only the touched families.
double move_gain(const FamilyScoreCache& cache, const Dag& dag,
                 const Move& move, ScoreKind kind, Complexity complexity);

/// Best-improvement hill climbing from the empty graph (restart r > 0 starts
/// from a random DAG). Stops when no move gains more than 1e-9 or after
/// max_iterations accepted moves.
HcResult hill_climb(const Dataset& data, const HcConfig& config, Rng& rng);
HcResult hill_climb(const FamilyScoreCache& cache, const HcConfig& config,
                    Rng& rng);

/// Starting from `start`, without restarts.
HcResult hill_climb_from(const FamilyScoreCache& cache, Dag start,
                         const HcConfig& config, Rng& rng);

inline constexpr double kImprovementTolerance = 1e-9;

}  // namespace bnmoo
