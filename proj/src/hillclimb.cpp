#include "bnmoo/hillclimb.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnmoo/kernels.hpp"
#include "bnmoo/synth.hpp"

namespace bnmoo {

namespace {

// reach[i*n+j]: directed path i ~> j of length >= 1.
std::vector<std::uint8_t> transitive_closure(const Dag& dag) {
  const int n = dag.size();
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(n) * n, 0);
  const std::vector<int> order = topological_order(dag);
  // Reverse topological order: a node's descendants are known once all of
  // its children are done.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    std::uint8_t* row = reach.data() + static_cast<std::size_t>(v) * n;
    for (int c = 0; c < n; ++c) {
      if (!dag.has_edge(v, c)) continue;
      row[c] = 1;
      const std::uint8_t* crow = reach.data() + static_cast<std::size_t>(c) * n;
      for (int j = 0; j < n; ++j) row[j] |= crow[j];
    }
  }
  return reach;
}

std::vector<int> with_parent(std::vector<int> parents, int p) {
  parents.insert(std::lower_bound(parents.begin(), parents.end(), p), p);
  return parents;
}

std::vector<int> without_parent(std::vector<int> parents, int p) {
  parents.erase(std::lower_bound(parents.begin(), parents.end(), p));
  return parents;
}

}  // namespace

std::vector<Move> neighbor_moves(const Dag& dag) {
  const int n = dag.size();
  const auto reach = transitive_closure(dag);
  auto reaches = [&](int i, int j) {
    return reach[static_cast<std::size_t>(i) * n + j] != 0;
  };

  std::vector<Move> moves;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !dag.has_edge(u, v) && !reaches(v, u))
        moves.push_back({MoveKind::Add, u, v});
  for (const Edge& e : dag.edges()) moves.push_back({MoveKind::Delete, e.parent, e.child});
  for (const Edge& e : dag.edges()) {
    // Reversible iff the edge is the only path parent ~> child.
    bool other_path = false;
    for (int w = 0; w < n && !other_path; ++w)
      other_path = w != e.child && dag.has_edge(e.parent, w) && reaches(w, e.child);
    if (!other_path) moves.push_back({MoveKind::Reverse, e.parent, e.child});
  }
  return moves;
}

Dag apply_move(Dag dag, const Move& move) {
  bool ok = false;
  switch (move.kind) {
    case MoveKind::Add: ok = dag.try_add_edge(move.from, move.to); break;
    case MoveKind::Delete: ok = dag.remove_edge(move.from, move.to); break;
    case MoveKind::Reverse: ok = dag.try_reverse_edge(move.from, move.to); break;
  }
  if (!ok) throw std::invalid_argument("apply_move: move not applicable");
  return dag;
}

void HcConfig::validate() const {
  if (max_iterations < 1)
    throw std::invalid_argument("hill climbing: max_iterations must be >= 1");
  if (restarts < 0) throw std::invalid_argument("hill climbing: restarts must be >= 0");
  if (!(restart_density >= 0.0 && restart_density <= 1.0))
    throw std::invalid_argument("hill climbing: restart density must lie in [0, 1]");
}

double family_score(const FamilyScoreCache& cache, int node,
                    const std::vector<int>& parents, ScoreKind kind,
                    Complexity complexity) {
  const Dataset& data = cache.data();
  return cache.family(node, parents) -
         penalty(kind, family_complexity(node, parents, data.arities(), complexity),
                 data.samples());
}

double dag_score(const FamilyScoreCache& cache, const Dag& dag, ScoreKind kind,
                 Complexity complexity) {
  double s = 0.0;
  for (int i = 0; i < dag.size(); ++i)
    s += family_score(cache, i, dag.parents(i), kind, complexity);
  return s;
}

double move_gain(const FamilyScoreCache& cache, const Dag& dag,
                 const Move& move, ScoreKind kind, Complexity complexity) {
  auto fs = [&](int node, const std::vector<int>& parents) {
    return family_score(cache, node, parents, kind, complexity);
  };
  const auto& pto = dag.parents(move.to);
  switch (move.kind) {
    case MoveKind::Add:
      return fs(move.to, with_parent(pto, move.from)) - fs(move.to, pto);
    case MoveKind::Delete:
      return fs(move.to, without_parent(pto, move.from)) - fs(move.to, pto);
    case MoveKind::Reverse: {
      const auto& pfrom = dag.parents(move.from);
      return fs(move.to, without_parent(pto, move.from)) - fs(move.to, pto) +
             fs(move.from, with_parent(pfrom, move.to)) - fs(move.from, pfrom);
    }
  }
  return 0.0;
}

HcResult hill_climb_from(const FamilyScoreCache& cache, Dag start,
                         const HcConfig& config, Rng& rng) {
  config.validate();
  // Gains closer than this to the best are treated as ties.
  constexpr double kTieWindow = 1e-10;

  HcResult result;
  result.dag = std::move(start);
  double score = dag_score(cache, result.dag, config.score, config.complexity);
  while (result.iterations < config.max_iterations) {
    const auto moves = neighbor_moves(result.dag);
    if (moves.empty()) break;
    const auto gains = score_moves(cache, result.dag, moves, config.score,
                                   config.complexity, config.exec);
    const double best = *std::max_element(gains.begin(), gains.end());
    if (best <= kImprovementTolerance) break;
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < gains.size(); ++i)
      if (gains[i] >= best - kTieWindow) ties.push_back(i);
    const std::size_t pick =
        ties.size() == 1 ? ties.front() : ties[uniform_index(rng, 0, ties.size() - 1)];
    result.dag = apply_move(std::move(result.dag), moves[pick]);
    score += gains[pick];
    result.trace.push_back(score);
    ++result.iterations;
  }
  result.score = dag_score(cache, result.dag, config.score, config.complexity);
  return result;
}

HcResult hill_climb(const Dataset& data, const HcConfig& config, Rng& rng) {
  FamilyScoreCache cache(data);
  return hill_climb(cache, config, rng);
}

HcResult hill_climb(const FamilyScoreCache& cache, const HcConfig& config,
                    Rng& rng) {
  config.validate();
  const int n = cache.data().variables();
  HcResult best = hill_climb_from(cache, Dag(n), config, rng);
  for (int r = 1; r <= config.restarts; ++r) {
    Dag start = random_dag(n, config.restart_density, rng);
    HcResult run = hill_climb_from(cache, std::move(start), config, rng);
    if (run.score > best.score) {
      best = std::move(run);
      best.best_restart = r;
    }
  }
  best.restarts_used = config.restarts;
  return best;
}

}  // namespace bnmoo
