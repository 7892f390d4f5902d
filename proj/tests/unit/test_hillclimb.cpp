#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "bnmoo/hillclimb.hpp"
#include "bnmoo/kernels.hpp"
#include "bnmoo/synth.hpp"
#include "oracle/oracles.hpp"
#include "test_support.hpp"

namespace bnmoo {
namespace {

std::size_t count_kind(const std::vector<Move>& moves, MoveKind k) {
  return std::count_if(moves.begin(), moves.end(), [k](const Move& m) { return m.kind == k; });
}

// Every move whose result is an acyclic graph, by brute force.
std::vector<Move> brute_force_moves(const Dag& d) {
  const int n = d.size();
  const EdgeList base = d.edges();
  std::vector<Move> out;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v || d.has_edge(u, v)) continue;
      EdgeList e = base;
      e.push_back({u, v});
      if (oracle::dfs_acyclic(n, e)) out.push_back({MoveKind::Add, u, v});
    }
  for (const auto& e : base) out.push_back({MoveKind::Delete, e.parent, e.child});
  for (const auto& e : base) {
    EdgeList r = base;
    std::erase(r, e);
    r.push_back({e.child, e.parent});
    if (oracle::dfs_acyclic(n, r)) out.push_back({MoveKind::Reverse, e.parent, e.child});
  }
  return out;
}

Dataset chain_data(int m, Rng& rng) {
  BayesianNetwork bn{Dag::from_edges(3, EdgeList{{0, 1}, {1, 2}}), {2, 2, 2}, {}};
  bn.cpts.push_back(Cpt{0, 2, {}, {}, {0.5, 0.5}});
  bn.cpts.push_back(Cpt{1, 2, {0}, {2}, {0.92, 0.08, 0.08, 0.92}});
  bn.cpts.push_back(Cpt{2, 2, {1}, {2}, {0.9, 0.1, 0.1, 0.9}});
  return forward_sample(bn, m, rng);
}

TEST(NeighborMoves, EmptyGraphHasOnlyAdditions) {
  const auto moves = neighbor_moves(Dag(3));
  EXPECT_EQ(count_kind(moves, MoveKind::Add), 6u);
  EXPECT_EQ(count_kind(moves, MoveKind::Delete), 0u);
  EXPECT_EQ(count_kind(moves, MoveKind::Reverse), 0u);
}

TEST(NeighborMoves, Chain) {
  const Dag d = Dag::from_edges(3, EdgeList{{0, 1}, {1, 2}});
  const auto moves = neighbor_moves(d);
  EXPECT_EQ(moves, brute_force_moves(d));
  EXPECT_EQ(count_kind(moves, MoveKind::Add), 1u);
  EXPECT_EQ(moves.front(), (Move{MoveKind::Add, 0, 2}));
  EXPECT_EQ(count_kind(moves, MoveKind::Delete), 2u);
  EXPECT_EQ(count_kind(moves, MoveKind::Reverse), 2u);
}

TEST(NeighborMoves, CompleteDagHasNoAdditions) {
  const Dag d = Dag::from_edges(3, EdgeList{{0, 1}, {0, 2}, {1, 2}});
  EXPECT_EQ(count_kind(neighbor_moves(d), MoveKind::Add), 0u);
  EXPECT_EQ(neighbor_moves(d), brute_force_moves(d));
}

TEST(NeighborMoves, MatchBruteForceOnRandomDags) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const Dag d = random_dag(2 + static_cast<int>(uniform_index(rng, 0, 6)), uniform01(rng), rng);
    ASSERT_EQ(neighbor_moves(d), brute_force_moves(d));
    for (const auto& mv : neighbor_moves(d)) EXPECT_NO_THROW(apply_move(d, mv));
  }
}

TEST(MoveGain, EqualsFullRescoreDifference) {
  Rng rng(2);
  const Dataset data = testing::random_binary(80, 6, rng);
  FamilyScoreCache cache(data);
  for (int trial = 0; trial < 50; ++trial) {
    const Dag d = random_dag(6, 0.3, rng);
    for (const auto& mv : neighbor_moves(d)) {
      const double full = regularized_score(apply_move(d, mv), data, ScoreKind::BIC) -
                          regularized_score(d, data, ScoreKind::BIC);
      EXPECT_NEAR(move_gain(cache, d, mv, ScoreKind::BIC, Complexity::Parameters), full, 1e-9);
    }
  }
}

TEST(ScoreMoves, ParallelMatchesSerial) {
  Rng rng(3);
  const Dataset data = testing::random_binary(100, 10, rng);
  FamilyScoreCache cache(data);
  const Dag d = random_dag(10, 0.2, rng);
  const auto moves = neighbor_moves(d);
  EXPECT_EQ(score_moves_serial(cache, d, moves, ScoreKind::AIC, Complexity::Edges),
            score_moves_parallel(cache, d, moves, ScoreKind::AIC, Complexity::Edges));
}

TEST(HillClimb, IndependentFairCoinsGiveEmptyGraph) {
  // One pair: the BIC penalty of 0.5 ln 500 is exceeded with probability
  // P(chi2_1 > ln 500) ~ 0.013.
  int empty = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Dataset data = testing::random_binary(500, 2, rng);
    HcConfig cfg;
    cfg.score = ScoreKind::BIC;
    const auto res = hill_climb(data, cfg, rng);
    empty += res.dag.edge_count() == 0 ? 1 : 0;
  }
  EXPECT_GE(empty, 95);
}

TEST(HillClimb, ReachesGlobalBicOptimumOnChainData) {
  const auto dags = oracle::all_dags(3);
  ASSERT_EQ(dags.size(), 25u);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Dataset data = chain_data(500, rng);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : dags)
      best = std::max(best, regularized_score(Dag::from_edges(3, e), data, ScoreKind::BIC));
    HcConfig cfg;
    const auto res = hill_climb(data, cfg, rng);
    EXPECT_NEAR(res.score, best, 1e-9) << "seed " << seed;
  }
}

TEST(HillClimb, IterationLimitContract) {
  Rng rng(4);
  const Dataset data = chain_data(200, rng);
  HcConfig cfg;
  cfg.max_iterations = 0;
  EXPECT_THROW(hill_climb(data, cfg, rng), std::invalid_argument);
  cfg.max_iterations = 1;
  const auto res = hill_climb(data, cfg, rng);
  EXPECT_LE(res.iterations, 1);
  EXPECT_LE(res.dag.edge_count(), 1u);
}

TEST(HillClimb, ResultIsLocalOptimumWithIncreasingTrace) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Dag truth = random_dag(8, 0.3, rng);
    const auto bn = random_cpts(truth, std::vector<int>(8, 2), rng);
    const Dataset data = forward_sample(bn, 200, rng);
    FamilyScoreCache cache(data);
    for (auto kind : {ScoreKind::AIC, ScoreKind::BIC}) {
      HcConfig cfg;
      cfg.score = kind;
      const auto res = hill_climb(cache, cfg, rng);
      for (const auto& mv : neighbor_moves(res.dag))
        EXPECT_LE(move_gain(cache, res.dag, mv, kind, cfg.complexity), kImprovementTolerance);
      for (std::size_t i = 1; i < res.trace.size(); ++i) EXPECT_GT(res.trace[i], res.trace[i - 1]);
      EXPECT_NEAR(res.score, regularized_score(res.dag, data, kind), 1e-9);
      if (!res.trace.empty()) EXPECT_NEAR(res.trace.back(), res.score, 1e-9);
    }
  }
}

TEST(HillClimb, UnpenalizedSearchStopsOnlyWhereNoAdditionHelps) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Dataset data = testing::random_binary(60, 6, rng);
    HcConfig cfg;
    cfg.score = ScoreKind::LogLikelihood;
    const auto res = hill_climb(data, cfg, rng);
    const double ll = log_likelihood(res.dag, data);
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 6; ++v) {
        Dag g = res.dag;
        if (g.try_add_edge(u, v)) EXPECT_LE(log_likelihood(g, data), ll + 1e-9);
      }
  }
}

TEST(HillClimb, RestartsAreDeterministicAndNeverWorse) {
  Rng drng(5);
  const Dataset data = testing::random_binary(100, 7, drng, 0.3);
  HcConfig cfg;
  cfg.score = ScoreKind::AIC;
  Rng r0(1);
  const auto single = hill_climb(data, cfg, r0);
  cfg.restarts = 3;
  Rng r1(1), r2(1);
  const auto a = hill_climb(data, cfg, r1);
  const auto b = hill_climb(data, cfg, r2);
  EXPECT_EQ(a.dag, b.dag);
  EXPECT_EQ(a.restarts_used, 3);
  EXPECT_GE(a.score, single.score - 1e-12);
}

}  // namespace
}  // namespace bnmoo
