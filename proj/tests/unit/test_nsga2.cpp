#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bnmoo/kernels.hpp"
#include "bnmoo/nsga2.hpp"
#include "bnmoo/synth.hpp"
#include "oracle/oracles.hpp"
#include "test_support.hpp"

namespace bnmoo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Individual with_rank(int rank, double crowding) {
  Individual i;
  i.rank = rank;
  i.crowding = crowding;
  return i;
}

std::vector<Individual> ranked_population(const FamilyScoreCache& cache, int q,
                                          double density, Rng& rng) {
  std::vector<Individual> pop;
  for (int i = 0; i < q; ++i)
    pop.push_back(random_individual(cache.data().variables(), density, rng));
  evaluate_objectives_serial(pop, cache);
  for (const auto& f : fast_non_dominated_sort(std::span<Individual>(pop)))
    assign_crowding(pop, f);
  return pop;
}

TEST(Dominates, BetterInBoth) { EXPECT_TRUE(dominates(Objectives{-10, 3}, {-12, 5})); }

TEST(Dominates, EqualPointsNeverDominate) {
  EXPECT_FALSE(dominates(Objectives{-10, 3}, {-10, 3}));
}

TEST(Dominates, IncomparablePoints) {
  const Objectives a{-10, 5}, b{-12, 3};
  EXPECT_FALSE(dominates(a, b));
  EXPECT_FALSE(dominates(b, a));
  EXPECT_EQ(dominates(a, b), oracle::dominates_max_min(a, b));
}

TEST(Dominates, OneObjectiveTiedOtherBetter) {
  EXPECT_TRUE(dominates(Objectives{-10, 3}, {-10, 4}));
  EXPECT_TRUE(dominates(Objectives{-9, 3}, {-10, 3}));
}

TEST(FastNonDominatedSort, SingleIndividual) {
  const std::vector<Objectives> pop{{-1, 1}};
  EXPECT_EQ(fast_non_dominated_sort(pop), (std::vector<std::vector<std::size_t>>{{0}}));
}

TEST(FastNonDominatedSort, TwoComparablePoints) {
  const std::vector<Objectives> pop{{-10, 3}, {-12, 5}};
  const auto expected = oracle::peel_off_fronts(pop);
  EXPECT_EQ(expected, (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  EXPECT_EQ(fast_non_dominated_sort(pop), expected);
}

TEST(FastNonDominatedSort, EmptyPopulationIsAnError) {
  EXPECT_THROW(fast_non_dominated_sort(std::vector<Objectives>{}), std::invalid_argument);
}

TEST(FastNonDominatedSort, FiftyRandomPairsMatchPeelOff) {
  Rng rng(1);
  std::vector<Objectives> pop;
  for (int i = 0; i < 50; ++i)
    pop.push_back({-static_cast<double>(uniform_index(rng, 0, 30)),
                   static_cast<int>(uniform_index(rng, 0, 20))});
  EXPECT_EQ(fast_non_dominated_sort(pop), oracle::peel_off_fronts(pop));
}

TEST(FastNonDominatedSort, ThousandRandomPopulationsMatchPeelOff) {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto size = uniform_index(rng, 1, 64);
    std::vector<Objectives> pop;
    for (std::size_t i = 0; i < size; ++i)
      pop.push_back({-static_cast<double>(uniform_index(rng, 0, 15)) * 0.5,
                     static_cast<int>(uniform_index(rng, 0, 12))});
    ASSERT_EQ(fast_non_dominated_sort(pop), oracle::peel_off_fronts(pop));
  }
}

TEST(FastNonDominatedSort, AssignsRanks) {
  std::vector<Individual> pop(3);
  pop[0].objectives = {-12, 5};
  pop[1].objectives = {-10, 3};
  pop[2].objectives = {-11, 4};
  fast_non_dominated_sort(std::span<Individual>(pop));
  EXPECT_EQ(pop[1].rank, 1);
  EXPECT_EQ(pop[2].rank, 2);
  EXPECT_EQ(pop[0].rank, 3);
}

TEST(CrowdingDistance, SmallFrontsAreAllBoundary) {
  EXPECT_EQ(crowding_distance(std::vector<Objectives>{{1, 1}}), (std::vector<double>{kInf}));
  EXPECT_EQ(crowding_distance(std::vector<Objectives>{{1, 2}, {2, 1}}),
            (std::vector<double>{kInf, kInf}));
}

TEST(CrowdingDistance, NormalizedMiddleMember) {
  // (4-1)/(4-1) for f1 plus (4-1)/(4-1) for f2.
  const auto d = crowding_distance(std::vector<Objectives>{{1, 4}, {2, 2}, {4, 1}});
  EXPECT_EQ(d[0], kInf);
  EXPECT_EQ(d[2], kInf);
  EXPECT_DOUBLE_EQ(d[1], 2.0);
}

TEST(CrowdingDistance, IdenticalValuesGiveZeroInteriors) {
  const auto d = crowding_distance(std::vector<Objectives>(5, Objectives{-3, 2}));
  EXPECT_EQ(std::count(d.begin(), d.end(), kInf), 2);
  EXPECT_EQ(std::count(d.begin(), d.end(), 0.0), 3);
}

TEST(CrowdedCompare, Cases) {
  EXPECT_EQ(crowded_compare(with_rank(1, 0.1), with_rank(2, kInf)), CrowdedOrder::ABetter);
  EXPECT_EQ(crowded_compare(with_rank(1, kInf), with_rank(1, 0.5)), CrowdedOrder::ABetter);
  EXPECT_EQ(crowded_compare(with_rank(1, 0.5), with_rank(1, 0.5)), CrowdedOrder::Tie);
  EXPECT_EQ(crowded_compare(with_rank(3, 0.5), with_rank(1, 0.5)), CrowdedOrder::BBetter);
  EXPECT_THROW(crowded_compare(Individual{}, with_rank(1, 0.5)), std::logic_error);
}

TEST(MakeOffspring, NoVariationCopiesTournamentWinners) {
  Rng rng(3);
  const Dataset data = testing::random_binary(40, 6, rng);
  FamilyScoreCache cache(data);
  const auto parents = ranked_population(cache, 20, 0.2, rng);
  Nsga2Config cfg;
  cfg.population_size = 20;
  cfg.p_chi = 0.0;
  cfg.p_mu = 0.0;
  const auto kids = make_offspring(parents, cfg, cache, rng);
  ASSERT_EQ(kids.size(), 20u);
  for (const auto& k : kids) {
    EXPECT_TRUE(std::any_of(parents.begin(), parents.end(), [&](const Individual& p) {
      return p.genome == k.genome && p.dag == k.dag;
    }));
  }
}

TEST(MakeOffspring, FullMutationComplementsBeforeRepair) {
  Rng rng(4);
  const Dataset data = testing::random_binary(40, 5, rng);
  FamilyScoreCache cache(data);
  const auto parents = ranked_population(cache, 10, 0.2, rng);
  Nsga2Config cfg;
  cfg.population_size = 10;
  cfg.p_chi = 0.0;
  cfg.p_mu = 1.0;
  for (const auto& k : make_offspring(parents, cfg, cache, rng)) {
    // Repair only removes bits, so the child sits inside some parent's complement.
    const bool inside = std::any_of(parents.begin(), parents.end(), [&](const Individual& p) {
      for (std::size_t i = 0; i < p.genome.size(); ++i)
        if (k.genome.bits[i] && p.genome.bits[i]) return false;
      return true;
    });
    EXPECT_TRUE(inside);
    EXPECT_TRUE(oracle::dfs_acyclic(5, k.dag.edges()));
  }
}

TEST(MakeOffspring, ChildrenAreValidIndividuals) {
  Rng rng(5);
  const Dataset data = testing::random_binary(60, 8, rng);
  FamilyScoreCache cache(data);
  auto parents = ranked_population(cache, 40, 0.2, rng);
  Nsga2Config cfg;
  cfg.population_size = 40;
  cfg.p_mu = 0.05;
  int produced = 0;
  for (int round = 0; round < 25; ++round) {
    for (const auto& k : make_offspring(parents, cfg, cache, rng)) {
      ++produced;
      ASSERT_TRUE(oracle::dfs_acyclic(8, k.dag.edges()));
      ASSERT_EQ(k.objectives.arcs, static_cast<int>(k.dag.edge_count()));
      ASSERT_EQ(decode_unchecked(k.genome), k.dag.edges());
      ASSERT_NEAR(k.objectives.log_likelihood, log_likelihood(k.dag, data), 1e-9);
    }
  }
  EXPECT_EQ(produced, 1000);
}

TEST(MakeOffspring, UniformCrossoverAlsoProducesValidChildren) {
  Rng rng(6);
  const Dataset data = testing::random_binary(30, 6, rng);
  FamilyScoreCache cache(data);
  const auto parents = ranked_population(cache, 12, 0.3, rng);
  Nsga2Config cfg;
  cfg.population_size = 12;
  cfg.crossover = CrossoverKind::Uniform;
  cfg.p_chi = 1.0;
  for (const auto& k : make_offspring(parents, cfg, cache, rng))
    EXPECT_TRUE(oracle::dfs_acyclic(6, k.dag.edges()));
}

TEST(Evolve, ZeroGenerationsReturnsInitialFront) {
  Rng data_rng(7);
  const Dataset data = testing::random_binary(50, 6, data_rng);
  Nsga2Config cfg;
  cfg.population_size = 16;
  cfg.generations = 0;
  Rng rng(70);
  const auto res = evolve(data, cfg, rng);
  ASSERT_EQ(res.trace.size(), 1u);
  ASSERT_EQ(res.population.size(), 16u);
  std::vector<Objectives> obj;
  for (const auto& p : res.population) obj.push_back(p.objectives);
  const auto fronts = oracle::peel_off_fronts(obj);
  for (std::size_t i : fronts.front())
    EXPECT_TRUE(std::any_of(res.front.members.begin(), res.front.members.end(),
                            [&](const Individual& m) { return m.dag == res.population[i].dag; }));
  for (const auto& m : res.front.members) {
    for (const auto& p : res.population) EXPECT_FALSE(dominates(p, m));
  }
}

TEST(Evolve, BestObjectivesAreMonotoneAcrossGenerations) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng data_rng(1000 + seed);
    const Dag truth = random_dag(7, 0.3, data_rng);
    const auto bn = random_cpts(truth, std::vector<int>(7, 2), data_rng);
    const Dataset data = forward_sample(bn, 80, data_rng);
    Nsga2Config cfg;
    cfg.population_size = 20;
    cfg.generations = 30;
    Rng rng(seed);
    const auto res = evolve(data, cfg, rng);
    for (std::size_t g = 1; g < res.trace.size(); ++g) {
      EXPECT_GE(res.trace[g].best_f1, res.trace[g - 1].best_f1);
      EXPECT_LE(res.trace[g].best_f2, res.trace[g - 1].best_f2);
    }
  }
}

TEST(Evolve, PopulationInvariantsAndFrontOrdering) {
  Rng data_rng(8);
  const Dataset data = testing::random_binary(60, 7, data_rng);
  Nsga2Config cfg;
  cfg.population_size = 24;
  cfg.generations = 20;
  Rng rng(80);
  const auto res = evolve(data, cfg, rng);
  for (const auto& ind : res.population) {
    EXPECT_TRUE(oracle::dfs_acyclic(7, ind.dag.edges()));
    EXPECT_EQ(ind.objectives.arcs, static_cast<int>(ind.dag.edge_count()));
  }
  const auto& m = res.front.members;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) EXPECT_FALSE(dominates(m[i], m[j]));
    if (i > 0) {
      EXPECT_LE(m[i - 1].objectives.arcs, m[i].objectives.arcs);
      EXPECT_FALSE(m[i - 1].dag == m[i].dag);
    }
  }
}

TEST(Evolve, DeterministicForSameSeed) {
  Rng data_rng(9);
  const Dataset data = testing::random_binary(40, 6, data_rng);
  Nsga2Config cfg;
  cfg.population_size = 20;
  cfg.generations = 15;
  Rng a(5), b(5);
  const auto ra = evolve(data, cfg, a);
  cfg.exec = ExecPolicy::Serial;
  const auto rb = evolve(data, cfg, b);
  ASSERT_EQ(ra.front.size(), rb.front.size());
  for (std::size_t i = 0; i < ra.front.size(); ++i) {
    EXPECT_EQ(ra.front.members[i].dag, rb.front.members[i].dag);
    EXPECT_EQ(ra.front.members[i].objectives, rb.front.members[i].objectives);
  }
}

TEST(Evolve, FindsGlobalLikelihoodOptimumOnFourNodes) {
  const auto dags = oracle::all_dags(4);
  ASSERT_EQ(dags.size(), 543u);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng data_rng(500 + seed);
    const auto bn = random_cpts(random_dag(4, 0.5, data_rng), {2, 2, 2, 2}, data_rng);
    const Dataset data = forward_sample(bn, 500, data_rng);
    double best = -kInf;
    for (const auto& e : dags)
      best = std::max(best, oracle::per_sample_log_likelihood(4, e, data));
    Nsga2Config cfg;
    cfg.population_size = 40;
    cfg.generations = 200;
    Rng rng(seed);
    const auto res = evolve(data, cfg, rng);
    double found = -kInf;
    for (const auto& m : res.front.members) found = std::max(found, m.objectives.log_likelihood);
    hits += std::abs(found - best) <= 1e-6 ? 1 : 0;
  }
  EXPECT_GE(hits, 4);
}

TEST(Nsga2Config, Validation) {
  Nsga2Config c;
  EXPECT_NO_THROW(c.validate());
  c.population_size = 5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.population_size = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = Nsga2Config{};
  c.p_chi = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = Nsga2Config{};
  EXPECT_DOUBLE_EQ(c.mutation_rate(15), 1.0 / 210.0);
}

}  // namespace
}  // namespace bnmoo
