#include "bnmoo/nsga2.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bnmoo/kernels.hpp"

namespace bnmoo {

CrossoverKind parse_crossover(std::string_view s) {
  if (s == "single-point") return CrossoverKind::SinglePoint;
  if (s == "uniform") return CrossoverKind::Uniform;
  throw std::invalid_argument("unknown crossover '" + std::string(s) + "'");
}

std::string_view to_string(CrossoverKind k) {
  return k == CrossoverKind::SinglePoint ? "single-point" : "uniform";
}

bool dominates(const Objectives& a, const Objectives& b) {
  return a.log_likelihood >= b.log_likelihood && a.arcs <= b.arcs &&
         (a.log_likelihood > b.log_likelihood || a.arcs < b.arcs);
}

double Nsga2Config::mutation_rate(int n) const {
  if (p_mu) return *p_mu;
  const auto len = Genome::length_for(n);
  return len == 0 ? 0.0 : 1.0 / static_cast<double>(len);
}

void Nsga2Config::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (population_size < 4 || population_size % 2 != 0)
    throw std::invalid_argument("nsga2: population size must be even and >= 4");
  if (generations < 0)
    throw std::invalid_argument("nsga2: generations must be >= 0");
  if (p_mu && !prob(*p_mu))
    throw std::invalid_argument("nsga2: p_mu must lie in [0, 1]");
  if (!prob(p_chi)) throw std::invalid_argument("nsga2: p_chi must lie in [0, 1]");
  if (!prob(init_density))
    throw std::invalid_argument("nsga2: init density must lie in [0, 1]");
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    std::span<const Objectives> objectives) {
  const std::size_t q = objectives.size();
  if (q == 0) throw std::invalid_argument("fast_non_dominated_sort: empty population");

  std::vector<std::vector<std::size_t>> dominated(q);
  std::vector<std::size_t> dominators(q, 0);
  std::vector<std::vector<std::size_t>> fronts(1);
  for (std::size_t p = 0; p < q; ++p) {
    for (std::size_t o = p + 1; o < q; ++o) {
      if (dominates(objectives[p], objectives[o])) {
        dominated[p].push_back(o);
        ++dominators[o];
      } else if (dominates(objectives[o], objectives[p])) {
        dominated[o].push_back(p);
        ++dominators[p];
      }
    }
  }
  for (std::size_t p = 0; p < q; ++p)
    if (dominators[p] == 0) fronts[0].push_back(p);

  while (true) {
    std::vector<std::size_t> next;
    for (std::size_t p : fronts.back())
      for (std::size_t o : dominated[p])
        if (--dominators[o] == 0) next.push_back(o);
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  return fronts;
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    std::span<Individual> population) {
  std::vector<Objectives> obj;
  obj.reserve(population.size());
  for (const auto& ind : population) obj.push_back(ind.objectives);
  auto fronts = fast_non_dominated_sort(obj);
  for (std::size_t k = 0; k < fronts.size(); ++k)
    for (std::size_t i : fronts[k]) population[i].rank = static_cast<int>(k) + 1;
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> front) {
  const std::size_t k = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(k, 0.0);
  if (k <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  auto accumulate = [&](auto value) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return value(front[a]) < value(front[b]);
    });
    distance[idx.front()] = inf;
    distance[idx.back()] = inf;
    const double range = value(front[idx.back()]) - value(front[idx.front()]);
    if (range <= 0.0) return;
    for (std::size_t i = 1; i + 1 < k; ++i)
      distance[idx[i]] +=
          (value(front[idx[i + 1]]) - value(front[idx[i - 1]])) / range;
  };
  accumulate([](const Objectives& o) { return o.log_likelihood; });
  accumulate([](const Objectives& o) { return static_cast<double>(o.arcs); });
  return distance;
}

void assign_crowding(std::span<Individual> population,
                     const std::vector<std::size_t>& front) {
  std::vector<Objectives> obj;
  obj.reserve(front.size());
  for (std::size_t i : front) obj.push_back(population[i].objectives);
  const auto d = crowding_distance(obj);
  for (std::size_t j = 0; j < front.size(); ++j) population[front[j]].crowding = d[j];
}

CrowdedOrder crowded_compare(const Individual& a, const Individual& b) {
  if (!a.rank || !b.rank || !a.crowding || !b.crowding)
    throw std::logic_error("crowded_compare: rank or crowding not assigned");
  if (*a.rank != *b.rank) return *a.rank < *b.rank ? CrowdedOrder::ABetter
                                                   : CrowdedOrder::BBetter;
  if (*a.crowding != *b.crowding)
    return *a.crowding > *b.crowding ? CrowdedOrder::ABetter
                                     : CrowdedOrder::BBetter;
  return CrowdedOrder::Tie;
}

ParetoFront make_front(std::span<const Individual> population) {
  ParetoFront front;
  if (population.empty()) return front;
  std::vector<Objectives> obj;
  obj.reserve(population.size());
  for (const auto& ind : population) obj.push_back(ind.objectives);
  const auto fronts = fast_non_dominated_sort(obj);
  for (std::size_t i : fronts.front()) {
    const Individual& ind = population[i];
    const bool duplicate =
        std::any_of(front.members.begin(), front.members.end(),
                    [&](const Individual& o) { return o.dag == ind.dag; });
    if (!duplicate) front.members.push_back(ind);
  }
  std::sort(front.members.begin(), front.members.end(),
            [](const Individual& a, const Individual& b) {
              if (a.objectives.arcs != b.objectives.arcs)
                return a.objectives.arcs < b.objectives.arcs;
              if (a.objectives.log_likelihood != b.objectives.log_likelihood)
                return a.objectives.log_likelihood > b.objectives.log_likelihood;
              return a.dag.edges() < b.dag.edges();
            });
  std::vector<Objectives> fo;
  for (const auto& m : front.members) fo.push_back(m.objectives);
  const auto d = crowding_distance(fo);
  for (std::size_t j = 0; j < front.members.size(); ++j) {
    front.members[j].rank = 1;
    front.members[j].crowding = d[j];
  }
  return front;
}

Individual random_individual(int n, double density, Rng& rng) {
  Individual ind;
  ind.genome = Genome(n);
  for (auto& b : ind.genome.bits) b = bernoulli(rng, density) ? 1 : 0;
  ind.dag = repair_cycles(ind.genome, rng);
  return ind;
}

namespace {

std::size_t tournament(std::span<const Individual> pop, Rng& rng) {
  const std::size_t a = uniform_index(rng, 0, pop.size() - 1);
  const std::size_t b = uniform_index(rng, 0, pop.size() - 1);
  switch (crowded_compare(pop[a], pop[b])) {
    case CrowdedOrder::ABetter: return a;
    case CrowdedOrder::BBetter: return b;
    case CrowdedOrder::Tie: break;
  }
  return bernoulli(rng, 0.5) ? a : b;
}

void mutate(Genome& g, double p_mu, Rng& rng) {
  for (auto& b : g.bits)
    if (bernoulli(rng, p_mu)) b ^= 1;
}

void rank_and_crowd(std::span<Individual> population) {
  const auto fronts = fast_non_dominated_sort(population);
  for (const auto& f : fronts) assign_crowding(population, f);
}

GenerationStats stats_of(int generation, std::span<const Individual> pop) {
  GenerationStats s;
  s.generation = generation;
  std::vector<double> f1;
  f1.reserve(pop.size());
  s.best_f2 = std::numeric_limits<int>::max();
  for (const auto& ind : pop) {
    f1.push_back(ind.objectives.log_likelihood);
    s.best_f2 = std::min(s.best_f2, ind.objectives.arcs);
    if (ind.rank && *ind.rank == 1) ++s.front_size;
  }
  std::sort(f1.begin(), f1.end());
  s.best_f1 = f1.back();
  const std::size_t mid = f1.size() / 2;
  s.median_f1 = f1.size() % 2 ? f1[mid] : 0.5 * (f1[mid - 1] + f1[mid]);
  return s;
}

[[maybe_unused]] bool front_is_mutually_non_dominated(
    std::span<const Individual> pop) {
  for (const auto& a : pop)
    for (const auto& b : pop)
      if (a.rank == 1 && b.rank == 1 && dominates(a, b)) return false;
  return true;
}

}  // namespace

std::vector<Individual> make_offspring(std::span<const Individual> parents,
                                       const Nsga2Config& config,
                                       const FamilyScoreCache& cache, Rng& rng) {
  if (parents.empty()) throw std::invalid_argument("make_offspring: no parents");
  const int n = parents.front().genome.n;
  const std::size_t len = Genome::length_for(n);
  const double p_mu = config.mutation_rate(n);
  const auto q = static_cast<std::size_t>(config.population_size);

  std::vector<Individual> children;
  children.reserve(q);
  while (children.size() < q) {
    const Individual& a = parents[tournament(parents, rng)];
    const Individual& b = parents[tournament(parents, rng)];
    Genome c1 = a.genome;
    Genome c2 = b.genome;
    if (bernoulli(rng, config.p_chi) && len >= 2) {
      if (config.crossover == CrossoverKind::SinglePoint) {
        const std::size_t cut = uniform_index(rng, 1, len - 1);
        for (std::size_t i = cut; i < len; ++i) std::swap(c1.bits[i], c2.bits[i]);
      } else {
        for (std::size_t i = 0; i < len; ++i)
          if (bernoulli(rng, 0.5)) std::swap(c1.bits[i], c2.bits[i]);
      }
    }
    mutate(c1, p_mu, rng);
    mutate(c2, p_mu, rng);
    Individual k1, k2;
    k1.dag = repair_cycles(c1, rng);
    k2.dag = repair_cycles(c2, rng);
    k1.genome = std::move(c1);
    k2.genome = std::move(c2);
    children.push_back(std::move(k1));
    if (children.size() < q) children.push_back(std::move(k2));
  }
  evaluate_objectives(children, cache, config.exec);
  return children;
}

EvolveResult evolve(const Dataset& data, const Nsga2Config& config, Rng& rng) {
  FamilyScoreCache cache(data);
  return evolve(cache, config, rng);
}

EvolveResult evolve(const FamilyScoreCache& cache, const Nsga2Config& config,
                    Rng& rng) {
  config.validate();
  const int n = cache.data().variables();
  const auto q = static_cast<std::size_t>(config.population_size);

  std::vector<Individual> population;
  population.reserve(q);
  for (std::size_t i = 0; i < q; ++i)
    population.push_back(random_individual(n, config.init_density, rng));
  evaluate_objectives(population, cache, config.exec);
  rank_and_crowd(population);

  EvolveResult result;
  result.trace.push_back(stats_of(0, population));

  for (int gen = 1; gen <= config.generations; ++gen) {
    std::vector<Individual> merged = std::move(population);
    auto offspring = make_offspring(merged, config, cache, rng);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));

    const auto fronts = fast_non_dominated_sort(std::span<Individual>(merged));
    population.clear();
    for (const auto& f : fronts) {
      assign_crowding(merged, f);
      if (population.size() + f.size() <= q) {
        for (std::size_t i : f) population.push_back(merged[i]);
        if (population.size() == q) break;
        continue;
      }
      std::vector<std::size_t> order = f;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return *merged[a].crowding > *merged[b].crowding;
                       });
      for (std::size_t i : order) {
        if (population.size() == q) break;
        population.push_back(merged[i]);
      }
      break;
    }
    assert(front_is_mutually_non_dominated(population));
    result.trace.push_back(stats_of(gen, population));
  }

  result.front = make_front(population);
  result.population = std::move(population);
  return result;
}

}  // namespace bnmoo
