#pragma once

// Brute-force reference implementations used only by tests. They share no
// code paths with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "bnmoo/dag.hpp"
#include "bnmoo/dataset.hpp"
#include "bnmoo/individual.hpp"
#include "bnmoo/network.hpp"

namespace bnmoo::oracle {

/// Recursive three-color DFS.
inline bool dfs_acyclic(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> succ(n);
  for (const auto& e : edges) succ[e.parent].push_back(e.child);
  std::vector<int> color(n, 0);
  std::function<bool(int)> visit = [&](int v) {
    color[v] = 1;
    for (int w : succ[v]) {
      if (color[w] == 1) return false;
      if (color[w] == 0 && !visit(w)) return false;
    }
    color[v] = 2;
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (color[v] == 0 && !visit(v)) return false;
  return true;
}

/// All ordered pairs (i, j), i != j, in row-major order.
inline std::vector<Edge> ordered_pairs(int n) {
  std::vector<Edge> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

/// Every DAG on n labeled nodes as an edge list (n <= 5).
inline std::vector<std::vector<Edge>> all_dags(int n) {
  const auto pairs = ordered_pairs(n);
  std::vector<std::vector<Edge>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    bool two_cycle = false;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) edges.push_back(pairs[b]);
    for (const auto& e : edges)
      for (const auto& f : edges)
        two_cycle |= e.parent == f.child && e.child == f.parent;
    if (!two_cycle && dfs_acyclic(n, edges)) out.push_back(std::move(edges));
  }
  return out;
}

/// LL via naive map counting and a per-sample sum of ln theta lookups.
inline double per_sample_log_likelihood(int n, const std::vector<Edge>& edges,
                                        const Dataset& data) {
  std::vector<std::vector<int>> parents(n);
  for (const auto& e : edges) parents[e.child].push_back(e.parent);
  double ll = 0.0;
  for (int v = 0; v < n; ++v) {
    std::map<std::vector<int>, std::map<int, int>> counts;
    for (int s = 0; s < data.samples(); ++s) {
      std::vector<int> cfg;
      for (int p : parents[v]) cfg.push_back(data.at(s, p));
      ++counts[cfg][data.at(s, v)];
    }
    for (int s = 0; s < data.samples(); ++s) {
      std::vector<int> cfg;
      for (int p : parents[v]) cfg.push_back(data.at(s, p));
      const auto& row = counts[cfg];
      int total = 0;
      for (const auto& [k, c] : row) total += c;
      ll += std::log(static_cast<double>(row.at(data.at(s, v))) / total);
    }
  }
  return ll;
}

inline bool dominates_max_min(const Objectives& a, const Objectives& b) {
  const bool no_worse = a.log_likelihood >= b.log_likelihood && a.arcs <= b.arcs;
  const bool better = a.log_likelihood > b.log_likelihood || a.arcs < b.arcs;
  return no_worse && better;
}

/// Repeatedly scan the remaining set for members nobody remaining dominates.
inline std::vector<std::vector<std::size_t>> peel_off_fronts(
    const std::vector<Objectives>& pop) {
  std::vector<std::size_t> remaining(pop.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::vector<std::size_t>> fronts;
  while (!remaining.empty()) {
    std::vector<std::size_t> front, rest;
    for (std::size_t i : remaining) {
      bool dominated = false;
      for (std::size_t j : remaining)
        dominated |= dominates_max_min(pop[j], pop[i]);
      (dominated ? rest : front).push_back(i);
    }
    fronts.push_back(front);
    remaining = rest;
  }
  return fronts;
}

/// Exact joint over all assignments of a small network.
inline std::map<std::vector<int>, double> exact_joint(const BayesianNetwork& bn) {
  const int n = bn.dag.size();
  std::map<std::vector<int>, double> joint;
  std::vector<int> x(n, 0);
  while (true) {
    double p = 1.0;
    for (int v = 0; v < n; ++v) {
      const Cpt& c = bn.cpts[v];
      std::size_t row = 0;
      for (std::size_t j = 0; j < c.parents.size(); ++j)
        row = row * c.parent_arities[j] + x[c.parents[j]];
      p *= c.table[row * c.arity + x[v]];
    }
    joint[x] = p;
    int v = n - 1;
    while (v >= 0 && ++x[v] == bn.arities[v]) x[v--] = 0;
    if (v < 0) break;
  }
  return joint;
}

inline double total_variation(const std::map<std::vector<int>, double>& exact,
                              const Dataset& data) {
  std::map<std::vector<int>, double> emp;
  for (int s = 0; s < data.samples(); ++s) {
    std::vector<int> x;
    for (int v = 0; v < data.variables(); ++v) x.push_back(data.at(s, v));
    emp[x] += 1.0 / data.samples();
  }
  double tv = 0.0;
  for (const auto& [x, p] : exact) {
    auto it = emp.find(x);
    tv += std::abs(p - (it == emp.end() ? 0.0 : it->second));
  }
  return 0.5 * tv;
}

/// Same skeleton and same v-structures.
inline bool markov_equivalent(const Dag& a, const Dag& b) {
  const int n = a.size();
  auto adjacent = [](const Dag& g, int i, int j) {
    return g.has_edge(i, j) || g.has_edge(j, i);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacent(a, i, j) != adjacent(b, i, j)) return false;
  auto vstructs = [&](const Dag& g) {
    std::set<std::tuple<int, int, int>> out;
    for (int c = 0; c < n; ++c)
      for (int p : g.parents(c))
        for (int q : g.parents(c))
          if (p < q && !adjacent(g, p, q)) out.insert({p, c, q});
    return out;
  };
  return vstructs(a) == vstructs(b);
}

}  // namespace bnmoo::oracle
