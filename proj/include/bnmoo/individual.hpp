#pragma once

#include <optional>

#include "bnmoo/dag.hpp"
#include "bnmoo/genome.hpp"

namespace bnmoo {

/// f1 = log-likelihood (maximized), f2 = arc count (minimized).
struct Objectives {
  double log_likelihood = 0.0;
  int arcs = 0;

  friend bool operator==(const Objectives&, const Objectives&) = default;
};

struct Individual {
  Genome genome;
  Dag dag;  // repaired graph; genome is kept in sync with it
  Objectives objectives;
  std::optional<int> rank;  // 1 = non-dominated
  std::optional<double> crowding;
};

/// a dominates b: no worse in both objectives and strictly better in one.
bool dominates(const Objectives& a, const Objectives& b);
inline bool dominates(const Individual& a, const Individual& b) {
  return dominates(a.objectives, b.objectives);
}

}  // namespace bnmoo
