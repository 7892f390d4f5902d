#pragma once

#include <cstdint>
#include <vector>

#include "bnmoo/dag.hpp"
#include "bnmoo/dataset.hpp"
#include "bnmoo/network.hpp"
#include "bnmoo/rng.hpp"

namespace bnmoo {

struct ScenarioConfig {
  int n = 15;
  double density = 0.2;
  int m = 50;
  double noise = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Random topological order, then each of the n(n-1)/2 consistent pairs is
/// an edge with probability `density`.
Dag random_dag(int n, double density, Rng& rng);

/// Each CPT row drawn from a symmetric Dirichlet. concentration = 1 is the
/// flat Dirichlet; values below 1 push rows toward the simplex corners.
BayesianNetwork random_cpts(const Dag& dag, const std::vector<int>& arities,
                            Rng& rng, double concentration = 1.0);

/// Ancestral sampling in topological order.
Dataset forward_sample(const BayesianNetwork& bn, int samples, Rng& rng);

/// Flips each binary cell independently with probability epsilon.
/// Throws std::invalid_argument on non-binary variables.
Dataset inject_noise(const Dataset& data, double epsilon, Rng& rng);

}  // namespace bnmoo
