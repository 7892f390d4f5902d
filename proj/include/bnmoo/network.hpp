#pragma once

#include <cstdint>
#include <vector>

#include "bnmoo/dag.hpp"

namespace bnmoo {

/// Conditional probability table of one node. Rows are indexed by the
/// joint parent configuration in mixed radix, first parent most significant.
struct Cpt {
  int node = 0;
  int arity = 2;
  std::vector<int> parents;
  std::vector<int> parent_arities;
  std::vector<double> table;  // rows() x arity, row-major

  std::size_t rows() const;
  double prob(std::size_t row, int category) const {
    return table[row * static_cast<std::size_t>(arity) + category];
  }
  /// Throws std::invalid_argument on shape or normalization problems.
  void validate(double tol = 1e-9) const;
};

/// Row index of a parent configuration given per-parent values.
std::size_t config_index(const std::vector<int>& parent_arities,
                         const std::vector<int>& values);

struct BayesianNetwork {
  Dag dag;
  std::vector<int> arities;
  std::vector<Cpt> cpts;

  /// Checks CPT parent sets against the DAG and each table's invariants.
  void validate() const;
};

/// Free parameters of the factorized model:
/// sum_i (r_i - 1) * prod_{j in parents(i)} r_j.
std::uint64_t parameter_count(const Dag& dag, const std::vector<int>& arities);
std::uint64_t family_parameter_count(int node, const std::vector<int>& parents,
                                     const std::vector<int>& arities);

}  // namespace bnmoo
