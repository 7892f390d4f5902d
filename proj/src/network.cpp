#include "bnmoo/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bnmoo {

std::size_t Cpt::rows() const {
  std::size_t r = 1;
  for (int a : parent_arities) r *= static_cast<std::size_t>(a);
  return r;
}

void Cpt::validate(double tol) const {
  const std::string who = "Cpt(V" + std::to_string(node + 1) + "): ";
  if (arity < 2) throw std::invalid_argument(who + "arity below 2");
  if (parents.size() != parent_arities.size())
    throw std::invalid_argument(who + "parent arity list size mismatch");
  if (table.size() != rows() * static_cast<std::size_t>(arity))
    throw std::invalid_argument(who + "table has wrong number of entries");
  for (std::size_t r = 0; r < rows(); ++r) {
    double sum = 0.0;
    for (int k = 0; k < arity; ++k) {
      const double p = prob(r, k);
      if (!(p >= 0.0)) throw std::invalid_argument(who + "negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument(who + "row " + std::to_string(r) +
                                  " does not sum to 1");
  }
}

std::size_t config_index(const std::vector<int>& parent_arities,
                         const std::vector<int>& values) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < parent_arities.size(); ++j)
    idx = idx * parent_arities[j] + values[j];
  return idx;
}

void BayesianNetwork::validate() const {
  const int n = dag.size();
  if (static_cast<int>(arities.size()) != n || static_cast<int>(cpts.size()) != n)
    throw std::invalid_argument("BayesianNetwork: size mismatch");
  for (int i = 0; i < n; ++i) {
    const Cpt& c = cpts[i];
    if (c.node != i || c.parents != dag.parents(i) || c.arity != arities[i])
      throw std::invalid_argument("BayesianNetwork: CPT of V" +
                                  std::to_string(i + 1) +
                                  " inconsistent with the DAG");
    for (std::size_t j = 0; j < c.parents.size(); ++j)
      if (c.parent_arities[j] != arities[c.parents[j]])
        throw std::invalid_argument("BayesianNetwork: parent arity mismatch");
    c.validate();
  }
}

std::uint64_t family_parameter_count(int node, const std::vector<int>& parents,
                                     const std::vector<int>& arities) {
  std::uint64_t rows = 1;
  for (int p : parents) rows *= static_cast<std::uint64_t>(arities[p]);
  return static_cast<std::uint64_t>(arities[node] - 1) * rows;
}

std::uint64_t parameter_count(const Dag& dag, const std::vector<int>& arities) {
  if (static_cast<int>(arities.size()) != dag.size())
    throw std::invalid_argument("parameter_count: arity count mismatch");
  std::uint64_t total = 0;
  for (int i = 0; i < dag.size(); ++i)
    total += family_parameter_count(i, dag.parents(i), arities);
  return total;
}

}  // namespace bnmoo
