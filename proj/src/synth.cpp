#include "bnmoo/synth.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bnmoo {

void ScenarioConfig::validate() const {
  if (n < 1) throw std::invalid_argument("scenario: n must be >= 1");
  if (m < 1) throw std::invalid_argument("scenario: m must be >= 1");
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("scenario: density must lie in [0, 1]");
  if (!(noise >= 0.0 && noise <= 1.0))
    throw std::invalid_argument("scenario: noise must lie in [0, 1]");
}

Dag random_dag(int n, double density, Rng& rng) {
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("random_dag: density must lie in [0, 1]");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  EdgeList edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bernoulli(rng, density)) edges.push_back({order[i], order[j]});
  return Dag::from_edges(n, edges);
}

BayesianNetwork random_cpts(const Dag& dag, const std::vector<int>& arities,
                            Rng& rng, double concentration) {
  if (static_cast<int>(arities.size()) != dag.size())
    throw std::invalid_argument("random_cpts: arity count mismatch");
  if (!(concentration > 0.0))
    throw std::invalid_argument("random_cpts: concentration must be positive");
  std::gamma_distribution<double> gamma(concentration, 1.0);
  BayesianNetwork bn{dag, arities, {}};
  for (int i = 0; i < dag.size(); ++i) {
    Cpt cpt;
    cpt.node = i;
    cpt.arity = arities[i];
    cpt.parents = dag.parents(i);
    for (int p : cpt.parents) cpt.parent_arities.push_back(arities[p]);
    cpt.table.resize(cpt.rows() * cpt.arity);
    for (std::size_t row = 0; row < cpt.rows(); ++row) {
      double* x = cpt.table.data() + row * cpt.arity;
      double sum = 0.0;
      do {
        sum = 0.0;
        for (int k = 0; k < cpt.arity; ++k) sum += (x[k] = gamma(rng));
      } while (sum <= 0.0);
      for (int k = 0; k < cpt.arity; ++k) x[k] /= sum;
    }
    bn.cpts.push_back(std::move(cpt));
  }
  return bn;
}

Dataset forward_sample(const BayesianNetwork& bn, int samples, Rng& rng) {
  const int n = bn.dag.size();
  const std::vector<int> order = topological_order(bn.dag);
  DatasetBuilder builder(samples, n, bn.arities);
  std::vector<int> value(n, 0);
  std::vector<int> pv;
  for (int s = 0; s < samples; ++s) {
    for (int v : order) {
      const Cpt& cpt = bn.cpts[v];
      pv.clear();
      for (int p : cpt.parents) pv.push_back(value[p]);
      const std::size_t row = config_index(cpt.parent_arities, pv);
      const double u = uniform01(rng);
      double acc = 0.0;
      int k = 0;
      for (; k < cpt.arity - 1; ++k) {
        acc += cpt.prob(row, k);
        if (u < acc) break;
      }
      // Skip categories with zero mass when rounding left us past them.
      while (k > 0 && cpt.prob(row, k) == 0.0) --k;
      value[v] = k;
      builder.set(s, v, static_cast<std::uint8_t>(k));
    }
  }
  return std::move(builder).finish();
}

Dataset inject_noise(const Dataset& data, double epsilon, Rng& rng) {
  if (!data.all_binary())
    throw std::invalid_argument("inject_noise: all variables must be binary");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("inject_noise: epsilon must lie in [0, 1]");
  DatasetBuilder builder(data.samples(), data.variables(), data.arities());
  for (int s = 0; s < data.samples(); ++s)
    for (int v = 0; v < data.variables(); ++v) {
      const std::uint8_t x = data.at(s, v);
      builder.set(s, v, bernoulli(rng, epsilon) ? static_cast<std::uint8_t>(1 - x) : x);
    }
  return std::move(builder).finish();
}

}  // namespace bnmoo
