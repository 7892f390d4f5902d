#include "bnmoo/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bnmoo {

ScoreKind parse_score_kind(std::string_view s) {
  if (s == "aic" || s == "AIC") return ScoreKind::AIC;
  if (s == "bic" || s == "BIC") return ScoreKind::BIC;
  if (s == "ll") return ScoreKind::LogLikelihood;
  throw std::invalid_argument("unknown score kind '" + std::string(s) + "'");
}

Complexity parse_complexity(std::string_view s) {
  if (s == "parameters") return Complexity::Parameters;
  if (s == "edges") return Complexity::Edges;
  throw std::invalid_argument("unknown complexity '" + std::string(s) + "'");
}

std::string_view to_string(ScoreKind k) {
  switch (k) {
    case ScoreKind::AIC: return "aic";
    case ScoreKind::BIC: return "bic";
    case ScoreKind::LogLikelihood: break;
  }
  return "ll";
}

std::string_view to_string(Complexity c) {
  return c == Complexity::Parameters ? "parameters" : "edges";
}

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 20;

void check_dims(const Dag& dag, const Dataset& data) {
  if (dag.size() != data.variables())
    throw std::invalid_argument("dimension mismatch: graph has " +
                                std::to_string(dag.size()) +
                                " nodes, data has " +
                                std::to_string(data.variables()) + " variables");
}

}  // namespace

FamilyCounts count_family(const Dataset& data, int node,
                          const std::vector<int>& parents) {
  const int m = data.samples();
  const int r = data.arity(node);

  std::uint64_t space = 1;
  for (int p : parents) {
    const auto a = static_cast<std::uint64_t>(data.arity(p));
    if (space > std::numeric_limits<std::uint64_t>::max() / (a * 256))
      throw std::overflow_error("count_family: configuration space too large");
    space *= a;
  }

  std::vector<std::uint64_t> cfg(m, 0);
  for (int p : parents) {
    const auto a = static_cast<std::uint64_t>(data.arity(p));
    const auto col = data.column(p);
    for (int s = 0; s < m; ++s) cfg[s] = cfg[s] * a + col[s];
  }
  const auto child = data.column(node);

  FamilyCounts out;
  out.arity = r;
  if (space * r <= kDenseLimit && space <= 4 * static_cast<std::uint64_t>(m) + 64) {
    std::vector<std::uint32_t> dense(space * r, 0);
    for (int s = 0; s < m; ++s) ++dense[cfg[s] * r + child[s]];
    for (std::uint64_t c = 0; c < space; ++c) {
      const auto* row = dense.data() + c * r;
      bool seen = false;
      for (int k = 0; k < r; ++k) seen |= row[k] != 0;
      if (!seen) continue;
      out.configs.push_back(c);
      out.counts.insert(out.counts.end(), row, row + r);
    }
    return out;
  }

  std::vector<std::uint64_t> keys(m);
  for (int s = 0; s < m; ++s) keys[s] = cfg[s] * r + child[s];
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 0; i < keys.size();) {
    const std::uint64_t c = keys[i] / r;
    out.configs.push_back(c);
    const std::size_t base = out.counts.size();
    out.counts.resize(base + r, 0);
    while (i < keys.size() && keys[i] / r == c) {
      ++out.counts[base + keys[i] % r];
      ++i;
    }
  }
  return out;
}

double family_log_likelihood(const FamilyCounts& counts, double pseudo_count) {
  const int r = counts.arity;
  double ll = 0.0;
  for (std::size_t row = 0; row < counts.configs.size(); ++row) {
    const auto* n = counts.counts.data() + row * r;
    double total = 0.0;
    for (int k = 0; k < r; ++k) total += n[k];
    const double denom = total + pseudo_count * r;
    for (int k = 0; k < r; ++k)
      if (n[k] > 0) ll += n[k] * std::log((n[k] + pseudo_count) / denom);
  }
  return ll;
}

double family_log_likelihood(const Dataset& data, int node,
                             const std::vector<int>& parents,
                             double pseudo_count) {
  return family_log_likelihood(count_family(data, node, parents), pseudo_count);
}

BayesianNetwork fit_ml_parameters(const Dag& dag, const Dataset& data,
                                  double pseudo_count) {
  check_dims(dag, data);
  BayesianNetwork bn{dag, data.arities(), {}};
  for (int i = 0; i < dag.size(); ++i) {
    Cpt cpt;
    cpt.node = i;
    cpt.arity = data.arity(i);
    cpt.parents = dag.parents(i);
    for (int p : cpt.parents) cpt.parent_arities.push_back(data.arity(p));
    cpt.table.assign(cpt.rows() * cpt.arity, 1.0 / cpt.arity);

    const FamilyCounts fc = count_family(data, i, cpt.parents);
    for (std::size_t row = 0; row < fc.configs.size(); ++row) {
      const auto* n = fc.counts.data() + row * cpt.arity;
      double total = 0.0;
      for (int k = 0; k < cpt.arity; ++k) total += n[k];
      const double denom = total + pseudo_count * cpt.arity;
      for (int k = 0; k < cpt.arity; ++k)
        cpt.table[fc.configs[row] * cpt.arity + k] = (n[k] + pseudo_count) / denom;
    }
    bn.cpts.push_back(std::move(cpt));
  }
  return bn;
}

double log_likelihood(const Dag& dag, const Dataset& data, double pseudo_count) {
  check_dims(dag, data);
  double ll = 0.0;
  for (int i = 0; i < dag.size(); ++i)
    ll += family_log_likelihood(data, i, dag.parents(i), pseudo_count);
  return ll;
}

double penalty(ScoreKind kind, double complexity, int samples) {
  if (kind == ScoreKind::AIC) return complexity;
  if (kind == ScoreKind::LogLikelihood) return 0.0;
  return 0.5 * complexity * std::log(static_cast<double>(samples));
}

double family_complexity(int node, const std::vector<int>& parents,
                         const std::vector<int>& arities, Complexity c) {
  if (c == Complexity::Edges) return static_cast<double>(parents.size());
  return static_cast<double>(family_parameter_count(node, parents, arities));
}

double complexity_of(const Dag& dag, const std::vector<int>& arities,
                     Complexity c) {
  if (c == Complexity::Edges) return static_cast<double>(dag.edge_count());
  return static_cast<double>(parameter_count(dag, arities));
}

double regularized_score(const Dag& dag, const Dataset& data, ScoreKind kind,
                         Complexity complexity) {
  check_dims(dag, data);
  return log_likelihood(dag, data) -
         penalty(kind, complexity_of(dag, data.arities(), complexity),
                 data.samples());
}

std::size_t FamilyScoreCache::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(k.node);
  for (int p : k.parents) {
    h ^= static_cast<std::uint64_t>(p) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

FamilyScoreCache::FamilyScoreCache(const Dataset& data, double pseudo_count)
    : data_(&data), pseudo_count_(pseudo_count) {}

double FamilyScoreCache::family(int node, const std::vector<int>& parents) const {
  Key key{node, parents};
  {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }
  const double value = family_log_likelihood(*data_, node, parents, pseudo_count_);
  std::unique_lock lock(mutex_);
  table_.emplace(std::move(key), value);
  return value;
}

double FamilyScoreCache::log_likelihood(const Dag& dag) const {
  check_dims(dag, *data_);
  double ll = 0.0;
  for (int i = 0; i < dag.size(); ++i) ll += family(i, dag.parents(i));
  return ll;
}

std::size_t FamilyScoreCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

std::uint64_t FamilyScoreCache::hits() const {
  return hits_.load(std::memory_order_relaxed);
}

}  // namespace bnmoo
