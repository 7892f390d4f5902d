#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bnmoo/dag.hpp"
#include "bnmoo/dataset.hpp"
#include "bnmoo/network.hpp"

namespace bnmoo {

/// LogLikelihood carries no penalty; it exists for unregularized search.
enum class ScoreKind { AIC, BIC, LogLikelihood };
enum class Complexity { Parameters, Edges };

ScoreKind parse_score_kind(std::string_view s);
Complexity parse_complexity(std::string_view s);
std::string_view to_string(ScoreKind k);
std::string_view to_string(Complexity c);

/// Sufficient statistics N_{cfg,k} of one family. Dense layout when the
/// configuration space is small, otherwise only observed configurations.
struct FamilyCounts {
  int arity = 2;
  std::vector<std::uint64_t> configs;  // configuration index per row
  std::vector<std::uint32_t> counts;   // configs.size() x arity
};

FamilyCounts count_family(const Dataset& data, int node,
                          const std::vector<int>& parents);

/// sum_{cfg,k} N ln(N / N_cfg), with 0 ln 0 = 0. With pseudo_count a > 0,
/// sum N ln((N + a) / (N_cfg + a r)).
double family_log_likelihood(const FamilyCounts& counts,
                             double pseudo_count = 0.0);
double family_log_likelihood(const Dataset& data, int node,
                             const std::vector<int>& parents,
                             double pseudo_count = 0.0);

/// ML CPTs; unobserved configurations get uniform rows.
BayesianNetwork fit_ml_parameters(const Dag& dag, const Dataset& data,
                                  double pseudo_count = 0.0);

/// LL(D|G) with ML parameters, natural log.
double log_likelihood(const Dag& dag, const Dataset& data,
                      double pseudo_count = 0.0);

/// R(G): |G| for AIC, |G|/2 ln m for BIC, 0 for LogLikelihood.
double penalty(ScoreKind kind, double complexity, int samples);
double complexity_of(const Dag& dag, const std::vector<int>& arities,
                     Complexity c);
double family_complexity(int node, const std::vector<int>& parents,
                         const std::vector<int>& arities, Complexity c);

/// LL(D|G) - R(G).
double regularized_score(const Dag& dag, const Dataset& data, ScoreKind kind,
                         Complexity complexity = Complexity::Parameters);

/// Family log-likelihood memo keyed by (node, parent set). Safe to share
/// between threads; concurrent misses on one key compute the same value.
class FamilyScoreCache {
 public:
  explicit FamilyScoreCache(const Dataset& data, double pseudo_count = 0.0);

  const Dataset& data() const { return *data_; }
  double family(int node, const std::vector<int>& parents) const;
  double log_likelihood(const Dag& dag) const;
  std::size_t size() const;
  std::uint64_t hits() const;

 private:
  struct Key {
    int node;
    std::vector<int> parents;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  const Dataset* data_;
  double pseudo_count_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Key, double, KeyHash> table_;
  mutable std::atomic<std::uint64_t> hits_{0};
};

}  // namespace bnmoo
