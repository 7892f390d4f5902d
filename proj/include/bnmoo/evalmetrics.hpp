#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bnmoo/dag.hpp"
#include "bnmoo/individual.hpp"
#include "bnmoo/nsga2.hpp"

namespace bnmoo {

struct StructuralConfusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  friend bool operator==(const StructuralConfusion&,
                         const StructuralConfusion&) = default;
};

enum class EdgeMatching { Directed, Skeleton };

/// Directed: counts over the n(n-1) ordered pairs, so a reversed edge is one
/// fp plus one fn. Skeleton: counts over the n(n-1)/2 unordered pairs.
StructuralConfusion structural_confusion(
    const Dag& learned, const Dag& truth,
    EdgeMatching matching = EdgeMatching::Directed);

/// Each ratio is nullopt when its denominator is zero.
struct StructuralMetrics {
  std::optional<double> precision;
  std::optional<double> recall;  // == sensitivity
  std::optional<double> specificity;
};

StructuralMetrics metrics(const StructuralConfusion& c);

inline constexpr std::array<double, 5> kSummaryQuantiles{0.0, 0.25, 0.5, 0.75,
                                                          1.0};

struct FrontSummary {
  std::vector<std::size_t> indices;  // into the front, f1-ascending order
  std::vector<Individual> representatives;
  std::vector<StructuralMetrics> metrics;  // empty without ground truth
};

/// Members at round(q (k-1)) of the f1-ascending order, q in
/// {0, .25, .5, .75, 1}. Throws std::invalid_argument on an empty front.
FrontSummary front_summary(const ParetoFront& front,
                           const Dag* truth = nullptr);

bool front_dominates_point(const ParetoFront& front,
                           const Objectives& baseline);

/// Running mean/stddev over defined values; undefined ones are counted.
struct Aggregate {
  std::size_t count = 0;
  std::size_t excluded = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 when count < 2
};

Aggregate aggregate(std::span<const std::optional<double>> values);
Aggregate aggregate(std::span<const double> values);

}  // namespace bnmoo
