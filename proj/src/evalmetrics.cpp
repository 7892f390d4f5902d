#include "bnmoo/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bnmoo {

StructuralConfusion structural_confusion(const Dag& learned, const Dag& truth,
                                         EdgeMatching matching) {
  if (learned.size() != truth.size())
    throw std::invalid_argument("structural_confusion: graphs differ in size");
  const int n = truth.size();
  StructuralConfusion c;
  auto tally = [&c](bool in_learned, bool in_truth) {
    if (in_learned && in_truth) ++c.tp;
    else if (in_learned) ++c.fp;
    else if (in_truth) ++c.fn;
    else ++c.tn;
  };
  if (matching == EdgeMatching::Directed) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) tally(learned.has_edge(i, j), truth.has_edge(i, j));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        tally(learned.has_edge(i, j) || learned.has_edge(j, i),
              truth.has_edge(i, j) || truth.has_edge(j, i));
  }
  return c;
}

StructuralMetrics metrics(const StructuralConfusion& c) {
  auto ratio = [](std::uint64_t num, std::uint64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  return {ratio(c.tp, c.tp + c.fp), ratio(c.tp, c.tp + c.fn),
          ratio(c.tn, c.tn + c.fp)};
}

FrontSummary front_summary(const ParetoFront& front, const Dag* truth) {
  if (front.empty()) throw std::invalid_argument("front_summary: empty front");
  const std::size_t k = front.size();
  std::vector<std::size_t> by_f1(k);
  std::iota(by_f1.begin(), by_f1.end(), 0);
  std::stable_sort(by_f1.begin(), by_f1.end(), [&](std::size_t a, std::size_t b) {
    return front.members[a].objectives.log_likelihood <
           front.members[b].objectives.log_likelihood;
  });

  FrontSummary s;
  for (double q : kSummaryQuantiles) {
    const auto pos = static_cast<std::size_t>(std::lround(q * static_cast<double>(k - 1)));
    const std::size_t idx = by_f1[pos];
    s.indices.push_back(idx);
    s.representatives.push_back(front.members[idx]);
    if (truth) s.metrics.push_back(metrics(structural_confusion(front.members[idx].dag, *truth)));
  }
  return s;
}

bool front_dominates_point(const ParetoFront& front, const Objectives& baseline) {
  return std::any_of(front.members.begin(), front.members.end(),
                     [&](const Individual& m) { return dominates(m.objectives, baseline); });
}

Aggregate aggregate(std::span<const std::optional<double>> values) {
  Aggregate a;
  double sum = 0.0;
  for (const auto& v : values) {
    if (!v) {
      ++a.excluded;
      continue;
    }
    ++a.count;
    sum += *v;
  }
  if (a.count == 0) return a;
  a.mean = sum / static_cast<double>(a.count);
  if (a.count < 2) return a;
  double ss = 0.0;
  for (const auto& v : values)
    if (v) ss += (*v - a.mean) * (*v - a.mean);
  a.stddev = std::sqrt(ss / static_cast<double>(a.count - 1));
  return a;
}

Aggregate aggregate(std::span<const double> values) {
  std::vector<std::optional<double>> opt(values.begin(), values.end());
  return aggregate(std::span<const std::optional<double>>(opt));
}

}  // namespace bnmoo
