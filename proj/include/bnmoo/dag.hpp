#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bnmoo {

struct Edge {
  int parent = 0;
  int child = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

class CycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True iff the directed graph on n nodes admits a topological order.
/// Edges must be in range; duplicates are tolerated.
bool is_acyclic(int n, std::span<const Edge> edges);

/// Edges of one directed cycle, or empty if the graph is acyclic.
/// The cycle reported is the first one closed by a depth-first search that
/// visits roots and successors in ascending index order.
EdgeList find_cycle(int n, std::span<const Edge> edges);

/// Directed acyclic graph over nodes 0..n-1. Every mutator preserves
/// acyclicity; anything that would break it is rejected.
class Dag {
 public:
  Dag() = default;
  explicit Dag(int n);

  /// Throws std::invalid_argument on bad indices or self-loops and
  /// CycleError if the edge set is cyclic.
  static Dag from_edges(int n, std::span<const Edge> edges);

  int size() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  bool has_edge(int parent, int child) const {
    return adj_[static_cast<std::size_t>(parent) * n_ + child] != 0;
  }

  /// Parents of `child` in ascending index order.
  const std::vector<int>& parents(int child) const { return parents_[child]; }
  std::vector<int> children(int parent) const;

  /// Edges sorted by (parent, child).
  EdgeList edges() const;

  /// True if some directed path leads from `from` to `to` (from == to counts).
  bool reachable(int from, int to) const;

  /// Adds parent->child unless it already exists or would close a cycle.
  bool try_add_edge(int parent, int child);
  bool remove_edge(int parent, int child);
  /// Replaces parent->child by child->parent if the result is acyclic.
  bool try_reverse_edge(int parent, int child);

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void check_node(int v) const;
  void insert_unchecked(int parent, int child);
  void erase_unchecked(int parent, int child);

  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint8_t> adj_;  // row-major n*n, adj_[p*n+c]
  std::vector<std::vector<int>> parents_;
};

/// Kahn's algorithm with ascending-index tie-break among ready nodes.
std::vector<int> topological_order(const Dag& dag);

}  // namespace bnmoo
