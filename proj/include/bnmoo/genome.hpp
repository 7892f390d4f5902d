#pragma once

#include <cstdint>
#include <vector>

#include "bnmoo/dag.hpp"
#include "bnmoo/rng.hpp"

namespace bnmoo {

/// Linearized adjacency matrix with the diagonal skipped: length n(n-1),
/// position p is row p / (n-1) and column p % (n-1), shifted by one past
/// the diagonal. May encode a cyclic graph until repaired.
struct Genome {
  int n = 0;
  std::vector<std::uint8_t> bits;

  Genome() = default;
  explicit Genome(int nodes);
  Genome(int nodes, std::vector<std::uint8_t> b);

  static std::size_t length_for(int nodes) {
    return nodes <= 1 ? 0 : static_cast<std::size_t>(nodes) * (nodes - 1);
  }
  std::size_t size() const { return bits.size(); }

  friend bool operator==(const Genome&, const Genome&) = default;
};

std::size_t genome_position(int n, int parent, int child);
Edge genome_cell(int n, std::size_t position);

Genome encode(const Dag& dag);
/// Set positions as edges, sorted by (parent, child). No acyclicity check.
EdgeList decode_unchecked(const Genome& genome);

/// Removes one uniformly chosen edge of a detected cycle until the graph is
/// acyclic. Acyclic inputs come back unchanged and consume no randomness.
/// `genome` is updated in place to match the returned graph.
Dag repair_cycles(Genome& genome, Rng& rng);

}  // namespace bnmoo
