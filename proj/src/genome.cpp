#include "bnmoo/genome.hpp"

#include <stdexcept>
#include <string>

namespace bnmoo {

Genome::Genome(int nodes) : n(nodes), bits(length_for(nodes), 0) {
  if (nodes < 1) throw std::invalid_argument("Genome: node count must be >= 1");
}

Genome::Genome(int nodes, std::vector<std::uint8_t> b)
    : n(nodes), bits(std::move(b)) {
  if (nodes < 1) throw std::invalid_argument("Genome: node count must be >= 1");
  if (bits.size() != length_for(nodes))
    throw std::invalid_argument("Genome: expected " +
                                std::to_string(length_for(nodes)) +
                                " bits for n=" + std::to_string(nodes) +
                                ", got " + std::to_string(bits.size()));
}

std::size_t genome_position(int n, int parent, int child) {
  const int col = child < parent ? child : child - 1;
  return static_cast<std::size_t>(parent) * (n - 1) + col;
}

Edge genome_cell(int n, std::size_t position) {
  const int row = static_cast<int>(position / (n - 1));
  const int c = static_cast<int>(position % (n - 1));
  return {row, c < row ? c : c + 1};
}

Genome encode(const Dag& dag) {
  Genome g(dag.size());
  for (const auto& e : dag.edges()) g.bits[genome_position(g.n, e.parent, e.child)] = 1;
  return g;
}

EdgeList decode_unchecked(const Genome& genome) {
  if (genome.bits.size() != Genome::length_for(genome.n))
    throw std::invalid_argument("decode_unchecked: genome length mismatch");
  EdgeList edges;
  for (std::size_t p = 0; p < genome.bits.size(); ++p)
    if (genome.bits[p]) edges.push_back(genome_cell(genome.n, p));
  return edges;
}

Dag repair_cycles(Genome& genome, Rng& rng) {
  EdgeList edges = decode_unchecked(genome);
  for (EdgeList cycle = find_cycle(genome.n, edges); !cycle.empty();
       cycle = find_cycle(genome.n, edges)) {
    const Edge drop = cycle[uniform_index(rng, 0, cycle.size() - 1)];
    std::erase(edges, drop);
    genome.bits[genome_position(genome.n, drop.parent, drop.child)] = 0;
  }
  return Dag::from_edges(genome.n, edges);
}

}  // namespace bnmoo
