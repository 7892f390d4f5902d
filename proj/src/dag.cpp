#include "bnmoo/dag.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace bnmoo {

namespace {

std::vector<std::vector<int>> successors(int n, std::span<const Edge> edges) {
  std::vector<std::vector<int>> out(n);
  for (const auto& e : edges) out[e.parent].push_back(e.child);
  for (auto& s : out) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return out;
}

}  // namespace

bool is_acyclic(int n, std::span<const Edge> edges) {
  const auto succ = successors(n, edges);
  std::vector<int> indegree(n, 0);
  for (const auto& s : succ)
    for (int c : s) ++indegree[c];
  std::vector<int> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  int visited = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++visited;
    for (int c : succ[v])
      if (--indegree[c] == 0) ready.push_back(c);
  }
  return visited == n;
}

EdgeList find_cycle(int n, std::span<const Edge> edges) {
  const auto succ = successors(n, edges);
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<int> via(n, -1);

  // Iterative DFS; frame = (node, next successor slot).
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    color[root] = kGrey;
    while (!stack.empty()) {
      auto& [v, slot] = stack.back();
      if (slot == succ[v].size()) {
        color[v] = kBlack;
        stack.pop_back();
        continue;
      }
      int w = succ[v][slot++];
      if (color[w] == kGrey) {
        EdgeList cycle{{v, w}};
        for (int u = v; u != w; u = via[u]) cycle.push_back({via[u], u});
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (color[w] == kWhite) {
        color[w] = kGrey;
        via[w] = v;
        stack.emplace_back(w, 0);
      }
    }
  }
  return {};
}

Dag::Dag(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("Dag: negative node count");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
  parents_.resize(n);
}

Dag Dag::from_edges(int n, std::span<const Edge> edges) {
  Dag dag(n);
  for (const auto& e : edges) {
    dag.check_node(e.parent);
    dag.check_node(e.child);
    if (e.parent == e.child)
      throw std::invalid_argument("Dag: self-loop on node " +
                                  std::to_string(e.parent));
  }
  if (!is_acyclic(n, edges)) throw CycleError("Dag: edge set contains a cycle");
  for (const auto& e : edges)
    if (!dag.has_edge(e.parent, e.child)) dag.insert_unchecked(e.parent, e.child);
  return dag;
}

void Dag::check_node(int v) const {
  if (v < 0 || v >= n_)
    throw std::invalid_argument("Dag: node index " + std::to_string(v) +
                                " out of range [0, " + std::to_string(n_) + ")");
}

void Dag::insert_unchecked(int parent, int child) {
  adj_[static_cast<std::size_t>(parent) * n_ + child] = 1;
  auto& p = parents_[child];
  p.insert(std::lower_bound(p.begin(), p.end(), parent), parent);
  ++edge_count_;
}

void Dag::erase_unchecked(int parent, int child) {
  adj_[static_cast<std::size_t>(parent) * n_ + child] = 0;
  auto& p = parents_[child];
  p.erase(std::lower_bound(p.begin(), p.end(), parent));
  --edge_count_;
}

std::vector<int> Dag::children(int parent) const {
  std::vector<int> out;
  for (int c = 0; c < n_; ++c)
    if (has_edge(parent, c)) out.push_back(c);
  return out;
}

EdgeList Dag::edges() const {
  EdgeList out;
  out.reserve(edge_count_);
  for (int p = 0; p < n_; ++p)
    for (int c = 0; c < n_; ++c)
      if (has_edge(p, c)) out.push_back({p, c});
  return out;
}

bool Dag::reachable(int from, int to) const {
  if (from == to) return true;
  std::vector<std::uint8_t> seen(n_, 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const std::uint8_t* row = adj_.data() + static_cast<std::size_t>(v) * n_;
    for (int c = 0; c < n_; ++c) {
      if (!row[c] || seen[c]) continue;
      if (c == to) return true;
      seen[c] = 1;
      stack.push_back(c);
    }
  }
  return false;
}

bool Dag::try_add_edge(int parent, int child) {
  check_node(parent);
  check_node(child);
  if (parent == child || has_edge(parent, child)) return false;
  if (reachable(child, parent)) return false;
  insert_unchecked(parent, child);
  return true;
}

bool Dag::remove_edge(int parent, int child) {
  check_node(parent);
  check_node(child);
  if (!has_edge(parent, child)) return false;
  erase_unchecked(parent, child);
  return true;
}

bool Dag::try_reverse_edge(int parent, int child) {
  check_node(parent);
  check_node(child);
  if (!has_edge(parent, child)) return false;
  erase_unchecked(parent, child);
  if (reachable(parent, child)) {
    insert_unchecked(parent, child);
    return false;
  }
  insert_unchecked(child, parent);
  return true;
}

std::vector<int> topological_order(const Dag& dag) {
  const int n = dag.size();
  std::vector<int> indegree(n);
  for (int v = 0; v < n; ++v)
    indegree[v] = static_cast<int>(dag.parents(v).size());
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c = 0; c < n; ++c)
      if (dag.has_edge(v, c) && --indegree[c] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) != n)
    throw CycleError("topological_order: graph has a cycle");
  return order;
}

}  // namespace bnmoo
