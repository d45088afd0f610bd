#include "walkdist/graph/graph.hpp"

#include <algorithm>
#include <functional>

namespace walkdist::graph {

Graph::Graph(std::size_t n, std::string label) : adj_(n, 0), label_(std::move(label)) {
  if (n == 0) throw ArgumentError("graph must have at least one vertex");
}

Graph::Graph(SquareMatrix<std::uint8_t> adjacency, std::string label)
    : adj_(std::move(adjacency)), label_(std::move(label)) {
  const std::size_t n = adj_.size();
  if (n == 0) throw ArgumentError("graph must have at least one vertex");
  for (std::size_t u = 0; u < n; ++u) {
    if (adj_(u, u) != 0) throw ArgumentError("adjacency has a loop at vertex " + std::to_string(u));
    for (std::size_t v = 0; v < n; ++v) {
      if (adj_(u, v) > 1) throw ArgumentError("adjacency entries must be 0 or 1");
      if (adj_(u, v) != adj_(v, u)) throw ArgumentError("adjacency is not symmetric");
    }
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                        std::string label) {
  Graph g(n, std::move(label));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::check_vertex(std::size_t v) const {
  if (v >= order()) throw ArgumentError("vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ArgumentError("loops are not allowed");
  adj_(u, v) = adj_(v, u) = 1;
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  check_vertex(u);
  check_vertex(v);
  adj_(u, v) = adj_(v, u) = 0;
}

std::size_t Graph::degree(std::size_t v) const {
  check_vertex(v);
  std::size_t d = 0;
  for (std::size_t w = 0; w < order(); ++w) d += adj_(v, w);
  return d;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(order());
  for (std::size_t v = 0; v < order(); ++v) out[v] = degree(v);
  return out;
}

std::vector<std::size_t> Graph::neighbours(std::size_t v) const {
  check_vertex(v);
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < order(); ++w)
    if (adj_(v, w)) out.push_back(w);
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto x : adj_.data()) total += x;
  return total / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < order(); ++u)
    for (std::size_t v = u + 1; v < order(); ++v)
      if (adj_(u, v)) out.emplace_back(u, v);
  return out;
}

bool Graph::connected() const {
  const std::size_t n = order();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      if (adj_(u, w) && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

IntMatrix Graph::int_adjacency() const {
  IntMatrix m(order());
  std::transform(adj_.data().begin(), adj_.data().end(), m.data().begin(),
                 [](std::uint8_t x) { return static_cast<std::int64_t>(x); });
  return m;
}

Graph relabel(const Graph& g, std::span<const std::size_t> perm) {
  const std::size_t n = g.order();
  if (perm.size() != n) throw ArgumentError("permutation length does not match graph order");
  std::vector<char> hit(n, 0);
  for (auto p : perm) {
    if (p >= n || hit[p]) throw ArgumentError("not a permutation");
    hit[p] = 1;
  }
  SquareMatrix<std::uint8_t> adj(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) adj(perm[u], perm[v]) = g.adjacency()(u, v);
  return Graph(std::move(adj), g.label());
}

std::vector<std::size_t> degree_sequence(const Graph& g) {
  auto d = g.degrees();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

std::optional<SrgParams> srg_parameters(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 2) return std::nullopt;
  const auto degs = g.degrees();
  const std::size_t k = degs[0];
  if (std::any_of(degs.begin(), degs.end(), [k](std::size_t d) { return d != k; }))
    return std::nullopt;

  std::optional<std::size_t> lambda, mu;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      std::size_t common = 0;
      for (std::size_t w = 0; w < n; ++w) common += g.adjacent(u, w) && g.adjacent(w, v);
      auto& slot = g.adjacent(u, v) ? lambda : mu;
      if (!slot) slot = common;
      else if (*slot != common) return std::nullopt;
    }
  }
  return SrgParams{n, k, lambda.value_or(0), mu.value_or(0)};
}

}  // namespace walkdist::graph
