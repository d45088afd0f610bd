#include "walkdist/graph/generators.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace walkdist::graph {

namespace {

bool is_prime(std::size_t q) {
  if (q < 2) return false;
  for (std::size_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

Graph rook_graph(std::size_t m) {
  if (m < 2) throw ArgumentError("rook graph side must be at least 2");
  Graph g(m * m, "rook:" + std::to_string(m));
  for (std::size_t a = 0; a < m * m; ++a)
    for (std::size_t b = a + 1; b < m * m; ++b)
      if (a / m == b / m || a % m == b % m) g.add_edge(a, b);
  return g;
}

Graph shrikhande() {
  Graph g(16, "shrikhande");
  const int steps[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (const auto& s : steps) {
        const int c = (a + s[0]) % 4;
        const int d = (b + s[1]) % 4;
        g.add_edge(static_cast<std::size_t>(4 * a + b), static_cast<std::size_t>(4 * c + d));
      }
  return g;
}

Graph paley(std::size_t q) {
  if (!is_prime(q) || q % 4 != 1) throw ArgumentError("paley order must be a prime = 1 (mod 4)");
  std::vector<char> residue(q, 0);
  for (std::size_t x = 1; x < q; ++x) residue[x * x % q] = 1;
  Graph g(q, "paley:" + std::to_string(q));
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = x + 1; y < q; ++y)
      if (residue[(y - x) % q]) g.add_edge(x, y);
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n, "complete:" + std::to_string(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
  Graph g(n, "cycle:" + std::to_string(n));
  for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n, "path:" + std::to_string(n));
  for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph empty_graph(std::size_t n) { return Graph(n, "empty:" + std::to_string(n)); }

std::pair<Graph, Graph> cfi_pair(const Graph& base) {
  const std::size_t n = base.order();
  if (!base.connected()) throw ArgumentError("CFI base graph must be connected");
  for (std::size_t v = 0; v < n; ++v)
    if (base.degree(v) < 2) throw ArgumentError("CFI base graph needs minimum degree 2");

  const auto edges = base.edges();
  auto edge_index = [&edges](std::size_t u, std::size_t v) {
    auto key = std::minmax(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair(key.first, key.second));
    return static_cast<std::size_t>(it - edges.begin());
  };

  struct Middle {
    std::size_t vertex;
    std::uint64_t subset;
  };
  std::vector<Middle> middles;
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto w : base.neighbours(v)) incident[v].push_back(edge_index(v, w));
    const std::size_t d = incident[v].size();
    if (d >= 63) throw ArgumentError("CFI base degree too large");
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << d); ++s)
      if (std::popcount(s) % 2 == 0) middles.push_back({v, s});
  }

  const std::size_t pair_offset = middles.size();
  const std::size_t total = pair_offset + 2 * edges.size();
  const auto twisted_edge = std::size_t{0};
  const std::size_t twisted_end = edges[twisted_edge].second;

  auto build = [&](bool twist) {
    Graph g(total);
    for (std::size_t m = 0; m < middles.size(); ++m) {
      const auto [v, subset] = middles[m];
      for (std::size_t i = 0; i < incident[v].size(); ++i) {
        const std::size_t e = incident[v][i];
        std::size_t bit = (subset >> i) & 1;
        if (twist && e == twisted_edge && v == twisted_end) bit ^= 1;
        g.add_edge(m, pair_offset + 2 * e + bit);
      }
    }
    return g;
  };

  Graph plain = build(false);
  Graph twisted = build(true);
  const std::string tag = base.label().empty() ? std::string("base") : base.label();
  plain.set_label("cfi0(" + tag + ")");
  twisted.set_label("cfi1(" + tag + ")");
  return {std::move(plain), std::move(twisted)};
}

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

Graph random_edge_swaps(const Graph& g, std::size_t swaps, std::mt19937_64& rng) {
  Graph out = g;
  for (std::size_t attempt = 0, done = 0; done < swaps && attempt < 50 * (swaps + 1); ++attempt) {
    auto edges = out.edges();
    if (edges.size() < 2) break;
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    auto [a, b] = edges[pick(rng)];
    auto [c, d] = edges[pick(rng)];
    if (std::bernoulli_distribution(0.5)(rng)) std::swap(c, d);
    if (a == c || a == d || b == c || b == d) continue;
    if (out.adjacent(a, d) || out.adjacent(c, b)) continue;
    out.remove_edge(a, b);
    out.remove_edge(c, d);
    out.add_edge(a, d);
    out.add_edge(c, b);
    ++done;
  }
  return out;
}

Graph random_relabel(const Graph& g, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(g.order());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(g, perm);
}

}  // namespace walkdist::graph
