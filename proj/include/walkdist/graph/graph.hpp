#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "walkdist/common.hpp"

namespace walkdist::graph {

/// Simple undirected graph on vertices 0..n-1, stored as a dense adjacency
/// matrix. The constructor enforces symmetry and a zero diagonal.
class Graph {
 public:
  explicit Graph(std::size_t n, std::string label = {});
  Graph(SquareMatrix<std::uint8_t> adjacency, std::string label = {});

  static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                          std::string label = {});

  std::size_t order() const noexcept { return adj_.size(); }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_(u, v) != 0; }
  const SquareMatrix<std::uint8_t>& adjacency() const noexcept { return adj_; }

  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);

  std::size_t degree(std::size_t v) const;
  std::vector<std::size_t> degrees() const;
  std::vector<std::size_t> neighbours(std::size_t v) const;
  std::size_t edge_count() const;
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  bool connected() const;

  /// Adjacency matrix as signed integers, the seed form used by cellular closures.
  IntMatrix int_adjacency() const;

  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Same adjacency; labels are ignored.
  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check_vertex(std::size_t v) const;

  SquareMatrix<std::uint8_t> adj_;
  std::string label_;
};

/// Graph whose vertex v is renamed perm[v]: result.adj(perm[u], perm[v]) = g.adj(u, v).
Graph relabel(const Graph& g, std::span<const std::size_t> perm);

/// Sorted (non-increasing) degree sequence.
std::vector<std::size_t> degree_sequence(const Graph& g);

struct SrgParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t lambda = 0;
  std::size_t mu = 0;

  /// k(k - lambda - 1) = (n - k - 1) mu.
  bool feasible() const {
    auto [sn, sk, sl, sm] = std::tuple<long long, long long, long long, long long>(n, k, lambda, mu);
    return sk * (sk - sl - 1) == (sn - sk - 1) * sm;
  }
  friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

/// Returns (n, k, lambda, mu) iff A^2 = kI + lambda A + mu (J - I - A) holds
/// exactly with constant row sum k. Vacuous parameters (lambda for edgeless
/// graphs, mu for complete graphs) are reported as 0.
std::optional<SrgParams> srg_parameters(const Graph& g);

}  // namespace walkdist::graph
