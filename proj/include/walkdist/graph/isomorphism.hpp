#pragma once

#include <optional>
#include <vector>

#include "walkdist/graph/graph.hpp"

namespace walkdist::graph {

inline constexpr std::size_t kDefaultIsoLimit = 24;

struct IsoVerdict {
  bool isomorphic = false;
  /// When isomorphic: h.adj(witness[u], witness[v]) == g.adj(u, v) for all u, v.
  std::vector<std::size_t> witness;
};

/// Exhaustive isomorphism test by individualisation and colour refinement
/// with backtracking. Differing orders give an immediate non-iso verdict;
/// orders above `limit` are refused.
IsoVerdict are_isomorphic_bruteforce(const Graph& g, const Graph& h,
                                     std::size_t limit = kDefaultIsoLimit);

/// True iff `perm` maps g onto h (direct matrix conjugation check).
bool verify_isomorphism(const Graph& g, const Graph& h, const std::vector<std::size_t>& perm);

}  // namespace walkdist::graph
