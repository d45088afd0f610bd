#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "walkdist/graph/graph.hpp"

namespace walkdist::graph {

/// m x m rook's graph: vertex (i, j) has index i*m + j; adjacent iff same row or column.
Graph rook_graph(std::size_t m);

/// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}; vertex (a, b) is 4a + b.
Graph shrikhande();

/// Paley graph on Z_q, q prime with q = 1 (mod 4).
Graph paley(std::size_t q);

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph empty_graph(std::size_t n);

/// Cai-Furer-Immerman pair over a connected base graph with minimum degree 2.
///
/// For each base vertex v (in order) the gadget contributes one middle node per
/// even-size subset S of v's incident edges, enumerated by increasing bitmask
/// over the incident edges sorted by neighbour. Then every base edge e (in
/// lexicographic order) contributes two pair nodes (e,0), (e,1). Middle node
/// (v,S) is adjacent to (e, [e in S]) for every incident e. The twisted copy
/// flips that bit for the lexicographically first edge at its larger endpoint.
std::pair<Graph, Graph> cfi_pair(const Graph& base);

/// Erdos-Renyi G(n, p).
Graph random_graph(std::size_t n, double p, std::mt19937_64& rng);

/// Applies up to `swaps` degree-preserving double edge swaps (ab, cd -> ad, cb),
/// skipping proposals that would create loops or multi-edges.
Graph random_edge_swaps(const Graph& g, std::size_t swaps, std::mt19937_64& rng);

/// Uniform random vertex relabelling.
Graph random_relabel(const Graph& g, std::mt19937_64& rng);

}  // namespace walkdist::graph
