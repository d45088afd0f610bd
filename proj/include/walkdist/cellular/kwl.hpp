#pragma once

#include <cstddef>

#include "walkdist/common.hpp"
#include "walkdist/graph/graph.hpp"

namespace walkdist::cellular {

enum class WlVerdict { distinguished, not_distinguished };

const char* to_string(WlVerdict v);

struct WlResult {
  WlVerdict verdict = WlVerdict::not_distinguished;
  std::size_t rounds = 0;
  std::size_t colors = 0;  // colours in the final (shared) palette
};

/// Weisfeiler-Leman comparison. k = 1 is colour refinement on vertices; k >= 2
/// is the folklore variant on k-tuples, where a tuple's new colour collects,
/// for every vertex w, the colours of the k tuples obtained by writing w into
/// each position. Both graphs are refined in lockstep with one dictionary.
WlResult k_wl_compare(const graph::Graph& g, const graph::Graph& h, int k,
                      std::size_t cap = kDefaultSizeCap, const Deadline& deadline = {});

}  // namespace walkdist::cellular
