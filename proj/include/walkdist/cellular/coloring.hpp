#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "walkdist/common.hpp"

namespace walkdist::cellular {

/// Colouring of the ordered pairs of a point set. Colour ids are canonical:
/// they are the ranks of exact refinement keys in lexicographic order, so
/// two point sets refined with the same key set get the same ids regardless
/// of how their points are numbered.
struct PairColoring {
  std::size_t points = 0;
  std::vector<std::uint32_t> colors;  // row-major, points x points
  std::uint32_t palette = 0;          // ids are < palette (may be shared across colourings)

  std::uint32_t at(std::size_t u, std::size_t v) const { return colors[u * points + v]; }
  /// Number of distinct colours actually present.
  std::size_t used_colors() const;
  /// Colour histogram indexed by id, length `palette`.
  std::vector<std::size_t> histogram() const;
};

struct RefineOptions {
  int threads = 0;  // 0: WALKDIST_THREADS or hardware concurrency
  Deadline deadline;
};

/// Initial colouring: key of (u, v) is (u != v, s_1(u,v), s_1(v,u), s_2(u,v), ...).
/// All seeds must share the same dimension.
PairColoring initial_coloring(std::span<const IntMatrix> seeds);

/// Initial colourings of several point sets with one shared dictionary.
std::vector<PairColoring> initial_colorings(std::span<const std::vector<IntMatrix>> seed_sets);

/// Exact key for the initial colour `id` produced by the call above; returned
/// alongside so bases can report seed values per relation.
struct InitialColoring {
  std::vector<PairColoring> colorings;
  std::vector<std::vector<std::int64_t>> keys;  // keys[id]
};
InitialColoring initial_colorings_with_keys(std::span<const std::vector<IntMatrix>> seed_sets);

/// One Weisfeiler-Leman step: the new colour of (u, v) is the old colour
/// joined with the multiset {(c(u,w), c(w,v)) : w}. The colour count never
/// decreases; equality means the colouring is stable.
PairColoring refine_step(const PairColoring& coloring, const RefineOptions& options = {});

/// One step applied to several colourings with a shared key dictionary.
std::vector<PairColoring> refine_step_jointly(std::span<const PairColoring> colorings,
                                              const RefineOptions& options = {});

struct StabilizeResult {
  std::vector<PairColoring> colorings;
  std::size_t rounds = 0;
  /// False if the histograms differed after some round (joint mode only).
  bool histograms_agree = true;
};

/// Refines until no colouring gains a colour. With `stop_on_divergence`, stops
/// as soon as the histograms of the colourings disagree.
StabilizeResult stabilize_jointly(std::vector<PairColoring> colorings, const RefineOptions& options = {},
                                  bool stop_on_divergence = true);

PairColoring stabilize(PairColoring coloring, const RefineOptions& options = {});

}  // namespace walkdist::cellular
