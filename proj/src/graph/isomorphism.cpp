#include "walkdist/graph/isomorphism.hpp"

#include <algorithm>
#include <map>

namespace walkdist::graph {

namespace {

using Colors = std::vector<std::size_t>;

// Refines both vertex colourings in lockstep with a shared dictionary.
// Returns false as soon as the colour histograms disagree.
bool refine_jointly(const Graph& g, const Graph& h, Colors& cg, Colors& ch) {
  const std::size_t n = g.order();
  auto count_colors = [](const Colors& c) {
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  };
  std::size_t classes = count_colors(cg);
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> dictionary;
    std::vector<std::vector<std::size_t>> kg(n), kh(n);
    auto keys = [&](const Graph& gr, const Colors& c, std::vector<std::vector<std::size_t>>& out) {
      for (std::size_t v = 0; v < n; ++v) {
        auto& key = out[v];
        key.push_back(c[v]);
        for (std::size_t w = 0; w < n; ++w)
          if (gr.adjacent(v, w)) key.push_back(c[w]);
        std::sort(key.begin() + 1, key.end());
        dictionary.emplace(key, 0);
      }
    };
    keys(g, cg, kg);
    keys(h, ch, kh);
    std::size_t next = 0;
    for (auto& [key, id] : dictionary) id = next++;
    std::vector<std::size_t> hist_g(next, 0), hist_h(next, 0);
    for (std::size_t v = 0; v < n; ++v) {
      cg[v] = dictionary[kg[v]];
      ch[v] = dictionary[kh[v]];
      ++hist_g[cg[v]];
      ++hist_h[ch[v]];
    }
    if (hist_g != hist_h) return false;
    if (next == classes) return true;
    classes = next;
  }
}

bool search(const Graph& g, const Graph& h, Colors cg, Colors ch, std::vector<std::size_t>& out) {
  if (!refine_jointly(g, h, cg, ch)) return false;
  const std::size_t n = g.order();
  const std::size_t classes = *std::max_element(cg.begin(), cg.end()) + 1;

  std::vector<std::size_t> sizes(classes, 0);
  for (auto c : cg) ++sizes[c];
  std::size_t target = classes;
  for (std::size_t c = 0; c < classes; ++c)
    if (sizes[c] > 1 && (target == classes || sizes[c] < sizes[target])) target = c;

  if (target == classes) {
    std::vector<std::size_t> h_of_color(classes);
    for (std::size_t w = 0; w < n; ++w) h_of_color[ch[w]] = w;
    out.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) out[v] = h_of_color[cg[v]];
    return verify_isomorphism(g, h, out);
  }

  std::size_t v = 0;
  while (cg[v] != target) ++v;
  for (std::size_t w = 0; w < n; ++w) {
    if (ch[w] != target) continue;
    Colors ng = cg, nh = ch;
    ng[v] = nh[w] = classes;
    if (search(g, h, std::move(ng), std::move(nh), out)) return true;
  }
  return false;
}

}  // namespace

bool verify_isomorphism(const Graph& g, const Graph& h, const std::vector<std::size_t>& perm) {
  const std::size_t n = g.order();
  if (h.order() != n || perm.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (auto p : perm) {
    if (p >= n || hit[p]) return false;
    hit[p] = 1;
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (g.adjacent(u, v) != h.adjacent(perm[u], perm[v])) return false;
  return true;
}

IsoVerdict are_isomorphic_bruteforce(const Graph& g, const Graph& h, std::size_t limit) {
  if (g.order() != h.order()) return {};
  if (g.order() > limit)
    throw RefusedError(g.order(), limit, "brute-force isomorphism refused");
  if (g.edge_count() != h.edge_count()) return {};
  IsoVerdict verdict;
  Colors cg(g.order(), 0), ch(h.order(), 0);
  verdict.isomorphic = search(g, h, std::move(cg), std::move(ch), verdict.witness);
  if (!verdict.isomorphic) verdict.witness.clear();
  return verdict;
}

}  // namespace walkdist::graph
