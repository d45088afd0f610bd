#include "walkdist/cellular/kwl.hpp"

#include <algorithm>
#include <map>

#include "walkdist/cellular/extension.hpp"

namespace walkdist::cellular {

const char* to_string(WlVerdict v) {
  return v == WlVerdict::distinguished ? "distinguished" : "not-distinguished";
}

namespace {

using Key = std::vector<std::uint64_t>;

// Atomic type of a tuple: equality pattern and adjacency among its entries.
Key atomic_type(const graph::Graph& g, const std::vector<std::size_t>& x) {
  Key key;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      key.push_back(x[i] == x[j] ? 2u : (g.adjacent(x[i], x[j]) ? 1u : 0u));
  return key;
}

std::vector<std::size_t> histogram(const std::vector<std::uint32_t>& colors, std::size_t palette) {
  std::vector<std::size_t> h(palette, 0);
  for (auto c : colors) ++h[c];
  return h;
}

// Assigns canonical ids (ranks in the sorted dictionary) to both key lists.
std::size_t assign(std::vector<Key>& ka, std::vector<Key>& kb, std::vector<std::uint32_t>& ca,
                   std::vector<std::uint32_t>& cb) {
  std::map<Key, std::uint32_t> dict;
  for (const auto& k : ka) dict.emplace(k, 0);
  for (const auto& k : kb) dict.emplace(k, 0);
  std::uint32_t next = 0;
  for (auto& [k, id] : dict) id = next++;
  ca.resize(ka.size());
  cb.resize(kb.size());
  for (std::size_t i = 0; i < ka.size(); ++i) ca[i] = dict.at(ka[i]);
  for (std::size_t i = 0; i < kb.size(); ++i) cb[i] = dict.at(kb[i]);
  return dict.size();
}

std::size_t distinct(const std::vector<std::uint32_t>& c) {
  auto s = c;
  std::sort(s.begin(), s.end());
  return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
}

Key vertex_key(const graph::Graph& g, const std::vector<std::uint32_t>& c, std::size_t v) {
  Key key{c[v]};
  std::vector<std::uint64_t> nb;
  for (std::size_t w = 0; w < g.order(); ++w)
    if (g.adjacent(v, w)) nb.push_back(c[w]);
  std::sort(nb.begin(), nb.end());
  key.insert(key.end(), nb.begin(), nb.end());
  return key;
}

Key tuple_key(const TupleSpace& space, const std::vector<std::uint32_t>& c, std::size_t x,
              std::vector<std::size_t>& tuple) {
  const auto k = static_cast<std::size_t>(space.arity());
  const std::size_t n = space.base();
  Key key{c[x]};
  std::vector<Key> entries(n, Key(k));
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto saved = tuple[i];
      tuple[i] = w;
      entries[w][i] = c[space.encode(tuple)];
      tuple[i] = saved;
    }
  }
  std::sort(entries.begin(), entries.end());
  for (const auto& e : entries) key.insert(key.end(), e.begin(), e.end());
  return key;
}

}  // namespace

WlResult k_wl_compare(const graph::Graph& g, const graph::Graph& h, int k, std::size_t cap,
                      const Deadline& deadline) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  const std::size_t dim = require_within_cap(g.order(), k, cap, "k-WL comparison refused");
  WlResult result;
  if (g.order() != h.order()) {
    result.verdict = WlVerdict::distinguished;
    return result;
  }
  const TupleSpace space(g.order(), k);
  std::vector<Key> ka(dim), kb(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const auto t = space.decode(x);
    ka[x] = atomic_type(g, t);
    kb[x] = atomic_type(h, t);
  }
  std::vector<std::uint32_t> ca, cb;
  std::size_t palette = assign(ka, kb, ca, cb);
  result.colors = palette;
  std::size_t used = std::max(distinct(ca), distinct(cb));
  while (true) {
    if (histogram(ca, palette) != histogram(cb, palette)) {
      result.verdict = WlVerdict::distinguished;
      return result;
    }
    deadline.check();
    for (std::size_t x = 0; x < dim; ++x) {
      if (k == 1) {
        ka[x] = vertex_key(g, ca, x);
        kb[x] = vertex_key(h, cb, x);
      } else {
        auto t = space.decode(x);
        ka[x] = tuple_key(space, ca, x, t);
        kb[x] = tuple_key(space, cb, x, t);
      }
    }
    palette = assign(ka, kb, ca, cb);
    ++result.rounds;
    result.colors = palette;
    const std::size_t now = std::max(distinct(ca), distinct(cb));
    if (now == used) break;
    used = now;
  }
  if (histogram(ca, palette) != histogram(cb, palette)) result.verdict = WlVerdict::distinguished;
  return result;
}

}  // namespace walkdist::cellular
