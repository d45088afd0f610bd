#include "walkdist/cellular/extension.hpp"

#include <algorithm>
#include <map>

namespace walkdist::cellular {

TupleSpace::TupleSpace(std::size_t n, int k) : n_(n), k_(k), size_(saturating_power(n, k)) {
  if (n == 0 || k < 1) throw ArgumentError("tuple space needs n >= 1 and k >= 1");
}

std::vector<std::size_t> TupleSpace::decode(std::size_t index) const {
  std::vector<std::size_t> tuple(static_cast<std::size_t>(k_));
  for (int i = k_ - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = index % n_;
    index /= n_;
  }
  return tuple;
}

std::size_t TupleSpace::encode(std::span<const std::size_t> tuple) const {
  std::size_t index = 0;
  for (auto x : tuple) index = index * n_ + x;
  return index;
}

std::vector<std::vector<std::uint8_t>> set_partitions(std::size_t slots, std::size_t max_blocks) {
  std::vector<std::vector<std::uint8_t>> out;
  if (slots == 0) return {{}};
  std::vector<std::uint8_t> rgs(slots, 0);
  // Depth-first over restricted growth strings: rgs[i] <= 1 + max(rgs[0..i-1]).
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t blocks) -> void {
    if (pos == slots) {
      out.push_back(rgs);
      return;
    }
    const std::size_t limit = std::min(blocks + 1, max_blocks);
    for (std::size_t b = 0; b < limit; ++b) {
      rgs[pos] = static_cast<std::uint8_t>(b);
      self(self, pos + 1, std::max(blocks, b + 1));
    }
  };
  rgs[0] = 0;
  if (max_blocks == 0) return out;
  recurse(recurse, 1, 1);
  return out;
}

std::vector<std::uint8_t> equality_pattern(std::span<const std::size_t> x, std::span<const std::size_t> y) {
  std::vector<std::size_t> slots(x.begin(), x.end());
  slots.insert(slots.end(), y.begin(), y.end());
  std::vector<std::uint8_t> rgs(slots.size());
  std::vector<std::size_t> firsts;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto it = std::find(firsts.begin(), firsts.end(), slots[i]);
    if (it == firsts.end()) {
      rgs[i] = static_cast<std::uint8_t>(firsts.size());
      firsts.push_back(slots[i]);
    } else {
      rgs[i] = static_cast<std::uint8_t>(it - firsts.begin());
    }
  }
  return rgs;
}

namespace {

// Pattern index for every (x, y) pair of V^k.
std::vector<std::uint32_t> pattern_indices(std::size_t n, int k) {
  const TupleSpace space(n, k);
  const auto patterns = set_partitions(2 * static_cast<std::size_t>(k), n);
  std::map<std::vector<std::uint8_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < patterns.size(); ++i) index.emplace(patterns[i], i);
  const std::size_t dim = space.size();
  std::vector<std::uint32_t> out(dim * dim);
  std::vector<std::vector<std::size_t>> tuples(dim);
  for (std::size_t i = 0; i < dim; ++i) tuples[i] = space.decode(i);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) out[x * dim + y] = index.at(equality_pattern(tuples[x], tuples[y]));
  return out;
}

}  // namespace

std::vector<Relation> centralizer_basis(std::size_t n, int k, std::size_t cap) {
  const std::size_t dim = require_within_cap(n, k, cap, "centralizer basis refused");
  const auto patterns = set_partitions(2 * static_cast<std::size_t>(k), n);
  const auto idx = pattern_indices(n, k);
  std::vector<Relation> out;
  for (std::uint32_t p = 0; p < patterns.size(); ++p) out.push_back({p, BitMatrix(dim)});
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) out[idx[x * dim + y]].matrix.set(x, y);
  return out;
}

IntMatrix centralizer_seed(std::size_t n, int k) {
  const std::size_t dim = TupleSpace(n, k).size();
  const auto idx = pattern_indices(n, k);
  IntMatrix m(dim);
  for (std::size_t i = 0; i < idx.size(); ++i) m.data()[i] = idx[i];
  return m;
}

IntMatrix tensor_seed(const CellularBasis& base, int k) {
  const TupleSpace space(base.point_count(), k);
  const std::size_t dim = space.size();
  const auto radix = static_cast<std::int64_t>(base.relation_count());
  std::vector<std::vector<std::size_t>> tuples(dim);
  for (std::size_t i = 0; i < dim; ++i) tuples[i] = space.decode(i);
  IntMatrix m(dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) {
      std::int64_t code = 0;
      for (std::size_t i = 0; i < tuples[x].size(); ++i)
        code = code * radix + base.relation_of(tuples[x][i], tuples[y][i]);
      m(x, y) = code;
    }
  return m;
}

std::vector<IntMatrix> k_extension_seeds(const CellularBasis& base, int k) {
  std::vector<IntMatrix> seeds;
  seeds.push_back(tensor_seed(base, k));
  seeds.push_back(centralizer_seed(base.point_count(), k));
  return seeds;
}

CellularBasis k_extension(const graph::Graph& g, int k, const ExtensionOptions& options) {
  const std::size_t dim = require_within_cap(g.order(), k, options.cap, "k-extension refused");
  const IntMatrix adjacency = g.int_adjacency();
  const auto base = cellular_closure(std::span(&adjacency, 1), g.order(), options.refine);
  const auto seeds = k_extension_seeds(base, k);
  return cellular_closure(seeds, dim, options.refine);
}

BitMatrix cylindric(std::span<const BitMatrix> rels, int k) {
  const auto kk = static_cast<std::size_t>(k);
  if (k < 1 || rels.size() != kk * kk) throw ArgumentError("cylindric needs a k x k array of relations");
  const std::size_t n = rels[0].dim();
  for (const auto& r : rels)
    if (r.dim() != n) throw ArgumentError("cylindric relations differ in dimension");
  const TupleSpace space(n, k);
  const std::size_t dim = space.size();
  std::vector<std::vector<std::size_t>> tuples(dim);
  for (std::size_t i = 0; i < dim; ++i) tuples[i] = space.decode(i);
  BitMatrix out(dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) {
      bool all = true;
      for (std::size_t i = 0; i < kk && all; ++i)
        for (std::size_t j = 0; j < kk && all; ++j) all = rels[i * kk + j].get(tuples[x][i], tuples[y][j]);
      if (all) out.set(x, y);
    }
  return out;
}

BitMatrix tuple_permutation_matrix(std::size_t n, std::span<const std::size_t> perm) {
  const TupleSpace space(n, static_cast<int>(perm.size()));
  const std::size_t dim = space.size();
  BitMatrix out(dim);
  std::vector<std::size_t> image(perm.size());
  for (std::size_t x = 0; x < dim; ++x) {
    const auto tuple = space.decode(x);
    for (std::size_t i = 0; i < perm.size(); ++i) image[i] = tuple[perm[i]];
    out.set(space.encode(image), x);
  }
  return out;
}

}  // namespace walkdist::cellular
