#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "walkdist/cellular/basis.hpp"
#include "walkdist/graph/graph.hpp"

namespace walkdist::cellular {

/// Indexing of V^k: tuple (x_1, ..., x_k) has index sum_i x_i n^(k-i), so x_1
/// is the most significant digit.
class TupleSpace {
 public:
  TupleSpace(std::size_t n, int k);

  std::size_t base() const noexcept { return n_; }
  int arity() const noexcept { return k_; }
  std::size_t size() const noexcept { return size_; }

  std::vector<std::size_t> decode(std::size_t index) const;
  std::size_t encode(std::span<const std::size_t> tuple) const;

 private:
  std::size_t n_;
  int k_;
  std::size_t size_;
};

/// Set partitions of {0..slots-1} with at most `max_blocks` blocks, as
/// restricted growth strings in lexicographic order.
std::vector<std::vector<std::uint8_t>> set_partitions(std::size_t slots, std::size_t max_blocks);

/// Restricted growth string of the equality pattern of (x_1..x_k, y_1..y_k).
std::vector<std::uint8_t> equality_pattern(std::span<const std::size_t> x, std::span<const std::size_t> y);

/// One relation per orbit of Sym(V) acting diagonally on V^k x V^k, in the
/// lexicographic order of the equality patterns. Refuses n^k above `cap`.
std::vector<Relation> centralizer_basis(std::size_t n, int k, std::size_t cap = kDefaultSizeCap);

/// Matrix on V^k whose (x, y) entry is the index of the equality pattern of (x, y).
IntMatrix centralizer_seed(std::size_t n, int k);

/// Matrix on V^k whose (x, y) entry encodes the tuple of basis relation ids
/// (r(x_1, y_1), ..., r(x_k, y_k)); its level sets are the tensor products
/// R_{r_1} (x) ... (x) R_{r_k}.
IntMatrix tensor_seed(const CellularBasis& base, int k);

/// Generators of the k-extension: tensor_seed and centralizer_seed.
std::vector<IntMatrix> k_extension_seeds(const CellularBasis& base, int k);

struct ExtensionOptions {
  std::size_t cap = kDefaultSizeCap;
  RefineOptions refine;
};

/// Cellular closure on V^k of the k-fold tensor algebra of [G] together with
/// the centralizer algebra of Sym(V).
CellularBasis k_extension(const graph::Graph& g, int k, const ExtensionOptions& options = {});

/// Cyl_S(x, y) = prod_{i,j} R_{i,j}(x_i, y_j); `rels` holds the k x k array in
/// row-major order, each a 0-1 matrix on V.
BitMatrix cylindric(std::span<const BitMatrix> rels, int k);

/// Permutation matrix on V^k sending |x_1..x_k> to |x_{p(1)}..x_{p(k)}>.
BitMatrix tuple_permutation_matrix(std::size_t n, std::span<const std::size_t> perm);

}  // namespace walkdist::cellular
