#pragma once

#include <cstdint>
#include <vector>

#include "walkdist/common.hpp"

namespace walkdist::cellular {

/// Square 0-1 matrix with bit-packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t dim);

  static BitMatrix identity(std::size_t dim);
  static BitMatrix ones(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    auto& word = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    word = value ? (word | mask) : (word & ~mask);
  }

  std::size_t count() const;
  BitMatrix transposed() const;
  /// Entrywise (Hadamard) product.
  BitMatrix operator&(const BitMatrix& other) const;
  /// Entrywise OR; for disjoint supports this is the matrix sum.
  BitMatrix operator|(const BitMatrix& other) const;
  /// J - M.
  BitMatrix complement() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Kronecker product of 0-1 matrices; row index of (i1, i2) is i1 * b.dim() + i2.
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

BitMatrix bit_matrix_from(const SquareMatrix<std::uint8_t>& m);

}  // namespace walkdist::cellular
