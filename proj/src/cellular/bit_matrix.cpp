#include "walkdist/cellular/bit_matrix.hpp"

#include <bit>

namespace walkdist::cellular {

BitMatrix::BitMatrix(std::size_t dim)
    : dim_(dim), words_((dim + 63) / 64), bits_(dim * ((dim + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t dim) {
  BitMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::ones(std::size_t dim) {
  BitMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m.set(i, j);
  return m;
}

std::size_t BitMatrix::count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (get(i, j)) t.set(j, i);
  return t;
}

BitMatrix BitMatrix::operator&(const BitMatrix& other) const {
  if (other.dim_ != dim_) throw ArgumentError("dimension mismatch in Hadamard product");
  BitMatrix r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= other.bits_[i];
  return r;
}

BitMatrix BitMatrix::operator|(const BitMatrix& other) const {
  if (other.dim_ != dim_) throw ArgumentError("dimension mismatch in relation sum");
  BitMatrix r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= other.bits_[i];
  return r;
}

BitMatrix BitMatrix::complement() const {
  BitMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r.set(i, j, !get(i, j));
  return r;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t nb = b.dim();
  BitMatrix r(a.dim() * nb);
  for (std::size_t i1 = 0; i1 < a.dim(); ++i1)
    for (std::size_t j1 = 0; j1 < a.dim(); ++j1) {
      if (!a.get(i1, j1)) continue;
      for (std::size_t i2 = 0; i2 < nb; ++i2)
        for (std::size_t j2 = 0; j2 < nb; ++j2)
          if (b.get(i2, j2)) r.set(i1 * nb + i2, j1 * nb + j2);
    }
  return r;
}

BitMatrix bit_matrix_from(const SquareMatrix<std::uint8_t>& m) {
  BitMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j)) r.set(i, j);
  return r;
}

}  // namespace walkdist::cellular
