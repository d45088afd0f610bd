#include "walkdist/walk/signature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace walkdist::walk {

namespace {

using Group = std::vector<std::size_t>;

// Splits each group along one axis at gaps wider than `gap`; returns true if anything split.
bool split_groups(std::vector<Group>& groups, const std::vector<std::complex<double>>& z, bool real_axis,
                  double gap) {
  auto coord = [&](std::size_t i) { return real_axis ? z[i].real() : z[i].imag(); };
  std::vector<Group> out;
  bool split = false;
  for (auto& g : groups) {
    std::stable_sort(g.begin(), g.end(), [&](auto a, auto b) { return coord(a) < coord(b); });
    Group current{g.front()};
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (coord(g[i]) - coord(g[i - 1]) > gap) {
        out.push_back(std::move(current));
        current.clear();
        split = true;
      }
      current.push_back(g[i]);
    }
    out.push_back(std::move(current));
  }
  groups = std::move(out);
  return split;
}

}  // namespace

GreensSignature greens_signature(const Eigen::MatrixXcd& u, double t, double tol) {
  if (u.rows() != u.cols()) throw ArgumentError("Green's signature needs a square matrix");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  GreensSignature sig;
  sig.time = t;
  sig.tol = tol;
  sig.source_dim = static_cast<std::size_t>(u.rows());
  std::vector<std::complex<double>> z(u.data(), u.data() + u.size());
  if (z.empty()) return sig;

  std::vector<Group> groups(1);
  groups[0].resize(z.size());
  std::iota(groups[0].begin(), groups[0].end(), 0);
  const double gap = tol / 2.0;
  bool real_axis = true;
  int quiet = 0;  // consecutive passes without a split
  while (quiet < 2) {
    quiet = split_groups(groups, z, real_axis, gap) ? 0 : quiet + 1;
    real_axis = !real_axis;
  }

  for (const auto& g : groups) {
    std::complex<double> sum = 0.0;
    for (auto i : g) sum += z[i];
    sig.values.push_back({sum / static_cast<double>(g.size()), g.size()});
  }
  // Chain real parts within tol/2 so near-equal real parts sort by imaginary part.
  std::sort(sig.values.begin(), sig.values.end(),
            [](const auto& a, const auto& b) { return a.value.real() < b.value.real(); });
  std::vector<double> key(sig.values.size());
  for (std::size_t i = 0; i < sig.values.size(); ++i)
    key[i] = (i > 0 && sig.values[i].value.real() - sig.values[i - 1].value.real() <= gap) ? key[i - 1]
                                                                                          : sig.values[i].value.real();
  std::vector<std::size_t> order(sig.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (key[a] != key[b]) return key[a] < key[b];
    if (sig.values[a].value.imag() != sig.values[b].value.imag())
      return sig.values[a].value.imag() < sig.values[b].value.imag();
    return sig.values[a].value.real() < sig.values[b].value.real();
  });
  std::vector<SignatureEntry> sorted;
  for (auto i : order) sorted.push_back(sig.values[i]);
  sig.values = std::move(sorted);
  return sig;
}

SignatureComparison compare_signatures(const GreensSignature& a, const GreensSignature& b, double tol,
                                       bool set_only) {
  if (a.source_dim != b.source_dim) throw ArgumentError("signatures of different dimensions");
  SignatureComparison cmp;
  const auto& va = a.values;
  const auto& vb = b.values;
  if (set_only) {
    cmp.structure_mismatch = va.size() != vb.size();
    for (std::size_t i = 0; i < std::min(va.size(), vb.size()); ++i)
      cmp.max_deviation = std::max(cmp.max_deviation, std::abs(va[i].value - vb[i].value));
  } else {
    cmp.structure_mismatch = va.size() != vb.size();
    for (std::size_t i = 0; i < std::min(va.size(), vb.size()) && !cmp.structure_mismatch; ++i)
      cmp.structure_mismatch = va[i].multiplicity != vb[i].multiplicity;
    // Walk the two run-length lists in step.
    std::size_t i = 0, j = 0, left_a = va.empty() ? 0 : va[0].multiplicity, left_b = vb.empty() ? 0 : vb[0].multiplicity;
    while (i < va.size() && j < vb.size()) {
      cmp.max_deviation = std::max(cmp.max_deviation, std::abs(va[i].value - vb[j].value));
      const auto step = std::min(left_a, left_b);
      left_a -= step;
      left_b -= step;
      if (left_a == 0 && ++i < va.size()) left_a = va[i].multiplicity;
      if (left_b == 0 && ++j < vb.size()) left_b = vb[j].multiplicity;
    }
  }
  cmp.distinguished = cmp.structure_mismatch || cmp.max_deviation > tol;
  return cmp;
}

SignatureComparison compare_green_values(const Eigen::MatrixXcd& ua, const Eigen::MatrixXcd& ub, double t,
                                         double tol, bool set_only) {
  auto cmp = compare_signatures(greens_signature(ua, t, tol), greens_signature(ub, t, tol), tol, set_only);
  if (!cmp.distinguished) return cmp;
  const double wide = 10.0 * tol;
  const auto merged = compare_signatures(greens_signature(ua, t, wide), greens_signature(ub, t, wide), wide, set_only);
  if (!merged.distinguished) cmp.distinguished = false;
  return cmp;
}

std::vector<RelationTerm> relation_decomposition(const Eigen::MatrixXcd& u, const cellular::CellularBasis& basis) {
  const std::size_t n = basis.point_count();
  if (static_cast<std::size_t>(u.rows()) != n || static_cast<std::size_t>(u.cols()) != n)
    throw ArgumentError("matrix dimension does not match basis point count");
  const std::size_t m = basis.relation_count();
  std::vector<RelationTerm> terms(m);
  std::vector<std::complex<double>> sums(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = basis.relation_of(i, j);
      sums[r] += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      ++terms[r].m;
    }
  for (std::uint32_t r = 0; r < m; ++r) {
    terms[r].relation = r;
    terms[r].x = sums[r] / static_cast<double>(terms[r].m);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto& term = terms[basis.relation_of(i, j)];
      term.residual =
          std::max(term.residual, std::abs(u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - term.x));
    }
  return terms;
}

Eigen::MatrixXcd fold_signs(const Eigen::MatrixXcd& u, double tol) {
  Eigen::MatrixXcd out = u;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    auto& z = out.data()[i];
    const bool negative = std::abs(z.real()) > tol / 2 ? z.real() < 0 : z.imag() < 0;
    if (negative) z = -z;
  }
  return out;
}

}  // namespace walkdist::walk
