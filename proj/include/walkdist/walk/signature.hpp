#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "walkdist/cellular/basis.hpp"

namespace walkdist::walk {

struct SignatureEntry {
  std::complex<double> value;  // cluster centroid
  std::size_t multiplicity = 0;
};

struct RelationTerm {
  std::uint32_t relation = 0;
  std::complex<double> x;  // mean of U over the support
  std::size_t m = 0;       // support size
  double residual = 0.0;   // max |U - x| over the support
};

/// Multiset of Green's function values <j|U|i> at one time.
struct GreensSignature {
  double time = 0.0;
  double tol = 0.0;
  std::size_t source_dim = 0;
  std::vector<SignatureEntry> values;
  std::optional<std::vector<RelationTerm>> decomposition;
};

/// Clusters all dim^2 entries of `u`: groups are split alternately along the
/// real and imaginary axes wherever consecutive sorted values are more than
/// tol/2 apart, until no group splits. Entries within tol/2 of each other
/// therefore always share a cluster. Centroids are sorted by real part (with
/// real parts within tol/2 chained together), then imaginary part.
GreensSignature greens_signature(const Eigen::MatrixXcd& u, double t, double tol);

struct SignatureComparison {
  bool distinguished = false;
  bool structure_mismatch = false;  // cluster counts or multiplicities differ
  double max_deviation = 0.0;       // over the value lists expanded by multiplicity
};

/// Position-wise comparison of two signatures of the same dimension. With
/// `set_only`, multiplicities are ignored and only the centroids compared.
SignatureComparison compare_signatures(const GreensSignature& a, const GreensSignature& b, double tol,
                                       bool set_only = false);

/// Compares at `tol`; a difference is confirmed only if it persists when both
/// sides are re-clustered at 10 * tol. The returned deviation is the one at tol.
SignatureComparison compare_green_values(const Eigen::MatrixXcd& ua, const Eigen::MatrixXcd& ub, double t,
                                         double tol, bool set_only = false);

/// Replaces each entry z by the representative of {z, -z} with positive real
/// part (imaginary part when |Re z| <= tol/2). Antisymmetric basis states are
/// only defined up to sign, so only this quotient is invariant under relabeling.
Eigen::MatrixXcd fold_signs(const Eigen::MatrixXcd& u, double tol);

/// x_R, m_R and the constancy residual of `u` on every relation of `basis`.
std::vector<RelationTerm> relation_decomposition(const Eigen::MatrixXcd& u, const cellular::CellularBasis& basis);

}  // namespace walkdist::walk
