#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "walkdist/cellular/bit_matrix.hpp"
#include "walkdist/cellular/coloring.hpp"
#include "walkdist/common.hpp"

namespace walkdist::cellular {

/// A basis relation materialised as a 0-1 matrix.
struct Relation {
  std::uint32_t id = 0;
  BitMatrix matrix;

  std::size_t dim() const noexcept { return matrix.dim(); }
};

struct StructureEntry {
  std::uint32_t t, r, s;
  std::int64_t value;

  friend bool operator==(const StructureEntry&, const StructureEntry&) = default;
  friend auto operator<=>(const StructureEntry&, const StructureEntry&) = default;
};

struct RelationInfo {
  std::size_t size = 0;  // support size, m_R = tr(R R^T)
  bool diagonal = false;
  std::uint32_t adjoint = 0;
  std::uint32_t seed_color = 0;  // initial colour this relation refines
  std::size_t rep_row = 0, rep_col = 0;
};

/// Basis of a cellular algebra given by a stable pair colouring. Relation ids
/// are the canonical colour ids, so equal ids across two bases computed from
/// matching seeds denote corresponding relations.
class CellularBasis {
 public:
  CellularBasis(PairColoring stable, std::vector<std::vector<std::int64_t>> seed_keys,
                const PairColoring& initial);

  std::size_t point_count() const noexcept { return coloring_.points; }
  std::size_t relation_count() const noexcept { return info_.size(); }
  const PairColoring& coloring() const noexcept { return coloring_; }
  std::uint32_t relation_of(std::size_t u, std::size_t v) const { return coloring_.at(u, v); }
  const RelationInfo& info(std::uint32_t r) const { return info_.at(r); }

  Relation relation(std::uint32_t r) const;
  std::vector<Relation> relations() const;

  const std::vector<std::uint32_t>& diag_ids() const noexcept { return diag_ids_; }
  /// cells()[i] is the vertex set of relation diag_ids()[i], sorted.
  const std::vector<std::vector<std::size_t>>& cells() const noexcept { return cells_; }
  std::uint32_t adjoint(std::uint32_t r) const { return info_.at(r).adjoint; }

  /// Sparse structure constants p[t][r][s], sorted by (t, r, s), computed from
  /// one representative pair per relation.
  const std::vector<StructureEntry>& structure() const noexcept { return structure_; }
  std::int64_t structure_constant(std::uint32_t t, std::uint32_t r, std::uint32_t s) const;

  /// Value of seed `seed` on the support of relation r.
  std::int64_t seed_value(std::uint32_t r, std::size_t seed) const;
  std::size_t seed_count() const noexcept;
  const std::vector<std::int64_t>& seed_key(std::uint32_t r) const;

 private:
  PairColoring coloring_;
  std::vector<std::vector<std::int64_t>> seed_keys_;  // per initial colour id
  std::vector<RelationInfo> info_;
  std::vector<std::uint32_t> diag_ids_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<StructureEntry> structure_;
};

/// Smallest cellular algebra containing the seeds, I and J. Every seed is a
/// sum of the returned relations weighted by its values.
CellularBasis cellular_closure(std::span<const IntMatrix> seeds, std::size_t points,
                               const RefineOptions& options = {});

/// Closures of several seed lists refined in lockstep with a shared
/// dictionary, so ids are comparable. With `stop_on_divergence`, refinement
/// stops once the histograms split and `bases` is left empty. Throws
/// TimeoutError when the deadline passes.
struct JointClosure {
  std::vector<CellularBasis> bases;
  bool histograms_agree = true;
  std::size_t rounds = 0;
};
JointClosure joint_closure(std::span<const std::vector<IntMatrix>> seed_sets,
                           const RefineOptions& options = {}, bool stop_on_divergence = true);

/// Full check that R_r R_s = sum_t p[t][r][s] R_t holds entrywise for every
/// pair of points; throws ConsistencyError on the first failure. Returns the
/// (verified) sparse tensor.
std::vector<StructureEntry> structure_constants(const CellularBasis& basis);

/// q_R(X): the constant value of R o I_X for basis relation r and cell index
/// `cell` (an index into cells()).
std::int64_t cell_value(const CellularBasis& basis, std::uint32_t r, std::size_t cell);

/// Trace of a basis relation, computed as sum over cells of q_R(X) |X|.
std::int64_t trace_of(const CellularBasis& basis, std::uint32_t r);

/// Trace of the algebra element sum_r coeff[r] R_r.
std::int64_t trace_of(const CellularBasis& basis, std::span<const std::int64_t> coefficients);

/// True iff m is a sum of basis relations (m is constant on every support).
bool is_member(const CellularBasis& basis, const BitMatrix& m);

/// Relation ids summing to the 0-1 matrix m; nullopt when m is not a member.
std::optional<std::vector<std::uint32_t>> decompose(const CellularBasis& basis, const BitMatrix& m);

/// I, J, transposition-closure and disjointness checks; throws ConsistencyError.
void check_basis_invariants(const CellularBasis& basis);

}  // namespace walkdist::cellular
