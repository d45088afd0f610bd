#include "walkdist/cellular/basis.hpp"

#include <algorithm>
#include <map>

namespace walkdist::cellular {

namespace {

// Renumbers colours to 0..used-1 preserving their order.
PairColoring compact(PairColoring c) {
  std::vector<std::uint32_t> remap(c.palette, UINT32_MAX);
  for (auto x : c.colors) remap[x] = 0;
  std::uint32_t next = 0;
  for (auto& r : remap)
    if (r == 0) r = next++;
  for (auto& x : c.colors) x = remap[x];
  c.palette = next;
  return c;
}

}  // namespace

CellularBasis::CellularBasis(PairColoring stable, std::vector<std::vector<std::int64_t>> seed_keys,
                             const PairColoring& initial)
    : coloring_(compact(std::move(stable))), seed_keys_(std::move(seed_keys)) {
  const std::size_t n = coloring_.points;
  if (initial.points != n) throw ArgumentError("initial colouring has a different point count");
  info_.assign(coloring_.palette, RelationInfo{});
  std::vector<char> seen(coloring_.palette, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto r = coloring_.at(u, v);
      auto& info = info_[r];
      ++info.size;
      if (!seen[r]) {
        seen[r] = 1;
        info.diagonal = (u == v);
        info.adjoint = coloring_.at(v, u);
        info.seed_color = initial.at(u, v);
        info.rep_row = u;
        info.rep_col = v;
      }
    }
  }

  for (std::uint32_t r = 0; r < info_.size(); ++r)
    if (info_[r].diagonal) diag_ids_.push_back(r);
  cells_.resize(diag_ids_.size());
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = coloring_.at(v, v);
    auto it = std::lower_bound(diag_ids_.begin(), diag_ids_.end(), r);
    cells_[static_cast<std::size_t>(it - diag_ids_.begin())].push_back(v);
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> local;
  for (std::uint32_t t = 0; t < info_.size(); ++t) {
    local.clear();
    const std::size_t u = info_[t].rep_row, v = info_[t].rep_col;
    for (std::size_t w = 0; w < n; ++w) ++local[{coloring_.at(u, w), coloring_.at(w, v)}];
    for (const auto& [rs, value] : local) structure_.push_back({t, rs.first, rs.second, value});
  }
}

Relation CellularBasis::relation(std::uint32_t r) const {
  if (r >= info_.size()) throw ArgumentError("relation index out of range");
  const std::size_t n = coloring_.points;
  Relation rel{r, BitMatrix(n)};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (coloring_.at(u, v) == r) rel.matrix.set(u, v);
  return rel;
}

std::vector<Relation> CellularBasis::relations() const {
  std::vector<Relation> out;
  for (std::uint32_t r = 0; r < info_.size(); ++r) out.push_back(relation(r));
  return out;
}

std::int64_t CellularBasis::structure_constant(std::uint32_t t, std::uint32_t r, std::uint32_t s) const {
  const StructureEntry probe{t, r, s, 0};
  auto it = std::lower_bound(structure_.begin(), structure_.end(), probe,
                             [](const StructureEntry& a, const StructureEntry& b) {
                               return std::tie(a.t, a.r, a.s) < std::tie(b.t, b.r, b.s);
                             });
  if (it != structure_.end() && it->t == t && it->r == r && it->s == s) return it->value;
  return 0;
}

const std::vector<std::int64_t>& CellularBasis::seed_key(std::uint32_t r) const {
  return seed_keys_.at(info_.at(r).seed_color);
}

std::size_t CellularBasis::seed_count() const noexcept {
  return seed_keys_.empty() ? 0 : (seed_keys_.front().size() - 1) / 2;
}

std::int64_t CellularBasis::seed_value(std::uint32_t r, std::size_t seed) const {
  if (seed >= seed_count()) throw ArgumentError("seed index out of range");
  return seed_key(r)[1 + 2 * seed];
}

CellularBasis cellular_closure(std::span<const IntMatrix> seeds, std::size_t points,
                               const RefineOptions& options) {
  std::vector<IntMatrix> list(seeds.begin(), seeds.end());
  if (list.empty()) {
    if (points == 0) throw ArgumentError("closure needs at least one point");
    list.emplace_back(points, 0);
  }
  for (const auto& s : list)
    if (s.size() != points) throw ArgumentError("seed dimension does not match point count");
  std::vector<std::vector<IntMatrix>> sets{std::move(list)};
  auto joint = joint_closure(sets, options, false);
  return std::move(joint.bases.front());
}

JointClosure joint_closure(std::span<const std::vector<IntMatrix>> seed_sets, const RefineOptions& options,
                           bool stop_on_divergence) {
  auto init = initial_colorings_with_keys(seed_sets);
  auto stable = stabilize_jointly(init.colorings, options, stop_on_divergence);
  JointClosure out;
  out.histograms_agree = stable.histograms_agree;
  out.rounds = stable.rounds;
  if (stop_on_divergence && !stable.histograms_agree) return out;
  for (std::size_t g = 0; g < stable.colorings.size(); ++g)
    out.bases.emplace_back(std::move(stable.colorings[g]), init.keys, init.colorings[g]);
  return out;
}

std::vector<StructureEntry> structure_constants(const CellularBasis& basis) {
  const std::size_t n = basis.point_count();
  std::vector<std::size_t> row_terms(basis.relation_count(), 0);
  for (const auto& e : basis.structure()) ++row_terms[e.t];
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> local;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      local.clear();
      for (std::size_t w = 0; w < n; ++w) ++local[{basis.relation_of(u, w), basis.relation_of(w, v)}];
      const auto t = basis.relation_of(u, v);
      for (const auto& [rs, value] : local) {
        if (basis.structure_constant(t, rs.first, rs.second) != value)
          throw ConsistencyError("product R_" + std::to_string(rs.first) + " R_" +
                                 std::to_string(rs.second) + " is not constant on relation " +
                                 std::to_string(t));
      }
      if (row_terms[t] != local.size())
        throw ConsistencyError("structure row of relation " + std::to_string(t) + " has extra terms");
    }
  }
  return basis.structure();
}

std::int64_t cell_value(const CellularBasis& basis, std::uint32_t r, std::size_t cell) {
  if (cell >= basis.diag_ids().size()) throw ArgumentError("cell index out of range");
  if (r >= basis.relation_count()) throw ArgumentError("relation index out of range");
  return basis.diag_ids()[cell] == r ? 1 : 0;
}

std::int64_t trace_of(const CellularBasis& basis, std::uint32_t r) {
  std::int64_t trace = 0;
  for (std::size_t x = 0; x < basis.cells().size(); ++x)
    trace += cell_value(basis, r, x) * static_cast<std::int64_t>(basis.cells()[x].size());
  return trace;
}

std::int64_t trace_of(const CellularBasis& basis, std::span<const std::int64_t> coefficients) {
  if (coefficients.size() != basis.relation_count())
    throw ArgumentError("coefficient vector length does not match relation count");
  std::int64_t trace = 0;
  for (std::size_t x = 0; x < basis.cells().size(); ++x)
    trace += coefficients[basis.diag_ids()[x]] * static_cast<std::int64_t>(basis.cells()[x].size());
  return trace;
}

std::optional<std::vector<std::uint32_t>> decompose(const CellularBasis& basis, const BitMatrix& m) {
  const std::size_t n = basis.point_count();
  if (m.dim() != n) throw ArgumentError("matrix dimension does not match basis");
  std::vector<std::int8_t> value(basis.relation_count(), -1);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      auto& slot = value[basis.relation_of(u, v)];
      const std::int8_t x = m.get(u, v) ? 1 : 0;
      if (slot == -1) slot = x;
      else if (slot != x) return std::nullopt;
    }
  std::vector<std::uint32_t> ids;
  for (std::uint32_t r = 0; r < value.size(); ++r)
    if (value[r] == 1) ids.push_back(r);
  return ids;
}

bool is_member(const CellularBasis& basis, const BitMatrix& m) {
  const std::size_t n = basis.point_count();
  if (m.dim() != n) throw ArgumentError("matrix dimension does not match basis");
  return decompose(basis, m).has_value();
}

void check_basis_invariants(const CellularBasis& basis) {
  const std::size_t n = basis.point_count();
  std::size_t total = 0;
  for (std::uint32_t r = 0; r < basis.relation_count(); ++r) {
    const auto& info = basis.info(r);
    if (info.size == 0) throw ConsistencyError("empty relation " + std::to_string(r));
    total += info.size;
    const auto adj = basis.adjoint(r);
    if (adj >= basis.relation_count() || basis.adjoint(adj) != r)
      throw ConsistencyError("adjoint is not an involution at relation " + std::to_string(r));
  }
  if (total != n * n) throw ConsistencyError("relations do not sum to J");
  std::size_t diag_total = 0;
  for (const auto& cell : basis.cells()) diag_total += cell.size();
  if (diag_total != n) throw ConsistencyError("diagonal relations do not sum to I");
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const auto r = basis.relation_of(u, v);
      if (basis.info(r).diagonal != (u == v))
        throw ConsistencyError("relation " + std::to_string(r) + " mixes diagonal and off-diagonal pairs");
      if (basis.relation_of(v, u) != basis.adjoint(r))
        throw ConsistencyError("transpose of relation " + std::to_string(r) + " is not a basis relation");
    }
}

}  // namespace walkdist::cellular
