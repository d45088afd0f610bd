#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "walkdist/cellular/basis.hpp"
#include "walkdist/cellular/extension.hpp"
#include "walkdist/graph/graph.hpp"

namespace walkdist::cellular {

/// Bijection between the basis relations of two cellular algebras.
struct RelationBijection {
  std::shared_ptr<const CellularBasis> source;
  std::shared_ptr<const CellularBasis> target;
  std::vector<std::uint32_t> map;  // source relation id -> target relation id
};

struct CertificateCheck {
  bool ok = true;
  std::string failure;  // first violated property, empty when ok

  explicit operator bool() const noexcept { return ok; }
};

/// Checks that `bij` is a weak isomorphism: it is a bijection preserving
/// diagonal status, adjoints and every structure constant. Also asserts the
/// consequences that must then hold: cell sizes and traces agree, and so do
/// support sizes. With `match_seeds`, every relation must carry the same seed
/// values as its image.
CertificateCheck verify_weak_isomorphism(const RelationBijection& bij, bool match_seeds);

enum class Verdict { equivalent, not_equivalent, inconclusive };

const char* to_string(Verdict v);

struct EquivalenceResult {
  Verdict verdict = Verdict::not_equivalent;
  std::optional<RelationBijection> certificate;
  /// The underlying 1-equivalence of [G] and [H] (k-equivalence only).
  std::optional<RelationBijection> base;
  std::size_t rounds = 0;
  std::string detail;
};

/// Weak isomorphism between [seeds_a] and [seeds_b] that maps each seed's
/// level sets to the same-valued level sets of its partner. Both closures are
/// refined in lockstep; since the seeds determine the algebra, the canonical
/// colour ids yield the only candidate, which is then verified.
EquivalenceResult equivalence_of_closures(const std::vector<IntMatrix>& seeds_a,
                                          const std::vector<IntMatrix>& seeds_b,
                                          const RefineOptions& options = {});

enum class SearchMethod { canonical, backtracking };

/// Certificate that G and H are (1-)equivalent: a weak isomorphism [G] -> [H]
/// mapping A to A'. `backtracking` computes both closures independently and
/// searches over fingerprint-compatible bijections instead.
std::optional<RelationBijection> weak_equivalence(const graph::Graph& g, const graph::Graph& h,
                                                  SearchMethod method = SearchMethod::canonical,
                                                  const RefineOptions& options = {});

/// Exhaustive backtracking search for a weak isomorphism a -> b. Candidates
/// for each relation are restricted by diagonal status, support size, trace,
/// structure row profile and (optionally) seed values. Refuses bases with more
/// than `max_relations` relations.
std::optional<RelationBijection> search_weak_isomorphism(std::shared_ptr<const CellularBasis> a,
                                                         std::shared_ptr<const CellularBasis> b,
                                                         bool match_seeds, const Deadline& deadline = {},
                                                         std::size_t max_relations = 160);

struct KEquivalenceOptions {
  std::size_t cap = kDefaultSizeCap;
  long long timeout_ms = 0;  // 0: unlimited
  int threads = 0;
};

/// Evidence of k-equivalence: a weak isomorphism of the k-extensions that
/// agrees with phi^k on the tensor generators (phi the 1-equivalence) and
/// fixes every centralizer relation. Timeouts give `inconclusive`.
EquivalenceResult k_equivalence_evidence(const graph::Graph& g, const graph::Graph& h, int k,
                                         const KEquivalenceOptions& options = {});

}  // namespace walkdist::cellular
