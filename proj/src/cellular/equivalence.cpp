#include "walkdist/cellular/equivalence.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace walkdist::cellular {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::not_equivalent: return "not-equivalent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

CertificateCheck verify_weak_isomorphism(const RelationBijection& bij, bool match_seeds) {
  auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
  if (!bij.source || !bij.target) return fail("missing basis");
  const auto& a = *bij.source;
  const auto& b = *bij.target;
  const std::size_t m = a.relation_count();
  if (b.relation_count() != m) return fail("relation counts differ");
  if (bij.map.size() != m) return fail("map length differs from relation count");
  std::vector<char> hit(m, 0);
  for (auto x : bij.map) {
    if (x >= m || hit[x]) return fail("map is not a bijection");
    hit[x] = 1;
  }
  for (std::uint32_t r = 0; r < m; ++r) {
    const auto x = bij.map[r];
    const auto& ia = a.info(r);
    const auto& ib = b.info(x);
    const auto tag = " at relation " + std::to_string(r);
    if (ia.diagonal != ib.diagonal) return fail("diagonal status not preserved" + tag);
    if (bij.map[a.adjoint(r)] != b.adjoint(x)) return fail("adjoint not preserved" + tag);
    if (ia.size != ib.size) return fail("support size m_R not preserved" + tag);
    if (trace_of(a, r) != trace_of(b, x)) return fail("trace not preserved" + tag);
    if (match_seeds && a.seed_key(r) != b.seed_key(x)) return fail("seed values not preserved" + tag);
  }
  if (a.structure().size() != b.structure().size()) return fail("structure tensors differ in support");
  for (const auto& e : a.structure()) {
    if (b.structure_constant(bij.map[e.t], bij.map[e.r], bij.map[e.s]) != e.value)
      return fail("structure constant p[" + std::to_string(e.t) + "][" + std::to_string(e.r) + "][" +
                  std::to_string(e.s) + "] not preserved");
  }
  // Induced cell map: cells are the diagonal relations.
  for (std::size_t x = 0; x < a.diag_ids().size(); ++x) {
    const auto image = bij.map[a.diag_ids()[x]];
    auto it = std::find(b.diag_ids().begin(), b.diag_ids().end(), image);
    if (it == b.diag_ids().end()) return fail("cell maps outside the diagonal");
    if (b.cells()[static_cast<std::size_t>(it - b.diag_ids().begin())].size() != a.cells()[x].size())
      return fail("cell sizes not preserved");
  }
  return {};
}

EquivalenceResult equivalence_of_closures(const std::vector<IntMatrix>& seeds_a,
                                          const std::vector<IntMatrix>& seeds_b,
                                          const RefineOptions& options) {
  EquivalenceResult result;
  if (seeds_a.empty() || seeds_b.empty() || seeds_a[0].size() != seeds_b[0].size()) {
    result.detail = "point counts differ";
    return result;
  }
  std::vector<std::vector<IntMatrix>> sets{seeds_a, seeds_b};
  JointClosure joint;
  try {
    joint = joint_closure(sets, options, true);
  } catch (const TimeoutError&) {
    result.verdict = Verdict::inconclusive;
    result.detail = "refinement timed out";
    return result;
  }
  result.rounds = joint.rounds;
  if (!joint.histograms_agree) {
    result.detail = "colour histograms diverge after " + std::to_string(joint.rounds) + " rounds";
    return result;
  }
  RelationBijection bij;
  bij.source = std::make_shared<const CellularBasis>(std::move(joint.bases[0]));
  bij.target = std::make_shared<const CellularBasis>(std::move(joint.bases[1]));
  bij.map.resize(bij.source->relation_count());
  std::iota(bij.map.begin(), bij.map.end(), 0u);
  if (bij.target->relation_count() != bij.map.size()) {
    result.detail = "relation counts differ";
    return result;
  }
  if (auto check = verify_weak_isomorphism(bij, true); !check) {
    result.detail = check.failure;
    return result;
  }
  result.verdict = Verdict::equivalent;
  result.certificate = std::move(bij);
  return result;
}

namespace {

struct DenseTensor {
  std::size_t m = 0;
  std::vector<std::int32_t> values;
  explicit DenseTensor(const CellularBasis& b) : m(b.relation_count()), values(m * m * m, 0) {
    for (const auto& e : b.structure()) values[(e.t * m + e.r) * m + e.s] = static_cast<std::int32_t>(e.value);
  }
  std::int32_t operator()(std::size_t t, std::size_t r, std::size_t s) const { return values[(t * m + r) * m + s]; }
};

std::vector<std::int64_t> fingerprint(const CellularBasis& b, std::uint32_t r, bool match_seeds) {
  const auto& info = b.info(r);
  std::vector<std::int64_t> fp{info.diagonal ? 1 : 0, static_cast<std::int64_t>(info.size), trace_of(b, r),
                               b.adjoint(r) == r ? 1 : 0};
  std::vector<std::int64_t> as_target, as_factor;
  for (const auto& e : b.structure()) {
    if (e.t == r) as_target.push_back(e.value);
    if (e.r == r) as_factor.push_back(e.value);
  }
  std::sort(as_target.begin(), as_target.end());
  std::sort(as_factor.begin(), as_factor.end());
  fp.push_back(-1);
  fp.insert(fp.end(), as_target.begin(), as_target.end());
  fp.push_back(-2);
  fp.insert(fp.end(), as_factor.begin(), as_factor.end());
  if (match_seeds) {
    fp.push_back(-3);
    const auto& key = b.seed_key(r);
    fp.insert(fp.end(), key.begin(), key.end());
  }
  return fp;
}

class BijectionSearch {
 public:
  BijectionSearch(const CellularBasis& a, const CellularBasis& b, bool match_seeds, const Deadline& deadline)
      : a_(a), b_(b), ta_(a), tb_(b), deadline_(deadline), m_(a.relation_count()) {
    // Candidate classes: fingerprints refined jointly through the structure
    // constants until the class count of both algebras stops growing.
    std::vector<std::uint32_t> ca(m_), cb(m_);
    {
      std::map<std::vector<std::int64_t>, std::uint32_t> dict;
      std::vector<std::vector<std::int64_t>> fa(m_), fb(m_);
      for (std::uint32_t r = 0; r < m_; ++r) {
        fa[r] = fingerprint(a, r, match_seeds);
        fb[r] = fingerprint(b, r, match_seeds);
        dict.emplace(fa[r], 0);
        dict.emplace(fb[r], 0);
      }
      rank(dict);
      for (std::uint32_t r = 0; r < m_; ++r) {
        ca[r] = dict.at(fa[r]);
        cb[r] = dict.at(fb[r]);
      }
    }
    for (std::size_t classes = count(ca, cb);;) {
      std::map<std::vector<std::int64_t>, std::uint32_t> dict;
      std::vector<std::vector<std::int64_t>> ka(m_), kb(m_);
      for (std::uint32_t r = 0; r < m_; ++r) {
        ka[r] = profile(a, ca, r);
        kb[r] = profile(b, cb, r);
        dict.emplace(ka[r], 0);
        dict.emplace(kb[r], 0);
      }
      rank(dict);
      for (std::uint32_t r = 0; r < m_; ++r) {
        ca[r] = dict.at(ka[r]);
        cb[r] = dict.at(kb[r]);
      }
      const auto now = count(ca, cb);
      if (now == classes) break;
      classes = now;
    }
    domains_.resize(m_);
    for (std::uint32_t r = 0; r < m_; ++r)
      for (std::uint32_t x = 0; x < m_; ++x)
        if (cb[x] == ca[r]) domains_[r].push_back(x);
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(),
                     [this](auto l, auto r) { return domains_[l].size() < domains_[r].size(); });
    map_.assign(m_, kUnset);
    used_.assign(m_, 0);
  }

  std::optional<std::vector<std::uint32_t>> run() {
    for (const auto& d : domains_)
      if (d.empty()) return std::nullopt;
    if (assign(0)) return map_;
    return std::nullopt;
  }

 private:
  static constexpr std::uint32_t kUnset = UINT32_MAX;

  static void rank(std::map<std::vector<std::int64_t>, std::uint32_t>& dict) {
    std::uint32_t next = 0;
    for (auto& entry : dict) entry.second = next++;
  }

  static std::size_t count(const std::vector<std::uint32_t>& ca, const std::vector<std::uint32_t>& cb) {
    auto all = ca;
    all.insert(all.end(), cb.begin(), cb.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  }

  // Class of r followed by the sorted class-labelled structure constants in
  // which r occurs as product, left factor and right factor.
  static std::vector<std::int64_t> profile(const CellularBasis& basis, const std::vector<std::uint32_t>& cls,
                                           std::uint32_t r) {
    std::vector<std::array<std::int64_t, 4>> terms;
    for (const auto& e : basis.structure()) {
      if (e.t == r) terms.push_back({0, cls[e.r], cls[e.s], e.value});
      if (e.r == r) terms.push_back({1, cls[e.t], cls[e.s], e.value});
      if (e.s == r) terms.push_back({2, cls[e.t], cls[e.r], e.value});
    }
    std::sort(terms.begin(), terms.end());
    std::vector<std::int64_t> key{cls[r]};
    for (const auto& t : terms) key.insert(key.end(), t.begin(), t.end());
    return key;
  }

  bool consistent(std::uint32_t r) const {
    const auto x = map_[r];
    const auto ar = a_.adjoint(r);
    if (map_[ar] != kUnset && map_[ar] != b_.adjoint(x)) return false;
    for (std::uint32_t p = 0; p < m_; ++p) {
      if (map_[p] == kUnset) continue;
      for (std::uint32_t q = 0; q < m_; ++q) {
        if (map_[q] == kUnset) continue;
        const auto mp = map_[p], mq = map_[q];
        if (ta_(r, p, q) != tb_(x, mp, mq)) return false;
        if (ta_(p, r, q) != tb_(mp, x, mq)) return false;
        if (ta_(p, q, r) != tb_(mp, mq, x)) return false;
      }
    }
    return true;
  }

  bool assign(std::size_t depth) {
    if (depth == m_) return true;
    deadline_.check();
    const auto r = order_[depth];
    for (auto x : domains_[r]) {
      if (used_[x]) continue;
      map_[r] = x;
      used_[x] = 1;
      if (consistent(r) && assign(depth + 1)) return true;
      used_[x] = 0;
      map_[r] = kUnset;
    }
    return false;
  }

  const CellularBasis& a_;
  const CellularBasis& b_;
  DenseTensor ta_, tb_;
  const Deadline& deadline_;
  std::size_t m_;
  std::vector<std::vector<std::uint32_t>> domains_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> map_;
  std::vector<char> used_;
};

}  // namespace

std::optional<RelationBijection> search_weak_isomorphism(std::shared_ptr<const CellularBasis> a,
                                                         std::shared_ptr<const CellularBasis> b,
                                                         bool match_seeds, const Deadline& deadline,
                                                         std::size_t max_relations) {
  if (a->relation_count() != b->relation_count() || a->point_count() != b->point_count()) return std::nullopt;
  if (a->relation_count() > max_relations)
    throw RefusedError(a->relation_count(), max_relations, "backtracking weak isomorphism search refused");
  BijectionSearch search(*a, *b, match_seeds, deadline);
  auto found = search.run();
  if (!found) return std::nullopt;
  RelationBijection bij{std::move(a), std::move(b), std::move(*found)};
  if (!verify_weak_isomorphism(bij, match_seeds))
    throw ConsistencyError("backtracking search produced an invalid weak isomorphism");
  return bij;
}

std::optional<RelationBijection> weak_equivalence(const graph::Graph& g, const graph::Graph& h,
                                                  SearchMethod method, const RefineOptions& options) {
  if (g.order() != h.order()) return std::nullopt;
  std::vector<IntMatrix> sg{g.int_adjacency()}, sh{h.int_adjacency()};
  if (method == SearchMethod::canonical) return equivalence_of_closures(sg, sh, options).certificate;
  auto a = std::make_shared<const CellularBasis>(cellular_closure(sg, g.order(), options));
  auto b = std::make_shared<const CellularBasis>(cellular_closure(sh, h.order(), options));
  return search_weak_isomorphism(std::move(a), std::move(b), true, options.deadline);
}

EquivalenceResult k_equivalence_evidence(const graph::Graph& g, const graph::Graph& h, int k,
                                         const KEquivalenceOptions& options) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  EquivalenceResult result;
  if (g.order() != h.order()) {
    result.detail = "orders differ";
    return result;
  }
  require_within_cap(g.order(), k, options.cap, "k-equivalence refused");
  RefineOptions refine{options.threads, Deadline::after_ms(options.timeout_ms)};

  auto base = equivalence_of_closures({g.int_adjacency()}, {h.int_adjacency()}, refine);
  if (base.verdict != Verdict::equivalent) {
    base.detail = "no 1-equivalence: " + base.detail;
    return base;
  }
  if (k == 1) {
    base.base = base.certificate;
    return base;
  }

  std::vector<IntMatrix> seeds_g, seeds_h;
  try {
    seeds_g = k_extension_seeds(*base.certificate->source, k);
    seeds_h = k_extension_seeds(*base.certificate->target, k);
  } catch (const TimeoutError&) {
    result.verdict = Verdict::inconclusive;
    return result;
  }
  result = equivalence_of_closures(seeds_g, seeds_h, refine);
  result.base = std::move(base.certificate);
  if (result.verdict == Verdict::not_equivalent)
    result.detail = "1-equivalent, but the " + std::to_string(k) + "-extensions differ: " + result.detail;
  return result;
}

}  // namespace walkdist::cellular
