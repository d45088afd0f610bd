#include "walkdist/walk/compare.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "walkdist/walk/propagator.hpp"

namespace walkdist::walk {

const char* to_string(WalkModel::Particles p) {
  switch (p) {
    case WalkModel::Particles::single: return "single";
    case WalkModel::Particles::boson: return "boson";
    case WalkModel::Particles::fermion: return "fermion";
  }
  return "unknown";
}

std::string WalkModel::describe() const {
  std::string s = to_string(particles);
  if (particles == Particles::boson) s += ":" + std::to_string(k) + ":" + walk::to_string(space);
  if (interaction.kind != Interaction::Kind::none) s += ":" + interaction.describe();
  return s;
}

Hamiltonian build_hamiltonian(const graph::Graph& g, const WalkModel& model, std::size_t cap) {
  switch (model.particles) {
    case WalkModel::Particles::single:
      if (g.order() > cap) throw RefusedError(g.order(), cap, "single-particle Hamiltonian refused");
      return hamiltonian_single(g);
    case WalkModel::Particles::boson:
      return hamiltonian_kboson(g, model.k, model.interaction, model.space, cap);
    case WalkModel::Particles::fermion: {
      if (model.interaction.kind != Interaction::Kind::none)
        throw ArgumentError("the fermionic walk is non-interacting");
      const auto dim = binomial(g.order(), 2);
      if (dim > cap) throw RefusedError(dim, cap, "two-fermion Hamiltonian refused");
      return hamiltonian_2fermion(g);
    }
  }
  throw ArgumentError("unknown particle model");
}

namespace {

void validate(const WalkOptions& options) {
  if (options.times.empty()) throw ArgumentError("at least one time sample is required");
  for (double t : options.times)
    if (!std::isfinite(t)) throw ArgumentError("time samples must be finite");
  if (!(options.tol > 0.0) || !std::isfinite(options.tol)) throw ArgumentError("tolerance must be positive");
}

// Runs fn(i) for i in [0, count) on up to `threads` workers; rethrows the first failure.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(thread_count(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

WalkComparison compare_walks(const graph::Graph& g, const graph::Graph& h, const WalkModel& model,
                             const WalkOptions& options) {
  validate(options);
  WalkComparison result;
  if (g.order() != h.order()) {
    result.distinguished = true;
    result.detail = "orders differ";
    return result;
  }
  const Propagator pg(build_hamiltonian(g, model, options.cap).matrix);
  const Propagator ph(build_hamiltonian(h, model, options.cap).matrix);
  result.samples.resize(options.times.size());
  parallel_for(options.times.size(), options.threads, [&](std::size_t i) {
    const double t = options.times[i];
    auto ug = pg.unitary(t);
    auto uh = ph.unitary(t);
    auto& sample = result.samples[i];
    sample.time = t;
    sample.unitarity_g = unitarity_defect(ug);
    sample.unitarity_h = unitarity_defect(uh);
    if (model.particles == WalkModel::Particles::fermion) {
      ug = fold_signs(ug, options.tol);
      uh = fold_signs(uh, options.tol);
    }
    sample.comparison = compare_green_values(ug, uh, t, options.tol, options.set_only);
    if (options.keep_signatures) {
      sample.signature_g = greens_signature(ug, t, options.tol);
      sample.signature_h = greens_signature(uh, t, options.tol);
    }
  });
  for (const auto& s : result.samples) {
    result.max_deviation = std::max(result.max_deviation, s.comparison.max_deviation);
    if (s.comparison.distinguished && !result.distinguished) {
      result.distinguished = true;
      result.witness_time = s.time;
    }
  }
  return result;
}

std::pair<IntMatrix, IntMatrix> value_levels(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) throw ArgumentError("level matrices must be square");
  std::map<double, std::int64_t> levels;
  for (Eigen::Index i = 0; i < a.size(); ++i) levels.emplace(a.data()[i], 0);
  for (Eigen::Index i = 0; i < b.size(); ++i) levels.emplace(b.data()[i], 0);
  std::int64_t next = 0;
  for (auto& [value, id] : levels) id = next++;
  auto convert = [&](const Eigen::MatrixXd& m) {
    IntMatrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = levels.at(m(i, j));
    return out;
  };
  return {convert(a), convert(b)};
}

WalkCertificate certify_walks(const graph::Graph& g, const graph::Graph& h, const WalkModel& model,
                              const WalkOptions& options, long long timeout_ms) {
  validate(options);
  WalkCertificate cert;
  if (g.order() != h.order()) {
    cert.detail = "no certificate; theorem not applicable (orders differ)";
    return cert;
  }
  const auto hg = build_hamiltonian(g, model, options.cap);
  const auto hh = build_hamiltonian(h, model, options.cap);
  auto [lg, lh] = value_levels(hg.matrix, hh.matrix);
  cellular::RefineOptions refine{options.threads, Deadline::after_ms(timeout_ms)};
  cert.equivalence = cellular::equivalence_of_closures({lg}, {lh}, refine);
  if (cert.equivalence.verdict != cellular::Verdict::equivalent) {
    cert.detail = cert.equivalence.verdict == cellular::Verdict::inconclusive
                      ? "no certificate within the time budget; theorem not applicable"
                      : "no certificate; theorem not applicable";
    return cert;
  }
  const auto& bij = *cert.equivalence.certificate;
  const Propagator pg(hg.matrix), ph(hh.matrix);
  cert.pass = true;
  for (double t : options.times) {
    const auto dg = relation_decomposition(pg.unitary(t), *bij.source);
    const auto dh = relation_decomposition(ph.unitary(t), *bij.target);
    CertifiedTime ct;
    ct.time = t;
    for (std::uint32_t r = 0; r < dg.size(); ++r) {
      const auto& a = dg[r];
      const auto& b = dh[bij.map[r]];
      ct.terms.push_back({r, bij.map[r], a.x, b.x, a.m, b.m, a.residual, b.residual});
      ct.max_difference = std::max(ct.max_difference, std::abs(a.x - b.x));
      ct.max_residual = std::max({ct.max_residual, a.residual, b.residual});
      ct.multiplicities_agree = ct.multiplicities_agree && a.m == b.m;
    }
    cert.pass = cert.pass && ct.multiplicities_agree && ct.max_difference <= options.tol &&
                ct.max_residual <= options.tol;
    cert.times.push_back(std::move(ct));
  }
  cert.detail = cert.pass ? "matched relations agree" : "matched relations disagree beyond tolerance";
  return cert;
}

}  // namespace walkdist::walk
