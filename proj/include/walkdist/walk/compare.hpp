#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walkdist/cellular/equivalence.hpp"
#include "walkdist/walk/hamiltonian.hpp"
#include "walkdist/walk/signature.hpp"

namespace walkdist::walk {

struct WalkModel {
  enum class Particles { single, boson, fermion };
  Particles particles = Particles::boson;
  int k = 2;  // boson count; single is 1 and fermion is 2
  Interaction interaction;
  Space space = Space::full;

  static WalkModel single() { return {Particles::single, 1, {}, Space::full}; }
  static WalkModel bosons(int k, Interaction i = {}, Space s = Space::full) { return {Particles::boson, k, std::move(i), s}; }
  static WalkModel fermions() { return {Particles::fermion, 2, {}, Space::antisymmetric}; }

  std::string describe() const;
};

const char* to_string(WalkModel::Particles p);

Hamiltonian build_hamiltonian(const graph::Graph& g, const WalkModel& model, std::size_t cap = kDefaultSizeCap);

inline const std::vector<double> kDefaultTimes{0.5, 1.0, 2.0, 3.14159265358979323846};
inline constexpr double kDefaultTolerance = 1e-8;

struct WalkOptions {
  std::vector<double> times = kDefaultTimes;
  double tol = kDefaultTolerance;
  bool set_only = false;
  bool keep_signatures = false;
  std::size_t cap = kDefaultSizeCap;
  int threads = 0;
};

struct TimeSample {
  double time = 0.0;
  SignatureComparison comparison;
  double unitarity_g = 0.0;
  double unitarity_h = 0.0;
  std::optional<GreensSignature> signature_g, signature_h;
};

struct WalkComparison {
  bool distinguished = false;
  std::optional<double> witness_time;  // first sampled time that distinguishes
  double max_deviation = 0.0;
  std::vector<TimeSample> samples;
  std::string detail;
};

/// Builds both Hamiltonians, evolves them to every sampled time and compares
/// the Green's function multisets. Times are evaluated concurrently and
/// reported in input order.
WalkComparison compare_walks(const graph::Graph& g, const graph::Graph& h, const WalkModel& model,
                             const WalkOptions& options = {});

/// Integer level matrices with a shared value dictionary: equal real entries
/// (in either matrix) get equal integers.
std::pair<IntMatrix, IntMatrix> value_levels(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct MatchedTerm {
  std::uint32_t relation = 0;
  std::uint32_t image = 0;
  std::complex<double> x, x_image;
  std::size_t m = 0, m_image = 0;
  double residual = 0.0, residual_image = 0.0;
};

struct CertifiedTime {
  double time = 0.0;
  std::vector<MatchedTerm> terms;
  double max_difference = 0.0;  // max |x_R - x'_{phi(R)}|
  double max_residual = 0.0;
  bool multiplicities_agree = true;
};

struct WalkCertificate {
  cellular::EquivalenceResult equivalence;  // of the closures of the two Hamiltonians
  std::vector<CertifiedTime> times;
  bool pass = false;
  std::string detail;
};

/// Certifies equal Green's signatures through the algebra: finds a weak
/// isomorphism [H_G] -> [H_H] mapping H_G to H_H, then checks at each time
/// that U is constant on every relation and matched relations carry equal
/// values and multiplicities, all within `tol`.
WalkCertificate certify_walks(const graph::Graph& g, const graph::Graph& h, const WalkModel& model,
                              const WalkOptions& options = {}, long long timeout_ms = 0);

}  // namespace walkdist::walk
