#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "walkdist/cellular/equivalence.hpp"
#include "walkdist/cellular/extension.hpp"
#include "walkdist/graph/generators.hpp"
#include "walkdist/walk/compare.hpp"
#include "walkdist/walk/propagator.hpp"

using namespace walkdist;
using namespace walkdist::walk;
using graph::Graph;
using std::numbers::pi;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Permutation matrix on V^k induced by the vertex map v -> perm[v].
Eigen::MatrixXd induced_permutation(const std::vector<std::size_t>& perm, int k) {
  const cellular::TupleSpace space(perm.size(), k);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(space.size()), static_cast<Eigen::Index>(space.size()));
  for (std::size_t x = 0; x < space.size(); ++x) {
    auto t = space.decode(x);
    for (auto& v : t) v = perm[v];
    p(static_cast<Eigen::Index>(space.encode(t)), static_cast<Eigen::Index>(x)) = 1.0;
  }
  return p;
}

}  // namespace

TEST_SUITE("walk") {

TEST_CASE("occupation classes") {
  const auto c = occupation_classes(2, 2);
  REQUIRE(c.classes.size() == 2);
  // Tuple index 2x + y: (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3.
  CHECK(c.classes[0].members == std::vector<std::size_t>{0, 3});
  CHECK(c.classes[1].members == std::vector<std::size_t>{1, 2});
  CHECK(occupation_classes(6, 1).classes.size() == 1);
  CHECK(occupation_classes(7, 2).classes[0].members.size() == 7);
  // Partitions of 3 into at most 2 parts: (3), (2,1).
  CHECK(occupation_classes(2, 3).classes.size() == 2);
  CHECK(occupation_classes(4, 3).classes.size() == 3);
  const auto c43 = occupation_classes(4, 3);
  CHECK(c43.classes[0].histogram == std::vector<std::size_t>{3});
  CHECK(c43.classes[1].histogram == std::vector<std::size_t>{2, 1});
  CHECK(c43.classes[2].histogram == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("interaction parsing") {
  CHECK(parse_interaction("none").kind == Interaction::Kind::none);
  CHECK(parse_interaction("hubbard:1.5").u == 1.5);
  CHECK(parse_interaction("onsite:1,2.5").onsite == std::vector<double>{1.0, 2.5});
  CHECK(parse_interaction("hubbard:0.1").describe() == "hubbard:0.1");
  CHECK_THROWS_AS(parse_interaction("hubbard:x"), ArgumentError);
  CHECK_THROWS_AS(parse_interaction("magic:1"), ArgumentError);
  CHECK_THROWS_AS(parse_interaction("onsite:1,"), ArgumentError);
}

TEST_CASE("hubbard energies") {
  const auto c = occupation_classes(3, 2);
  CHECK(class_energies(c, Interaction::hubbard(2.5)) == std::vector<double>{2.5, 0.0});
  const auto c3 = occupation_classes(3, 3);
  // (3): (U/2)*3*2 = 3U; (2,1): (U/2)*2 = U; (1,1,1): 0.
  CHECK(class_energies(c3, Interaction::hubbard(1.0)) == std::vector<double>{3.0, 1.0, 0.0});
  CHECK_THROWS_AS(class_energies(c3, Interaction::onsite_list({1.0})), ArgumentError);
}

TEST_CASE("single-particle Hamiltonian") {
  const auto k2 = hamiltonian_single(graph::complete_graph(2)).matrix;
  CHECK(k2 == (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());
  CHECK(hamiltonian_single(graph::empty_graph(3)).matrix.isZero(0.0));
  const auto c4 = hamiltonian_single(graph::cycle_graph(4)).matrix;
  CHECK(c4.row(0) == (Eigen::RowVectorXd(4) << 0, 1, 0, 1).finished());
}

TEST_CASE("two-boson Hamiltonian") {
  // -1/2 (I + S)(A x I + I x A) on K2 with basis (11, 12, 21, 22): A^{(+)2} row 11 is
  // (0, 1, 1, 0) and S fixes |11>, so the row is -(0, 1, 1, 0).
  const auto h = hamiltonian_2boson(graph::complete_graph(2), 0.0).matrix;
  CHECK(h.row(0) == (Eigen::RowVectorXd(4) << 0, -1, -1, 0).finished());
  const auto g = graph::cycle_graph(5);
  const auto hu = hamiltonian_2boson(g, 0.7).matrix;
  for (std::size_t v = 0; v < 5; ++v) CHECK(hu(static_cast<Eigen::Index>(v * 6), static_cast<Eigen::Index>(v * 6)) == 0.7);
  const auto empty = hamiltonian_2boson(graph::empty_graph(3), 3.0).matrix;
  Eigen::MatrixXd three_r = Eigen::MatrixXd::Zero(9, 9);
  for (int v = 0; v < 3; ++v) three_r(v * 4, v * 4) = 3.0;
  CHECK(empty == three_r);
}

TEST_CASE("k-boson builder reproduces the two-boson formula") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto g = graph::random_graph(3 + i % 4, 0.5, rng);
    const double u = 0.25 * i;
    CHECK(hamiltonian_kboson(g, 2, Interaction::hubbard(u)).matrix == hamiltonian_2boson(g, u).matrix);
  }
}

TEST_CASE("k-boson special cases") {
  const auto g = graph::cycle_graph(5);
  const auto a = hamiltonian_single(g).matrix;
  const auto h1 = hamiltonian_kboson(g, 1, Interaction::onsite_list({0.3})).matrix;
  CHECK(h1 == -a + 0.3 * Eigen::MatrixXd::Identity(5, 5));
  CHECK(hamiltonian_kboson(graph::empty_graph(3), 3, Interaction::none()).matrix.isZero(0.0));
  CHECK(hamiltonian_kboson(g, 3, Interaction::hubbard(1.0), Space::full).dim() == 125);
  CHECK(hamiltonian_kboson(g, 3, Interaction::hubbard(1.0), Space::symmetric).dim() == binomial(7, 3));
  CHECK_THROWS_AS(hamiltonian_kboson(graph::cycle_graph(20), 3, Interaction::none()), RefusedError);
  CHECK_THROWS_AS(hamiltonian_kboson(g, 2, Interaction::onsite_list({1.0, 2.0, 3.0})), ArgumentError);
}

TEST_CASE("Hamiltonian builders are exactly symmetric") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 12; ++i) {
    const auto g = graph::random_graph(2 + i % 4, 0.6, rng);
    for (int k = 1; k <= 3; ++k)
      for (auto space : {Space::full, Space::symmetric}) {
        const auto h = hamiltonian_kboson(g, k, Interaction::hubbard(0.9), space).matrix;
        CHECK(h == h.transpose());
      }
    const auto f = hamiltonian_2fermion(g).matrix;
    CHECK(f == f.transpose());
  }
}

TEST_CASE("two-fermion Hamiltonian") {
  CHECK(hamiltonian_2fermion(graph::complete_graph(2)).matrix == Eigen::MatrixXd::Zero(1, 1));
  CHECK(hamiltonian_2fermion(graph::empty_graph(3)).matrix == Eigen::MatrixXd::Zero(3, 3));
  CHECK(hamiltonian_2fermion(graph::cycle_graph(6)).dim() == 15);
  CHECK_THROWS_AS(hamiltonian_2fermion(Graph(1)), ArgumentError);
  // Oracle: compression of -A^{(+)2} through an explicit antisymmetric isometry.
  const auto g = graph::path_graph(4);
  const Eigen::Index n = 4;
  const Eigen::MatrixXd a = hamiltonian_single(g).matrix;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index p = 0; p < n; ++p) {
        sum(i * n + j, p * n + j) += a(i, p);
        sum(i * n + j, i * n + p) += a(j, p);
      }
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n * n, 6);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j, ++col) {
      e(i * n + j, col) = 1.0 / std::sqrt(2.0);
      e(j * n + i, col) = -1.0 / std::sqrt(2.0);
    }
  const Eigen::MatrixXd expected = -e.transpose() * sum * e;
  CHECK((hamiltonian_2fermion(g).matrix - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("unitary closed forms") {
  const auto k2 = hamiltonian_single(graph::complete_graph(2));
  CHECK(max_abs(unitary(k2, 0.0) - Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
  for (double t : {0.3, 1.0, 2.7, -1.1}) {
    Eigen::MatrixXcd expected(2, 2);
    expected << std::cos(t), std::complex<double>(0, -std::sin(t)), std::complex<double>(0, -std::sin(t)), std::cos(t);
    CHECK(max_abs(unitary(k2, t) - expected) < 1e-14);
  }
  const auto zero = hamiltonian_single(graph::empty_graph(4));
  CHECK(max_abs(unitary(zero, 5.0) - Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(Propagator{asym}, ArgumentError);
}

TEST_CASE("eigendecomposition matches the power series") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> entry(-1.0, 1.0), time(-2.0, 2.0);
  std::uniform_int_distribution<int> size(1, 32);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = size(rng);
    Eigen::MatrixXd h(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = entry(rng);
    // Keep ||tH|| moderate so 60 terms converge well below 1e-10.
    h /= std::max(1.0, h.norm() / 4.0);
    const double t = time(rng);
    const auto u = Propagator(h).unitary(t);
    CHECK(max_abs(u - oracle::taylor_exponential(h, t)) <= 1e-10);
    CHECK(unitarity_defect(u) <= 1e-12 * d);
  }
}

TEST_CASE("Green's signatures") {
  const auto id = greens_signature(Eigen::MatrixXcd::Identity(3, 3), 0.0, 1e-8);
  REQUIRE(id.values.size() == 2);
  CHECK(id.values[0].value == std::complex<double>(0, 0));
  CHECK(id.values[0].multiplicity == 6);
  CHECK(id.values[1].value == std::complex<double>(1, 0));
  CHECK(id.values[1].multiplicity == 3);

  // K2 at t = pi/2: diagonal cos = 0, off-diagonal -i sin = -i.
  const auto u = unitary(hamiltonian_single(graph::complete_graph(2)), pi / 2);
  const auto sig = greens_signature(u, pi / 2, 1e-8);
  REQUIRE(sig.values.size() == 2);
  CHECK(std::abs(sig.values[0].value - std::complex<double>(0, -1)) < 1e-12);
  CHECK(sig.values[0].multiplicity == 2);
  CHECK(std::abs(sig.values[1].value) < 1e-12);
  CHECK(sig.values[1].multiplicity == 2);
}

TEST_CASE("entries within tol/2 share a cluster") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> jitter(-0.24e-6, 0.24e-6);
  const double tol = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXcd m(6, 6);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      const double base = static_cast<double>(i % 4);
      m.data()[i] = {base + jitter(rng), 0.5 * base + jitter(rng)};
    }
    const auto sig = greens_signature(m, 0.0, tol);
    CHECK(sig.values.size() == 4);
    std::size_t total = 0;
    for (const auto& v : sig.values) total += v.multiplicity;
    CHECK(total == 36);
  }
}

TEST_CASE("signature comparison") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd b = a;
  b(0, 1) = 1e-12;
  CHECK_FALSE(compare_green_values(a, b, 0.0, 1e-8).distinguished);
  Eigen::MatrixXcd c = a;
  c(0, 1) = 0.5;
  const auto cmp = compare_green_values(a, c, 0.0, 1e-8);
  CHECK(cmp.distinguished);
  CHECK(cmp.max_deviation == doctest::Approx(0.5));
  // Same values, different multiplicities: a set comparison does not see it.
  Eigen::MatrixXcd d(2, 2), e(2, 2);
  d << 1, 0, 0, 0;
  e << 1, 1, 0, 0;
  CHECK(compare_green_values(d, e, 0.0, 1e-8).distinguished);
  CHECK_FALSE(compare_green_values(d, e, 0.0, 1e-8, true).distinguished);
}

TEST_CASE("relation decomposition over a strongly regular closure") {
  const auto g = graph::shrikhande();
  const auto a = g.int_adjacency();
  const auto basis = cellular::cellular_closure(std::span(&a, 1), 16);
  const auto id = relation_decomposition(Eigen::MatrixXcd::Identity(16, 16), basis);
  std::vector<std::size_t> sizes;
  for (const auto& term : id) {
    const bool diagonal = basis.info(term.relation).diagonal;
    CHECK(term.x == std::complex<double>(diagonal ? 1.0 : 0.0, 0.0));
    CHECK(term.residual == 0.0);
    sizes.push_back(term.m);
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{16, 96, 144});
  const Propagator p(hamiltonian_single(g).matrix);
  for (double t : kDefaultTimes)
    for (const auto& term : relation_decomposition(p.unitary(t), basis)) CHECK(term.residual <= 1e-10);
}

TEST_CASE("symmetric space agrees with the full space") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (int k = 1; k <= 3; ++k) {
      const auto e = symmetric_embedding(n, k);
      CHECK((e.transpose() * e - Eigen::MatrixXd::Identity(e.cols(), e.cols())).cwiseAbs().maxCoeff() < 1e-14);
      for (const auto& g : oracle::all_graphs(n)) {
        if (g.edge_count() % 3 != 0 && n == 4) continue;  // a spread of n = 4 graphs keeps this quick
        const auto interaction = Interaction::hubbard(1.0);
        const Propagator full(hamiltonian_kboson(g, k, interaction, Space::full).matrix);
        const Propagator sym(hamiltonian_kboson(g, k, interaction, Space::symmetric).matrix);
        const Eigen::MatrixXcd projected = e.transpose().cast<std::complex<double>>() * full.unitary(0.8) *
                                           e.cast<std::complex<double>>();
        CHECK(max_abs(projected - sym.unitary(0.8)) <= 1e-10);
      }
    }
}

TEST_CASE("relabelling conjugates the Hamiltonian and keeps signatures") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 8; ++i) {
    const auto g = graph::random_graph(4 + i % 2, 0.5, rng);
    std::vector<std::size_t> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = graph::relabel(g, perm);
    for (int k = 1; k <= 3; ++k) {
      const auto p = induced_permutation(perm, k);
      const auto hg = hamiltonian_kboson(g, k, Interaction::hubbard(1.0)).matrix;
      const auto hh = hamiltonian_kboson(h, k, Interaction::hubbard(1.0)).matrix;
      CHECK(p * hg * p.transpose() == hh);
    }
    const auto cmp = compare_walks(g, h, WalkModel::bosons(2, Interaction::hubbard(1.0)));
    CHECK_FALSE(cmp.distinguished);
  }
}

TEST_CASE("fermion walks are invariant under relabeling") {
  std::mt19937_64 rng(11);
  for (const auto& g : {graph::shrikhande(), graph::cycle_graph(7), graph::paley(13)}) {
    const auto h = graph::random_relabel(g, rng);
    CHECK_FALSE(compare_walks(g, h, WalkModel::fermions()).distinguished);
  }
  Eigen::MatrixXcd u(1, 4);
  u << std::complex<double>(-0.5, 0.2), std::complex<double>(0.0, -0.3), std::complex<double>(1e-12, -0.3),
      std::complex<double>(0.4, -0.1);
  const auto f = fold_signs(u, 1e-8);
  CHECK(f(0, 0) == std::complex<double>(0.5, -0.2));
  CHECK(f(0, 1) == std::complex<double>(-0.0, 0.3));
  CHECK(f(0, 2) == std::complex<double>(-1e-12, 0.3));
  CHECK(f(0, 3) == u(0, 3));
}

TEST_CASE("a common energy shift does not change verdicts") {
  const auto pairs = std::vector<std::pair<Graph, Graph>>{
      {graph::shrikhande(), graph::rook_graph(4)}, {graph::cycle_graph(6), graph::path_graph(6)}};
  for (const auto& [g, h] : pairs) {
    const auto ag = hamiltonian_single(g).matrix, ah = hamiltonian_single(h).matrix;
    const Eigen::MatrixXd shift = 0.37 * Eigen::MatrixXd::Identity(ag.rows(), ag.cols());
    for (double t : kDefaultTimes) {
      const bool plain = compare_green_values(Propagator(ag).unitary(t), Propagator(ah).unitary(t), t, 1e-8).distinguished;
      const bool shifted = compare_green_values(Propagator(ag + shift).unitary(t), Propagator(ah + shift).unitary(t),
                                                t, 1e-8).distinguished;
      CHECK(plain == shifted);
    }
  }
}

TEST_CASE("compare_walks") {
  const auto g = graph::shrikhande();
  const auto h = graph::rook_graph(4);
  CHECK_FALSE(compare_walks(g, g, WalkModel::bosons(2, Interaction::hubbard(1.0))).distinguished);
  const std::vector<double> times{0.5, 1.0, 2.0};
  WalkOptions o;
  o.times = times;
  CHECK_FALSE(compare_walks(g, h, WalkModel::bosons(2), o).distinguished);
  const auto interacting = compare_walks(g, h, WalkModel::bosons(2, Interaction::hubbard(1.0)), o);
  CHECK(interacting.distinguished);
  REQUIRE(interacting.witness_time.has_value());
  CHECK(compare_walks(graph::cycle_graph(4), graph::path_graph(5), WalkModel::single()).distinguished);
  o.times = {};
  CHECK_THROWS_AS(compare_walks(g, h, WalkModel::single(), o), ArgumentError);
}

TEST_CASE("certified walks on the srg pair") {
  const auto cert = certify_walks(graph::shrikhande(), graph::rook_graph(4), WalkModel::single());
  CHECK(cert.pass);
  REQUIRE(!cert.times.empty());
  CHECK(cert.times[0].terms.size() == 3);
  const auto none = certify_walks(graph::complete_graph(3), graph::path_graph(3), WalkModel::single());
  CHECK_FALSE(none.pass);
  CHECK(none.detail.find("not applicable") != std::string::npos);
}

}  // TEST_SUITE
