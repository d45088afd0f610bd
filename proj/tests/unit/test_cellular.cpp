#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "walkdist/cellular/basis.hpp"
#include "walkdist/cellular/equivalence.hpp"
#include "walkdist/cellular/extension.hpp"
#include "walkdist/cellular/kwl.hpp"
#include "walkdist/graph/generators.hpp"

using namespace walkdist;
using namespace walkdist::cellular;
using graph::Graph;

namespace {

CellularBasis closure_of(const Graph& g) {
  const auto a = g.int_adjacency();
  return cellular_closure(std::span(&a, 1), g.order());
}

std::vector<std::size_t> partition_of(const CellularBasis& b) {
  std::vector<std::size_t> labels(b.coloring().colors.begin(), b.coloring().colors.end());
  return oracle::normalise(labels);
}

BitMatrix adjacency_bits(const Graph& g) { return bit_matrix_from(g.adjacency()); }

}  // namespace

TEST_SUITE("cellular") {

TEST_CASE("closure of a strongly regular graph has three relations") {
  for (const auto& g : {graph::shrikhande(), graph::rook_graph(4), graph::paley(13), graph::paley(5)}) {
    const auto b = closure_of(g);
    CHECK(b.relation_count() == 3);
    CHECK(is_member(b, adjacency_bits(g)));
    CHECK(is_member(b, adjacency_bits(g).complement() & BitMatrix::identity(g.order()).complement()));
    check_basis_invariants(b);
  }
}

TEST_CASE("closure without seeds is {I, J - I}") {
  const auto b = cellular_closure({}, 5);
  CHECK(b.relation_count() == 2);
  CHECK(b.cells().size() == 1);
}

TEST_CASE("closure of the path a-b-c") {
  const auto g = graph::path_graph(3);
  const auto b = closure_of(g);
  CHECK(b.relation_count() == 5);
  CHECK(partition_of(b) == oracle::naive_closure_partition({g.int_adjacency()}, 3));
  // Cells {b} and {a, c}.
  REQUIRE(b.cells().size() == 2);
  std::vector<std::vector<std::size_t>> cells = b.cells();
  std::sort(cells.begin(), cells.end());
  CHECK(cells[0] == std::vector<std::size_t>{0, 2});
  CHECK(cells[1] == std::vector<std::size_t>{1});
}

TEST_CASE("closure partitions match a naive refinement") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto g = graph::random_graph(3 + i % 8, 0.4, rng);
    const auto b = closure_of(g);
    CHECK(partition_of(b) == oracle::naive_closure_partition({g.int_adjacency()}, g.order()));
  }
}

TEST_CASE("basis invariants and exact structure constants on random graphs") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    const auto g = graph::random_graph(2 + i % 11, 0.35, rng);
    const auto b = closure_of(g);
    check_basis_invariants(b);
    CHECK_NOTHROW(structure_constants(b));
    // Direct product check on materialised relations for small cases.
    if (g.order() <= 7) {
      const auto rels = b.relations();
      const std::size_t n = g.order();
      for (const auto& r : rels)
        for (const auto& s : rels)
          for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
              std::int64_t product = 0;
              for (std::size_t w = 0; w < n; ++w) product += r.matrix.get(u, w) && s.matrix.get(w, v);
              CHECK(product == b.structure_constant(b.relation_of(u, v), r.id, s.id));
            }
    }
  }
}

TEST_CASE("closure is idempotent") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto g = graph::random_graph(4 + i % 8, 0.5, rng);
    const auto b = closure_of(g);
    IntMatrix colours(g.order());
    for (std::size_t u = 0; u < g.order(); ++u)
      for (std::size_t v = 0; v < g.order(); ++v) colours(u, v) = b.relation_of(u, v);
    const auto again = cellular_closure(std::span(&colours, 1), g.order());
    CHECK(partition_of(again) == partition_of(b));
  }
}

TEST_CASE("seed dimension mismatch is an argument error") {
  std::vector<IntMatrix> seeds{IntMatrix(3), IntMatrix(4)};
  CHECK_THROWS_AS(cellular_closure(seeds, 3), ArgumentError);
}

TEST_CASE("membership") {
  const auto b = closure_of(graph::shrikhande());
  CHECK(is_member(b, BitMatrix::ones(16)));
  CHECK(is_member(b, BitMatrix::identity(16)));
  BitMatrix unit(16);
  unit.set(0, 1);
  CHECK_FALSE(is_member(b, unit));
}

TEST_CASE("weak equivalence of the two srg(16,6,2,2) graphs") {
  const auto g = graph::shrikhande();
  const auto h = graph::rook_graph(4);
  for (auto method : {SearchMethod::canonical, SearchMethod::backtracking}) {
    const auto cert = weak_equivalence(g, h, method);
    REQUIRE(cert.has_value());
    CHECK(cert->map.size() == 3);
    CHECK(verify_weak_isomorphism(*cert, true));
    for (std::uint32_t r = 0; r < 3; ++r)
      CHECK(trace_of(*cert->source, r) == trace_of(*cert->target, cert->map[r]));
  }
}

TEST_CASE("no weak equivalence between the triangle and the path") {
  CHECK_FALSE(weak_equivalence(graph::complete_graph(3), graph::path_graph(3)).has_value());
  CHECK_FALSE(weak_equivalence(graph::complete_graph(3), graph::path_graph(3), SearchMethod::backtracking).has_value());
  const auto r = k_equivalence_evidence(graph::complete_graph(3), graph::path_graph(3), 1);
  CHECK(r.verdict == Verdict::not_equivalent);
  CHECK_FALSE(r.certificate.has_value());
}

TEST_CASE("canonical and backtracking searches agree on random pairs") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const auto g = graph::random_graph(5 + i % 5, 0.5, rng);
    const auto h = (i % 3 == 0) ? graph::random_relabel(g, rng) : graph::random_edge_swaps(g, 1, rng);
    const bool canonical = weak_equivalence(g, h, SearchMethod::canonical).has_value();
    const bool search = weak_equivalence(g, h, SearchMethod::backtracking).has_value();
    CHECK(canonical == search);
    if (i % 3 == 0) CHECK(canonical);
  }
}

TEST_CASE("tampered certificates are rejected") {
  auto cert = weak_equivalence(graph::shrikhande(), graph::rook_graph(4));
  REQUIRE(cert.has_value());
  auto swapped = *cert;
  std::swap(swapped.map[1], swapped.map[2]);
  CHECK_FALSE(verify_weak_isomorphism(swapped, false));
  auto duplicate = *cert;
  duplicate.map[1] = duplicate.map[2];
  CHECK_FALSE(verify_weak_isomorphism(duplicate, false));
}

TEST_CASE("set partitions and the centralizer basis") {
  CHECK(set_partitions(4, 4).size() == 15);
  CHECK(set_partitions(4, 2).size() == 8);
  CHECK(set_partitions(2, 4).size() == 2);
  CHECK(centralizer_basis(5, 1).size() == 2);
  CHECK(centralizer_basis(4, 2).size() == 15);
  CHECK(centralizer_basis(2, 2).size() == 8);
  CHECK(oracle::centralizer_orbit_count(4, 2) == 15);
  CHECK(oracle::centralizer_orbit_count(2, 2) == 8);
  CHECK(oracle::centralizer_orbit_count(3, 2) == centralizer_basis(3, 2).size());
  CHECK(oracle::centralizer_orbit_count(3, 3) == centralizer_basis(3, 3).size());
  CHECK_THROWS_AS(centralizer_basis(100, 2, 4096), RefusedError);
}

TEST_CASE("centralizer relations are invariant under vertex permutations") {
  const std::size_t n = 4;
  const int k = 2;
  const auto basis = centralizer_basis(n, k);
  const TupleSpace space(n, k);
  std::mt19937_64 rng(2);
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::shuffle(p.begin(), p.end(), rng);
    auto image = [&](std::size_t x) {
      auto t = space.decode(x);
      for (auto& v : t) v = p[v];
      return space.encode(t);
    };
    for (const auto& rel : basis)
      for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
          if (rel.matrix.get(x, y) != rel.matrix.get(image(x), image(y))) FAIL("centralizer relation not invariant");
  }
}

TEST_CASE("k-extension basics") {
  const auto k1 = k_extension(graph::cycle_graph(5), 1);
  CHECK(partition_of(k1) == partition_of(closure_of(graph::cycle_graph(5))));

  const auto k2 = k_extension(graph::complete_graph(2), 2);
  CHECK(k2.point_count() == 4);
  for (const auto& rel : centralizer_basis(2, 2)) CHECK(is_member(k2, rel.matrix));

  const auto c5 = k_extension(graph::cycle_graph(5), 2);
  const std::vector<std::size_t> swap{1, 0};
  CHECK(is_member(c5, tuple_permutation_matrix(5, swap)));
  CHECK_THROWS_AS(k_extension(graph::cycle_graph(70), 2), RefusedError);
}

TEST_CASE("cylindric relations") {
  const std::size_t n = 4;
  const auto i = BitMatrix::identity(n);
  const auto j = BitMatrix::ones(n);
  CHECK(cylindric(std::vector<BitMatrix>{j, j, j, j}, 2) == BitMatrix::ones(16));
  CHECK(cylindric(std::vector<BitMatrix>{i, j, j, i}, 2) == BitMatrix::identity(16));
  const std::vector<std::size_t> swap{1, 0};
  CHECK(cylindric(std::vector<BitMatrix>{j, i, i, j}, 2) == tuple_permutation_matrix(n, swap));
}

TEST_CASE("cylindric relations of closure relations lie in the extension") {
  std::mt19937_64 rng(4);
  for (const auto& g : {graph::cycle_graph(5), graph::path_graph(4), graph::complete_graph(3)}) {
    const auto base = closure_of(g);
    const auto ext = k_extension(g, 2);
    const auto rels = base.relations();
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<BitMatrix> entries;
      for (int e = 0; e < 4; ++e) {
        BitMatrix m(g.order());
        for (const auto& r : rels)
          if (rng() % 2) m = m | r.matrix;
        entries.push_back(m);
      }
      CHECK(is_member(ext, cylindric(entries, 2)));
    }
  }
}

TEST_CASE("k-equivalence evidence") {
  const auto self = k_equivalence_evidence(graph::cycle_graph(5), graph::cycle_graph(5), 2);
  REQUIRE(self.verdict == Verdict::equivalent);
  for (std::uint32_t r = 0; r < self.certificate->map.size(); ++r) CHECK(self.certificate->map[r] == r);

  const auto srg1 = k_equivalence_evidence(graph::shrikhande(), graph::rook_graph(4), 1);
  CHECK(srg1.verdict == Verdict::equivalent);
  CHECK(srg1.certificate.has_value());

  CHECK_THROWS_AS(k_equivalence_evidence(graph::cycle_graph(70), graph::cycle_graph(70), 2), RefusedError);
}

TEST_CASE("the two srg(16,6,2,2) graphs are not 2-equivalent") {
  const auto r = k_equivalence_evidence(graph::shrikhande(), graph::rook_graph(4), 2);
  CHECK(r.verdict == Verdict::not_equivalent);
}

TEST_CASE("a tiny time budget gives an inconclusive verdict") {
  const auto [g0, g1] = graph::cfi_pair(graph::complete_graph(4));
  const auto r = k_equivalence_evidence(g0, g0, 2, {kDefaultSizeCap, 1, 1});
  CHECK(r.verdict == Verdict::inconclusive);
}

TEST_CASE("k-WL comparison") {
  CHECK(k_wl_compare(graph::shrikhande(), graph::shrikhande(), 2).verdict == WlVerdict::not_distinguished);
  CHECK(k_wl_compare(graph::shrikhande(), graph::rook_graph(4), 1).verdict == WlVerdict::not_distinguished);
  CHECK(k_wl_compare(graph::shrikhande(), graph::rook_graph(4), 2).verdict == WlVerdict::not_distinguished);
  CHECK(k_wl_compare(graph::shrikhande(), graph::rook_graph(4), 3).verdict == WlVerdict::distinguished);
  CHECK(k_wl_compare(graph::complete_graph(3), graph::path_graph(3), 1).verdict == WlVerdict::distinguished);
  CHECK(k_wl_compare(graph::complete_graph(3), graph::complete_graph(4), 1).verdict == WlVerdict::distinguished);
  CHECK_THROWS_AS(k_wl_compare(graph::cycle_graph(70), graph::cycle_graph(70), 2), RefusedError);
}

TEST_CASE("k-WL distinguishing implies no k-equivalence") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    const auto g = graph::random_graph(5 + i % 4, 0.5, rng);
    const auto h = graph::random_edge_swaps(g, 1 + i % 2, rng);
    for (int k = 1; k <= 2; ++k)
      if (k_wl_compare(g, h, k).verdict == WlVerdict::distinguished)
        CHECK(k_equivalence_evidence(g, h, k).verdict != Verdict::equivalent);
  }
}

TEST_CASE("certificates preserve traces and cell sizes") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const auto g = graph::random_graph(6 + i % 4, 0.4, rng);
    const auto h = graph::random_relabel(g, rng);
    const auto cert = weak_equivalence(g, h);
    REQUIRE(cert.has_value());
    for (std::uint32_t r = 0; r < cert->map.size(); ++r) {
      CHECK(trace_of(*cert->source, r) == trace_of(*cert->target, cert->map[r]));
      CHECK(cert->source->info(r).size == cert->target->info(cert->map[r]).size);
    }
    for (std::size_t x = 0; x < cert->source->cells().size(); ++x) {
      const auto image = cert->map[cert->source->diag_ids()[x]];
      const auto it = std::find(cert->target->diag_ids().begin(), cert->target->diag_ids().end(), image);
      REQUIRE(it != cert->target->diag_ids().end());
      CHECK(cert->target->cells()[static_cast<std::size_t>(it - cert->target->diag_ids().begin())].size() ==
            cert->source->cells()[x].size());
    }
  }
}

TEST_CASE("refinement is independent of the thread count") {
  const auto g = graph::cfi_pair(graph::complete_graph(4)).first;
  const auto a = g.int_adjacency();
  const auto one = cellular_closure(std::span(&a, 1), g.order(), {1, {}});
  const auto four = cellular_closure(std::span(&a, 1), g.order(), {4, {}});
  CHECK(one.coloring().colors == four.coloring().colors);
  CHECK(one.structure() == four.structure());
}

}  // TEST_SUITE
