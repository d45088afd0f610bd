#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "walkdist/cli/report.hpp"
#include "walkdist/graph/generators.hpp"
#include "walkdist/graph/graph6.hpp"

using namespace walkdist;
using namespace walkdist::cli;

namespace {

RunConfig config(Command c, std::vector<std::string> inputs) {
  RunConfig r;
  r.command = c;
  r.inputs = std::move(inputs);
  return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generator names") {
  CHECK(resolve_input("shrikhande").front() == graph::shrikhande());
  CHECK(resolve_input("rook:4").front() == graph::rook_graph(4));
  CHECK(resolve_input("paley:13").front() == graph::paley(13));
  CHECK(resolve_input("cfi:complete:4").size() == 2);
  CHECK(resolve_input("cfi1:cycle:3").front() == graph::cfi_pair(graph::cycle_graph(3)).second);
  CHECK(resolve_input("g6:A_").front() == graph::complete_graph(2));
  CHECK_THROWS_AS(resolve_input("rook:x"), ArgumentError);
  CHECK_THROWS_AS(resolve_input("no-such-file.g6"), Error);
}

TEST_CASE("closure reports") {
  const auto srg = run(config(Command::closure, {"shrikhande"}));
  CHECK(srg["schema"] == kSchema);
  CHECK(srg["results"][0]["relation_count"] == 3);
  CHECK(srg["results"][0]["srg"]["mu"] == 2);
  const auto path = run(config(Command::closure, {"path:3"}));
  CHECK(path["results"][0]["relation_count"] == 5);
  const auto& basis = path["results"][0]["basis"];
  CHECK(basis["points"] == 3);
  CHECK(basis["cells"].size() == 2);
  CHECK_THROWS_AS(run(config(Command::closure, {})), ArgumentError);
}

TEST_CASE("equiv reports") {
  const auto srg = run(config(Command::equiv, {"shrikhande", "rook:4"}));
  CHECK(srg["results"][0]["verdict"] == "equivalent");
  CHECK(srg["results"][0]["certificate"]["relations"] == 3);
  const auto kp = run(config(Command::equiv, {"complete:3", "path:3"}));
  CHECK(kp["results"][0]["verdict"] == "not-equivalent");
  auto big = config(Command::equiv, {"cycle:70", "cycle:70"});
  big.k = 2;
  const auto refused = run(big);
  CHECK(refused["results"][0]["verdict"] == "refused");
  CHECK(refused["results"][0]["error"]["dimension"] == 4900);
  CHECK(exit_code(refused) == 4);
  CHECK_THROWS_AS(run(config(Command::equiv, {"shrikhande"})), ArgumentError);
}

TEST_CASE("walk reports") {
  auto c = config(Command::walk, {"shrikhande", "rook:4"});
  c.k = 2;
  c.times = {0.5, 1.0, 2.0};
  c.interaction = walk::Interaction::hubbard(1.0);
  CHECK(run(c)["results"][0]["verdict"] == "distinguished");
  c.interaction = walk::Interaction::none();
  CHECK(run(c)["results"][0]["verdict"] == "indistinguishable");
  auto same = config(Command::walk, {"paley:13", "paley:13"});
  CHECK(run(same)["results"][0]["verdict"] == "indistinguishable");
}

TEST_CASE("certify reports") {
  auto c = config(Command::certify, {"shrikhande", "rook:4"});
  c.particles = walk::WalkModel::Particles::single;
  const auto r = run(c);
  CHECK(r["results"][0]["verdict"] == "pass");
  CHECK(r["results"][0]["certificate"]["relations"] == 3);
  auto kp = config(Command::certify, {"complete:3", "path:3"});
  kp.particles = walk::WalkModel::Particles::single;
  CHECK(run(kp)["results"][0]["verdict"] == "not-applicable");
  auto self = config(Command::certify, {"cycle:6", "cycle:6"});
  self.particles = walk::WalkModel::Particles::single;
  CHECK(run(self)["results"][0]["verdict"] == "pass");
}

TEST_CASE("pair files and parse errors with line context") {
  const std::string path = "walkdist_test_pairs.txt";
  {
    std::ofstream out(path);
    out << graph::write_graph6(graph::shrikhande()) << ' ' << graph::write_graph6(graph::rook_graph(4)) << "\n\n"
        << "A_ A_\n";
  }
  auto c = config(Command::equiv, {});
  c.pairs_file = path;
  const auto r = run(c);
  REQUIRE(r["results"].size() == 2);
  CHECK(r["results"][1]["verdict"] == "equivalent");
  {
    std::ofstream out(path);
    out << "A_ A_\nA_ D?\n";
  }
  try {
    run(c);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(exit_code(e) == 3);
  }
  std::remove(path.c_str());
}

TEST_CASE("reports are deterministic and render in every format") {
  auto c = config(Command::walk, {"cfi:cycle:3"});
  c.k = 2;
  c.interaction = walk::Interaction::hubbard(1.0);
  c.threads = 1;
  const auto one = render(run(c), Format::json);
  c.threads = 3;
  CHECK(render(run(c), Format::json) == one);
  const auto report = run(c);
  CHECK(render(report, Format::csv).rfind("pair,g,h,verdict", 0) == 0);
  CHECK(render(report, Format::human).find(" vs ") != std::string::npos);
}

TEST_CASE("config validation") {
  auto c = config(Command::walk, {"shrikhande", "rook:4"});
  c.tol = 0.0;
  CHECK_THROWS_AS(run(c), ArgumentError);
  c.tol = 1e-8;
  c.times = {};
  CHECK_THROWS_AS(run(c), ArgumentError);
  c.times = {1.0};
  c.k = 0;
  CHECK_THROWS_AS(run(c), ArgumentError);
}

}  // TEST_SUITE
