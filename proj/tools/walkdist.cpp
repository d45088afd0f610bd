// walkdist: cellular-algebra certificates and multi-particle quantum walk comparisons.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "walkdist/cli/report.hpp"
#include "walkdist/walk/hamiltonian.hpp"

using namespace walkdist;

namespace {

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> times;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      times.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("invalid time '" + item + "' in --times");
    }
  }
  return times;
}

struct Flags {
  std::vector<std::string> inputs;
  std::string pairs;
  int k = 1;
  std::string interaction = "none";
  std::string model = "boson";
  std::string space = "full";
  std::string times;
  double tol = walk::kDefaultTolerance;
  std::size_t cap = kDefaultSizeCap;
  long long timeout_ms = 0;
  std::string format = "json";
  std::string out;
  bool set_only = false;
  bool signatures = false;
  int threads = 0;
};

void add_common(CLI::App* sub, Flags& f, bool walk_flags) {
  sub->add_option("inputs", f.inputs, "graph6 files or generator names (shrikhande, rook:M, paley:Q, cfi:BASE, g6:STRING, ...)");
  sub->add_option("--k", f.k, "extension order (closure, equiv) or particle count (walk, certify)");
  sub->add_option("--cap", f.cap, "largest permitted dimension");
  sub->add_option("--timeout-ms", f.timeout_ms, "time budget for refinement, 0 for none");
  sub->add_option("--format", f.format, "json, csv or human")->check(CLI::IsMember({"json", "csv", "human"}));
  sub->add_option("--out", f.out, "output file (default: standard output)");
  sub->add_option("--threads", f.threads, "worker threads (default: WALKDIST_THREADS or all cores)");
  if (sub->get_name() != "closure") sub->add_option("--pairs", f.pairs, "file with two graph6 strings per line");
  if (!walk_flags) return;
  sub->add_option("--interaction", f.interaction, "none, hubbard:U or onsite:U1,U2,...");
  sub->add_option("--model", f.model, "boson, fermion or single")->check(CLI::IsMember({"boson", "fermion", "single"}));
  sub->add_option("--space", f.space, "full or symmetric (bosons)")->check(CLI::IsMember({"full", "symmetric"}));
  sub->add_option("--times", f.times, "comma-separated time samples");
  sub->add_option("--tol", f.tol, "comparison tolerance");
  sub->add_flag("--set-only", f.set_only, "compare value sets, ignoring multiplicities");
  sub->add_flag("--signatures", f.signatures, "include Green's signatures in the report");
}

cli::RunConfig to_config(cli::Command command, const Flags& f) {
  cli::RunConfig c;
  c.command = command;
  c.inputs = f.inputs;
  if (!f.pairs.empty()) c.pairs_file = f.pairs;
  c.k = f.k;
  c.interaction = walk::parse_interaction(f.interaction);
  c.particles = f.model == "single"    ? walk::WalkModel::Particles::single
                : f.model == "fermion" ? walk::WalkModel::Particles::fermion
                                       : walk::WalkModel::Particles::boson;
  if (c.particles == walk::WalkModel::Particles::fermion && f.k == 1) c.k = 2;
  c.space = f.space == "symmetric" ? walk::Space::symmetric : walk::Space::full;
  if (!f.times.empty()) c.times = parse_times(f.times);
  c.tol = f.tol;
  c.cap = f.cap;
  c.timeout_ms = f.timeout_ms;
  c.format = f.format == "csv" ? cli::Format::csv : f.format == "human" ? cli::Format::human : cli::Format::json;
  c.out = f.out;
  c.set_only = f.set_only;
  c.signatures = f.signatures;
  c.threads = f.threads;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walkdist: cellular-algebra equivalence certificates and quantum walk distinguishability"};
  app.require_subcommand(1);
  Flags flags;
  std::map<CLI::App*, cli::Command> commands;
  commands[app.add_subcommand("closure", "cellular closure (k = 1) or k-extension of each input graph")] =
      cli::Command::closure;
  commands[app.add_subcommand("equiv", "k-equivalence evidence for a pair of graphs")] = cli::Command::equiv;
  commands[app.add_subcommand("walk", "compare Green's function multisets of two graphs")] = cli::Command::walk;
  commands[app.add_subcommand("certify", "certify equal walk signatures through a weak isomorphism")] =
      cli::Command::certify;
  for (auto& [sub, command] : commands)
    add_common(sub, flags, command == cli::Command::walk || command == cli::Command::certify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    cli::Command command = cli::Command::closure;
    for (auto& [sub, c] : commands)
      if (sub->parsed()) command = c;
    const auto config = to_config(command, flags);
    const auto report = cli::run(config);
    const auto text = cli::render(report, config.format);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out, std::ios::binary);
      if (!out) throw Error("input", "cannot write '" + config.out + "'");
      out << text;
    }
    return cli::exit_code(report);
  } catch (const Error& e) {
    std::cerr << cli::error_report(e).dump(2) << '\n';
    return cli::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "{\"schema\": \"" << cli::kSchema << "\", \"error\": {\"code\": \"internal\", \"message\": "
              << cli::Json(e.what()).dump() << "}}\n";
    return 1;
  }
}
