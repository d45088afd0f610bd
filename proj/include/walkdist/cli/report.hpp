#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "walkdist/cellular/basis.hpp"
#include "walkdist/cellular/equivalence.hpp"
#include "walkdist/graph/graph.hpp"
#include "walkdist/walk/compare.hpp"

namespace walkdist::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "walkdist.report/1";

enum class Command { closure, equiv, walk, certify };
enum class Format { json, csv, human };

const char* to_string(Command c);
const char* to_string(Format f);

struct RunConfig {
  Command command = Command::closure;
  std::vector<std::string> inputs;  // graph6 paths or generator names
  std::optional<std::string> pairs_file;
  int k = 1;
  walk::WalkModel::Particles particles = walk::WalkModel::Particles::boson;
  walk::Space space = walk::Space::full;
  walk::Interaction interaction;
  std::vector<double> times = walk::kDefaultTimes;
  double tol = walk::kDefaultTolerance;
  std::size_t cap = kDefaultSizeCap;
  long long timeout_ms = 0;
  Format format = Format::json;
  std::string out;  // empty: standard output
  bool set_only = false;
  bool signatures = false;
  int threads = 0;

  /// Throws ArgumentError on a violated invariant.
  void validate() const;
  walk::WalkModel model() const;
};

/// Resolves one input: a generator name (shrikhande, rook:M, paley:Q,
/// complete:N, cycle:N, path:N, empty:N, cfi:BASE, cfi0:BASE, cfi1:BASE),
/// a literal "g6:STRING", or a graph6 file. cfi:BASE yields both graphs.
std::vector<graph::Graph> resolve_input(const std::string& spec);

/// Pair file: two whitespace-separated graph6 strings per line.
std::vector<std::pair<graph::Graph, graph::Graph>> read_pairs(const std::string& path);

Json basis_to_json(const cellular::CellularBasis& basis);
Json signature_to_json(const walk::GreensSignature& sig);
Json bijection_to_json(const cellular::RelationBijection& bij);

/// Executes the command and builds the report. Refusals are recorded per
/// item; parse and usage errors propagate.
Json run(const RunConfig& config);

std::string render(const Json& report, Format format);

/// Structured error document for failures that abort a run.
Json error_report(const Error& e);

/// 0 completed, 1 internal failure, 2 usage, 3 input or parse, 4 refused.
int exit_code(const Error& e);
int exit_code(const Json& report);

}  // namespace walkdist::cli
