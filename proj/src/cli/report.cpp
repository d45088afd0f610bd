#include "walkdist/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "walkdist/cellular/extension.hpp"
#include "walkdist/cellular/kwl.hpp"
#include "walkdist/graph/generators.hpp"
#include "walkdist/graph/graph6.hpp"

namespace walkdist::cli {

const char* to_string(Command c) {
  switch (c) {
    case Command::closure: return "closure";
    case Command::equiv: return "equiv";
    case Command::walk: return "walk";
    case Command::certify: return "certify";
  }
  return "unknown";
}

const char* to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::human: return "human";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (k < 1) throw ArgumentError("--k must be at least 1");
  if (times.empty()) throw ArgumentError("--times needs at least one value");
  for (double t : times)
    if (!std::isfinite(t)) throw ArgumentError("--times values must be finite");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ArgumentError("--tol must be positive");
  if (cap == 0) throw ArgumentError("--cap must be positive");
  if (inputs.empty() && !pairs_file) throw ArgumentError("no inputs given");
  if (command == Command::closure && pairs_file) throw ArgumentError("closure takes graphs, not a pair file");
  if (particles == walk::WalkModel::Particles::fermion && k != 2 && command != Command::equiv &&
      command != Command::closure)
    throw ArgumentError("the fermionic model has exactly two particles");
}

walk::WalkModel RunConfig::model() const {
  switch (particles) {
    case walk::WalkModel::Particles::single: return walk::WalkModel::single();
    case walk::WalkModel::Particles::fermion: return walk::WalkModel::fermions();
    case walk::WalkModel::Particles::boson: break;
  }
  return walk::WalkModel::bosons(k, interaction, space);
}

namespace {

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error("input", what) {}
};

std::size_t parse_size(std::string_view text, const std::string& spec) {
  std::size_t value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ArgumentError("invalid size '" + std::string(text) + "' in input '" + spec + "'");
  return value;
}

std::vector<graph::Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input '" + path + "'");
  auto graphs = graph::read_graph6_stream(in, path);
  if (graphs.empty()) throw InputError("input '" + path + "' contains no graphs");
  return graphs;
}

graph::Graph single(const std::string& spec) {
  auto graphs = resolve_input(spec);
  if (graphs.size() != 1) throw ArgumentError("input '" + spec + "' must denote exactly one graph");
  return std::move(graphs.front());
}

Json graph_json(const graph::Graph& g) {
  return Json{{"label", g.label()}, {"n", g.order()}, {"edges", g.edge_count()}, {"graph6", graph::write_graph6(g)}};
}

Json refusal_json(const RefusedError& e) {
  return Json{{"code", e.code()}, {"dimension", e.dimension()}, {"cap", e.cap()}, {"message", e.what()}};
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json config_json(const RunConfig& c) {
  Json j;
  j["inputs"] = c.inputs;
  j["pairs_file"] = c.pairs_file ? Json(*c.pairs_file) : Json(nullptr);
  j["k"] = c.k;
  if (c.command == Command::walk || c.command == Command::certify) {
    j["model"] = c.model().describe();
    j["interaction"] = c.interaction.describe();
    j["space"] = walk::to_string(c.model().space);
    j["times"] = c.times;
    j["tol"] = c.tol;
    j["set_only"] = c.set_only;
  }
  j["cap"] = c.cap;
  j["timeout_ms"] = c.timeout_ms;
  return j;
}

std::vector<std::pair<graph::Graph, graph::Graph>> collect_pairs(const RunConfig& c) {
  std::vector<std::pair<graph::Graph, graph::Graph>> pairs;
  if (c.pairs_file) pairs = read_pairs(*c.pairs_file);
  if (!c.inputs.empty()) {
    std::vector<graph::Graph> graphs;
    for (const auto& in : c.inputs)
      for (auto& g : resolve_input(in)) graphs.push_back(std::move(g));
    if (graphs.size() != 2)
      throw ArgumentError(std::string(to_string(c.command)) + " needs exactly two graphs, got " +
                          std::to_string(graphs.size()));
    pairs.emplace_back(std::move(graphs[0]), std::move(graphs[1]));
  }
  return pairs;
}

Json closure_item(const graph::Graph& g, const RunConfig& c) {
  Json item{{"graph", graph_json(g)}, {"k", c.k}};
  try {
    cellular::RefineOptions refine{c.threads, Deadline::after_ms(c.timeout_ms)};
    if (c.k == 1) {
      const auto adjacency = g.int_adjacency();
      const auto basis = cellular::cellular_closure(std::span(&adjacency, 1), g.order(), refine);
      const auto srg = g.order() >= 2 ? graph::srg_parameters(g) : std::nullopt;
      item["relation_count"] = basis.relation_count();
      item["srg"] = srg ? Json{{"n", srg->n}, {"k", srg->k}, {"lambda", srg->lambda}, {"mu", srg->mu}} : Json(nullptr);
      item["basis"] = basis_to_json(basis);
    } else {
      const auto basis = cellular::k_extension(g, c.k, {c.cap, refine});
      item["relation_count"] = basis.relation_count();
      item["basis"] = basis_to_json(basis);
    }
    item["status"] = "ok";
  } catch (const RefusedError& e) {
    item["status"] = "refused";
    item["error"] = refusal_json(e);
  } catch (const TimeoutError&) {
    item["status"] = "inconclusive";
  }
  return item;
}

Json equiv_item(const graph::Graph& g, const graph::Graph& h, const RunConfig& c) {
  Json item{{"g", graph_json(g)}, {"h", graph_json(h)}, {"k", c.k}};
  try {
    const auto result = cellular::k_equivalence_evidence(g, h, c.k, {c.cap, c.timeout_ms, c.threads});
    item["verdict"] = cellular::to_string(result.verdict);
    item["rounds"] = result.rounds;
    item["detail"] = result.detail;
    item["certificate"] = result.certificate ? bijection_to_json(*result.certificate) : Json(nullptr);
    if (c.k > 1) item["base_certificate"] = result.base ? bijection_to_json(*result.base) : Json(nullptr);
  } catch (const RefusedError& e) {
    item["verdict"] = "refused";
    item["error"] = refusal_json(e);
    return item;
  }
  try {
    const auto wl = cellular::k_wl_compare(g, h, c.k, c.cap, Deadline::after_ms(c.timeout_ms));
    item["wl"] = Json{{"verdict", cellular::to_string(wl.verdict)}, {"rounds", wl.rounds}};
  } catch (const RefusedError& e) {
    item["wl"] = Json{{"verdict", "refused"}, {"error", refusal_json(e)}};
  } catch (const TimeoutError&) {
    item["wl"] = Json{{"verdict", "inconclusive"}};
  }
  return item;
}

walk::WalkOptions walk_options(const RunConfig& c) {
  walk::WalkOptions o;
  o.times = c.times;
  o.tol = c.tol;
  o.set_only = c.set_only;
  o.keep_signatures = c.signatures;
  o.cap = c.cap;
  o.threads = c.threads;
  return o;
}

Json walk_item(const graph::Graph& g, const graph::Graph& h, const RunConfig& c) {
  Json item{{"g", graph_json(g)}, {"h", graph_json(h)}};
  try {
    const auto result = walk::compare_walks(g, h, c.model(), walk_options(c));
    item["verdict"] = result.distinguished ? "distinguished" : "indistinguishable";
    item["witness_time"] = result.witness_time ? Json(*result.witness_time) : Json(nullptr);
    item["max_deviation"] = result.max_deviation;
    if (!result.detail.empty()) item["detail"] = result.detail;
    Json samples = Json::array();
    for (const auto& s : result.samples) {
      Json row{{"time", s.time},
               {"distinguished", s.comparison.distinguished},
               {"structure_mismatch", s.comparison.structure_mismatch},
               {"max_deviation", s.comparison.max_deviation},
               {"unitarity", std::max(s.unitarity_g, s.unitarity_h)}};
      if (s.signature_g) row["signature_g"] = signature_to_json(*s.signature_g);
      if (s.signature_h) row["signature_h"] = signature_to_json(*s.signature_h);
      samples.push_back(std::move(row));
    }
    item["samples"] = std::move(samples);
  } catch (const RefusedError& e) {
    item["verdict"] = "refused";
    item["error"] = refusal_json(e);
  }
  return item;
}

Json certify_item(const graph::Graph& g, const graph::Graph& h, const RunConfig& c) {
  Json item{{"g", graph_json(g)}, {"h", graph_json(h)}};
  try {
    const auto cert = walk::certify_walks(g, h, c.model(), walk_options(c), c.timeout_ms);
    const bool applicable = cert.equivalence.verdict == cellular::Verdict::equivalent;
    item["verdict"] = !applicable ? "not-applicable" : (cert.pass ? "pass" : "fail");
    item["detail"] = cert.detail;
    if (!applicable) return item;
    item["certificate"] = bijection_to_json(*cert.equivalence.certificate);
    Json times = Json::array();
    for (const auto& t : cert.times) {
      Json terms = Json::array();
      for (const auto& m : t.terms)
        terms.push_back(Json{{"relation", m.relation},
                             {"image", m.image},
                             {"x", complex_json(m.x)},
                             {"x_image", complex_json(m.x_image)},
                             {"difference", std::abs(m.x - m.x_image)},
                             {"m", m.m},
                             {"m_image", m.m_image},
                             {"residual", m.residual},
                             {"residual_image", m.residual_image}});
      times.push_back(Json{{"time", t.time},
                           {"max_difference", t.max_difference},
                           {"max_residual", t.max_residual},
                           {"multiplicities_agree", t.multiplicities_agree},
                           {"terms", std::move(terms)}});
    }
    item["times"] = std::move(times);
  } catch (const RefusedError& e) {
    item["verdict"] = "refused";
    item["error"] = refusal_json(e);
  }
  return item;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string scalar(const Json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace

std::vector<graph::Graph> resolve_input(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (spec == "shrikhande") return {graph::shrikhande()};
  if (colon != std::string::npos) {
    if (name == "g6") {
      auto g = graph::parse_graph6(arg);
      g.set_label(arg);
      return {std::move(g)};
    }
    if (name == "rook") return {graph::rook_graph(parse_size(arg, spec))};
    if (name == "paley") return {graph::paley(parse_size(arg, spec))};
    if (name == "complete") return {graph::complete_graph(parse_size(arg, spec))};
    if (name == "cycle") return {graph::cycle_graph(parse_size(arg, spec))};
    if (name == "path") return {graph::path_graph(parse_size(arg, spec))};
    if (name == "empty") return {graph::empty_graph(parse_size(arg, spec))};
    if (name == "cfi" || name == "cfi0" || name == "cfi1") {
      auto [plain, twisted] = graph::cfi_pair(single(arg));
      if (name == "cfi0") return {std::move(plain)};
      if (name == "cfi1") return {std::move(twisted)};
      return {std::move(plain), std::move(twisted)};
    }
  }
  return read_graph6_file(spec);
}

std::vector<std::pair<graph::Graph, graph::Graph>> read_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open pair file '" + path + "'");
  std::vector<std::pair<graph::Graph, graph::Graph>> pairs;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    const auto context = path + " line " + std::to_string(number);
    if (!(fields >> b) || (fields >> extra)) throw InputError(context + ": expected two graph6 strings");
    auto parse = [&](const std::string& text) {
      try {
        auto g = graph::parse_graph6(text);
        g.set_label(path + ":" + std::to_string(number));
        return g;
      } catch (const ParseError& e) {
        throw ParseError(e.offset(), e.detail(), context);
      }
    };
    pairs.emplace_back(parse(a), parse(b));
  }
  if (pairs.empty()) throw InputError("pair file '" + path + "' contains no pairs");
  return pairs;
}

Json basis_to_json(const cellular::CellularBasis& basis) {
  const std::size_t n = basis.point_count();
  std::vector<Json> supports(basis.relation_count(), Json::array());
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) supports[basis.relation_of(u, v)].push_back(Json::array({u, v}));
  Json relations = Json::array();
  for (std::uint32_t r = 0; r < basis.relation_count(); ++r) {
    const auto& info = basis.info(r);
    relations.push_back(Json{{"id", r},
                             {"size", info.size},
                             {"diagonal", info.diagonal},
                             {"adjoint", info.adjoint},
                             {"support", std::move(supports[r])}});
  }
  Json structure = Json::array();
  for (const auto& e : basis.structure()) structure.push_back(Json::array({e.t, e.r, e.s, e.value}));
  return Json{{"points", n}, {"relations", std::move(relations)}, {"structure", std::move(structure)},
              {"cells", basis.cells()}};
}

Json signature_to_json(const walk::GreensSignature& sig) {
  Json values = Json::array();
  for (const auto& v : sig.values) values.push_back(Json::array({v.value.real(), v.value.imag(), v.multiplicity}));
  Json j{{"time", sig.time}, {"tolerance", sig.tol}, {"dim", sig.source_dim}, {"values", std::move(values)}};
  if (sig.decomposition) {
    Json rows = Json::array();
    for (const auto& t : *sig.decomposition)
      rows.push_back(Json::array({t.relation, t.x.real(), t.x.imag(), t.m, t.residual}));
    j["decomposition"] = std::move(rows);
  }
  return j;
}

Json bijection_to_json(const cellular::RelationBijection& bij) {
  return Json{{"points", bij.source->point_count()}, {"relations", bij.map.size()}, {"map", bij.map}};
}

Json run(const RunConfig& config) {
  config.validate();
  Json report{{"schema", kSchema}, {"command", to_string(config.command)}, {"config", config_json(config)}};
  Json results = Json::array();
  if (config.command == Command::closure) {
    for (const auto& in : config.inputs)
      for (const auto& g : resolve_input(in)) results.push_back(closure_item(g, config));
  } else {
    const auto pairs = collect_pairs(config);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [g, h] = pairs[i];
      Json item;
      switch (config.command) {
        case Command::equiv: item = equiv_item(g, h, config); break;
        case Command::walk: item = walk_item(g, h, config); break;
        case Command::certify: item = certify_item(g, h, config); break;
        case Command::closure: break;
      }
      Json row{{"pair", i}};
      row.update(item);
      results.push_back(std::move(row));
    }
  }
  report["results"] = std::move(results);
  return report;
}

std::string render(const Json& report, Format format) {
  if (format == Format::json) return report.dump(2) + "\n";
  std::ostringstream out;
  const auto command = report.at("command").get<std::string>();
  const auto& results = report.at("results");
  if (format == Format::csv) {
    if (command == "closure") {
      out << "label,n,k,status,relation_count,cells\n";
      for (const auto& r : results)
        out << csv_field(r["graph"]["label"].get<std::string>()) << ',' << r["graph"]["n"] << ',' << r["k"] << ','
            << scalar(r["status"]) << ',' << (r.contains("relation_count") ? scalar(r["relation_count"]) : "")
            << ',' << (r.contains("basis") ? std::to_string(r["basis"]["cells"].size()) : "") << '\n';
    } else {
      out << "pair,g,h,verdict,witness_time,max_deviation,detail\n";
      for (const auto& r : results)
        out << r["pair"] << ',' << csv_field(r["g"]["label"].get<std::string>()) << ','
            << csv_field(r["h"]["label"].get<std::string>()) << ',' << scalar(r["verdict"]) << ','
            << (r.contains("witness_time") ? scalar(r["witness_time"]) : "") << ','
            << (r.contains("max_deviation") ? scalar(r["max_deviation"]) : "") << ','
            << csv_field(r.contains("detail") ? scalar(r["detail"]) : "") << '\n';
    }
    return out.str();
  }
  for (const auto& r : results) {
    if (command == "closure") {
      out << r["graph"]["label"].get<std::string>() << " (n=" << r["graph"]["n"] << ", k=" << r["k"]
          << "): ";
      if (r["status"] == "ok") {
        out << r["relation_count"] << " relations, " << r["basis"]["cells"].size() << " cells";
        if (r.contains("srg") && !r["srg"].is_null())
          out << ", srg(" << r["srg"]["n"] << ',' << r["srg"]["k"] << ',' << r["srg"]["lambda"] << ','
              << r["srg"]["mu"] << ')';
      } else {
        out << scalar(r["status"]);
      }
      out << '\n';
      continue;
    }
    out << r["g"]["label"].get<std::string>() << " vs " << r["h"]["label"].get<std::string>() << ": "
        << scalar(r["verdict"]);
    if (r.contains("witness_time") && !r["witness_time"].is_null()) out << " at t=" << r["witness_time"];
    if (r.contains("max_deviation")) out << " (max deviation " << r["max_deviation"] << ')';
    if (r.contains("detail") && !scalar(r["detail"]).empty()) out << " - " << scalar(r["detail"]);
    if (r.contains("error")) out << " - " << scalar(r["error"]["message"]);
    out << '\n';
  }
  return out.str();
}

Json error_report(const Error& e) {
  Json j{{"schema", kSchema}, {"error", {{"code", e.code()}, {"message", e.what()}}}};
  if (const auto* r = dynamic_cast<const RefusedError*>(&e)) j["error"] = refusal_json(*r);
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) j["error"]["offset"] = p->offset();
  return j;
}

int exit_code(const Error& e) {
  const auto& code = e.code();
  if (code == "argument") return 2;
  if (code == "parse" || code == "input") return 3;
  if (code == "refused") return 4;
  return 1;
}

int exit_code(const Json& report) {
  for (const auto& r : report.at("results")) {
    if (r.contains("verdict") && r["verdict"] == "refused") return 4;
    if (r.contains("status") && r["status"] == "refused") return 4;
  }
  return 0;
}

}  // namespace walkdist::cli
