#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "walkdist/graph/graph.hpp"

namespace walkdist::graph {

inline constexpr std::size_t kGraph6MaxOrder = std::size_t{1} << 18;

/// Decode one graph6 line. A leading ">>graph6<<" header and trailing
/// whitespace are skipped. Throws ParseError carrying the offending byte offset.
Graph parse_graph6(std::string_view text);

std::string write_graph6(const Graph& g);

/// Reads every non-blank line of a graph6 stream. Parse errors are rethrown
/// with the 1-based line number prepended.
std::vector<Graph> read_graph6_stream(std::istream& in, const std::string& source = "<stream>");

}  // namespace walkdist::graph
