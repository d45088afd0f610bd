#include "walkdist/graph/graph6.hpp"

namespace walkdist::graph {

namespace {

constexpr char kHeader[] = ">>graph6<<";
constexpr int kBias = 63;

int sextet(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) throw ParseError(pos, "unexpected end of input");
  const int c = static_cast<unsigned char>(s[pos]);
  if (c < kBias || c > 126)
    throw ParseError(pos, "byte value " + std::to_string(c) + " outside graph6 range [63,126]");
  return c - kBias;
}

void append_order(std::string& out, std::size_t n) {
  auto put = [&out](std::size_t value, int sextets) {
    for (int i = sextets - 1; i >= 0; --i)
      out.push_back(static_cast<char>(((value >> (6 * i)) & 0x3f) + kBias));
  };
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back('~');
    put(n, 3);
  } else {
    out += "~~";
    put(n, 6);
  }
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  if (text.substr(0, sizeof(kHeader) - 1) == kHeader) pos = sizeof(kHeader) - 1;
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' ||
                           text.back() == '\t'))
    text.remove_suffix(1);

  std::size_t n = 0;
  const int first = sextet(text, pos);
  if (first != 63) {
    n = static_cast<std::size_t>(first);
    pos += 1;
  } else if (pos + 1 < text.size() && text[pos + 1] == '~') {
    for (int i = 0; i < 6; ++i) n = (n << 6) | static_cast<std::size_t>(sextet(text, pos + 2 + i));
    if (n <= 258047) throw ParseError(pos, "8-byte order form used for small order");
    pos += 8;
  } else {
    for (int i = 0; i < 3; ++i) n = (n << 6) | static_cast<std::size_t>(sextet(text, pos + 1 + i));
    if (n <= 62) throw ParseError(pos, "4-byte order form used for order <= 62");
    pos += 4;
  }
  if (n == 0) throw ParseError(pos - 1, "graph order must be at least 1");
  if (n > kGraph6MaxOrder) throw ParseError(pos - 1, "graph order " + std::to_string(n) + " too large");

  const std::size_t bits = n * (n - 1) / 2;
  const std::size_t payload = (bits + 5) / 6;
  if (text.size() - pos < payload)
    throw ParseError(text.size(), "truncated payload: expected " + std::to_string(payload) +
                                      " bytes, found " + std::to_string(text.size() - pos));
  if (text.size() - pos > payload)
    throw ParseError(pos + payload, "trailing bytes after payload");

  SquareMatrix<std::uint8_t> adj(n, 0);
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      const std::size_t at = pos + bit / 6;
      const int value = sextet(text, at);
      if ((value >> (5 - bit % 6)) & 1) adj(i, j) = adj(j, i) = 1;
    }
  }
  if (bits % 6 != 0) {
    const std::size_t at = pos + payload - 1;
    const int value = sextet(text, at);
    if (value & ((1 << (6 - bits % 6)) - 1)) throw ParseError(at, "nonzero padding bits");
  } else {
    for (std::size_t at = pos; at < pos + payload; ++at) sextet(text, at);
  }
  return Graph(std::move(adj));
}

std::string write_graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  append_order(out, n);
  int acc = 0;
  int used = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = used = 0;
      }
    }
  }
  if (used > 0) out.push_back(static_cast<char>((acc << (6 - used)) + kBias));
  return out;
}

std::vector<Graph> read_graph6_stream(std::istream& in, const std::string& source) {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (line == kHeader) continue;
    try {
      graphs.push_back(parse_graph6(line));
      graphs.back().set_label(source + ":" + std::to_string(lineno));
    } catch (const ParseError& e) {
      throw ParseError(e.offset(), e.detail(), source + " line " + std::to_string(lineno));
    }
  }
  return graphs;
}

}  // namespace walkdist::graph
