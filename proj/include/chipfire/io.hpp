#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chipfire/error.hpp"
#include "chipfire/multigraph.hpp"

namespace chipfire {

// Graph text format, one item per line:
//   # comment
//   vertex NAME        declares a vertex (possibly isolated)
//   SRC DST MULT       MULT parallel edges, MULT a positive decimal integer
// Blank lines are ignored and repeated arcs accumulate.

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

inline std::string at_line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace detail

inline Multigraph parse_graph(std::string_view text) {
  std::vector<std::string> names;
  std::vector<ArcSpec> arcs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto tokens = detail::split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    for (const auto& tok : tokens) {
      if (!is_valid_name(tok)) {
        throw Error(ErrorKind::kBadName, detail::at_line(line_no, "malformed token '" + tok + "'"));
      }
    }
    if (tokens.size() == 2 && tokens[0] == "vertex") {
      names.push_back(tokens[1]);
      continue;
    }
    if (tokens.size() != 3) {
      throw Error(ErrorKind::kParseError,
                  detail::at_line(line_no, "expected 'SRC DST MULT' or 'vertex NAME'"));
    }
    const std::string& mult_text = tokens[2];
    const bool negative = mult_text.front() == '-';
    const std::string_view digits = std::string_view(mult_text).substr(negative ? 1 : 0);
    std::int64_t mult = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), mult);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(ErrorKind::kParseError,
                  detail::at_line(line_no, "multiplicity '" + mult_text + "' is not an integer"));
    }
    if (negative && mult > 0) {
      throw Error(ErrorKind::kNegativeMultiplicity,
                  detail::at_line(line_no, "negative multiplicity " + mult_text));
    }
    if (mult == 0) {
      throw Error(ErrorKind::kParseError, detail::at_line(line_no, "multiplicity must be positive"));
    }
    if (tokens[0] == tokens[1]) {
      throw Error(ErrorKind::kLoopEdge,
                  detail::at_line(line_no, "loop edge on vertex '" + tokens[0] + "'"));
    }
    arcs.push_back({tokens[0], tokens[1], mult});
  }
  if (names.empty() && arcs.empty()) {
    throw Error(ErrorKind::kParseError, "graph has no vertices");
  }
  return Multigraph::build(names, arcs);
}

/// Canonical text: every vertex declared in index order, then arcs in
/// row-major order. parse_graph(format_graph(g)) == g.
inline std::string format_graph(const Multigraph& g) {
  std::string out;
  for (const auto& name : g.names()) out += "vertex " + name + "\n";
  for (Vertex u = 0; u < g.size(); ++u) {
    for (Vertex v = 0; v < g.size(); ++v) {
      if (g.edges(u, v) > 0) {
        out += g.name(u) + " " + g.name(v) + " " + std::to_string(g.edges(u, v)) + "\n";
      }
    }
  }
  return out;
}

/// FNV-1a 64 over the canonical text, as 16 hex digits.
inline std::string graph_digest(const Multigraph& g) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : format_graph(g)) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace chipfire
