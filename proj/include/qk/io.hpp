#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"

namespace qk {

namespace detail {

// Whitespace-separated nonnegative integers; anything else is a ParseError.
inline std::vector<std::uint64_t> parse_fields(std::string_view line, int line_no) {
  std::vector<std::uint64_t> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc() || ptr != line.data() + j)
      throw ParseError(line_no, "expected a nonnegative integer, got '" +
                                    std::string(line.substr(i, j - i)) + "'");
    fields.push_back(value);
    i = j;
  }
  return fields;
}

}  // namespace detail

// Edge-list format: optional '#' comment lines, then a header line "n m",
// then m lines "u v" with 0-based endpoints. Blank lines are skipped.
inline Digraph parse_edge_list(std::string_view text) {
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  bool have_header = false;
  std::vector<Arc> arcs;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') continue;

    auto fields = detail::parse_fields(line, line_no);
    if (!have_header) {
      if (fields.size() != 2)
        throw ParseError(line_no, "header must be 'n m'");
      if (fields[0] > 0xFFFFFFFFULL)
        throw ParseError(line_no, "vertex count too large");
      n = static_cast<std::uint32_t>(fields[0]);
      m = fields[1];
      have_header = true;
      continue;
    }
    if (arcs.size() == m)
      throw ParseError(line_no, "more arcs than the header announced");
    if (fields.size() != 2)
      throw ParseError(line_no, "arc line must be 'u v'");
    // Range and loop violations surface from build() as OutOfRange/SelfLoop,
    // but cap absurd ids here so they can't silently truncate.
    if (fields[0] > 0xFFFFFFFFULL || fields[1] > 0xFFFFFFFFULL)
      throw OutOfRangeError("arc endpoint exceeds representable vertex ids");
    arcs.emplace_back(static_cast<Vertex>(fields[0]), static_cast<Vertex>(fields[1]));
  }
  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (arcs.size() != m)
    throw ParseError(line_no, "header announced " + std::to_string(m) + " arcs, found " +
                                  std::to_string(arcs.size()));
  return Digraph::build(n, arcs);
}

// Header then arcs in lexicographic order, LF line endings.
// parse_edge_list(serialize_edge_list(g)) == g.
inline std::string serialize_edge_list(const Digraph& g) {
  std::string out = std::to_string(g.order()) + ' ' + std::to_string(g.arc_count()) + '\n';
  for (const auto& [u, v] : g.arcs())
    out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  return out;
}

// DOT export; highlighted vertices are filled black.
inline std::string to_dot(const Digraph& g, const VertexSet* highlight = nullptr) {
  std::string out = "digraph G {\n";
  for (Vertex v = 0; v < g.order(); ++v) {
    out += "  " + std::to_string(v);
    if (highlight && highlight->contains(v))
      out += " [style=filled fillcolor=black fontcolor=white]";
    out += ";\n";
  }
  for (const auto& [u, v] : g.arcs())
    out += "  " + std::to_string(u) + " -> " + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace qk
