#pragma once

// Row files: one +/- row per line. A quad is four consecutive lines A, B, C,
// D followed by a blank line. Lines starting with '#' are comments.
//
// Compressed quadruple files hold one quadruple per line, the four rows as
// comma-separated integers joined by ';'.

#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "goodmat/error.hpp"
#include "goodmat/seq.hpp"

namespace goodmat {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

inline void write_quads(std::ostream& os, std::span<const DefiningQuad> quads) {
  for (const auto& q : quads) {
    for (std::size_t r = 0; r < 4; ++r) os << format_row(q.row(r)) << '\n';
    os << '\n';
  }
}

/// Rows grouped by blank lines; every group must hold exactly four rows.
inline std::vector<DefiningQuad> read_quads(std::istream& is) {
  std::vector<DefiningQuad> quads;
  std::vector<PmSequence> group;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (group.empty()) return;
    if (group.size() != 4) {
      throw InvalidInput("quad ending at line " + std::to_string(line_no) + " has " +
                         std::to_string(group.size()) + " rows, expected 4");
    }
    quads.emplace_back(SkewRow(group[0]), SymRow(group[1]), SymRow(group[2]), SymRow(group[3]));
    group.clear();
  };
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t.front() == '#') continue;
    try {
      group.push_back(parse_row(t));
    } catch (const ParseError& e) {
      throw InvalidInput("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  flush();
  return quads;
}

inline std::vector<DefiningQuad> read_quads_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open row file " + path);
  return read_quads(in);
}

inline void write_quads_file(const std::string& path, std::span<const DefiningQuad> quads) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write row file " + path);
  write_quads(out, quads);
}

inline std::string format_compressed_quad(const CompressedQuad& q) {
  return format_csv(q.a) + ';' + format_csv(q.b) + ';' + format_csv(q.c) + ';' +
         format_csv(q.d);
}

inline CompressedQuad parse_compressed_quad(std::string_view text) {
  std::vector<CompressedRow> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = std::min(text.find(';', pos), text.size());
    rows.push_back(parse_compressed_csv(text.substr(pos, semi - pos)));
    pos = semi + 1;
  }
  if (rows.size() != 4) throw InvalidInput("compressed quadruple needs four rows");
  return {rows[0], rows[1], rows[2], rows[3]};
}

}  // namespace goodmat
