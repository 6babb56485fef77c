/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/graph.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace qagi {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' ||
                        s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  return s;
}

int sextet(std::string_view line, std::size_t pos, std::size_t base) {
  if (pos >= line.size())
    throw ParseError("graph6 line truncated at byte " +
                         std::to_string(base + pos),
                     base + pos);
  const int c = static_cast<unsigned char>(line[pos]);
  if (c < 63 || c > 126)
    throw ParseError("invalid graph6 byte at offset " +
                         std::to_string(base + pos),
                     base + pos);
  return c - 63;
}

} // namespace

Graph parse_graph6(std::string_view line) {
  const std::string_view trimmed = trim(line);
  std::size_t base = trimmed.empty() ? 0 : trimmed.data() - line.data();
  line = trimmed;
  if (line.starts_with(kGraph6Header)) {
    line.remove_prefix(kGraph6Header.size());
    base += kGraph6Header.size();
  }
  if (line.empty())
    throw ParseError("empty graph6 line", base);

  // Reject bad bytes first so their offset is reported, not a length error.
  for (std::size_t i = 0; i < line.size(); ++i)
    sextet(line, i, base);

  std::size_t pos = 0;
  long n = 0;
  int first = sextet(line, pos++, base);
  if (first < 63) {
    n = first;
  } else {
    int second = sextet(line, pos, base);
    if (second == 63)
      throw ParseError("graph6 vertex count exceeds supported size", base + pos);
    for (int i = 0; i < 3; ++i)
      n = (n << 6) | sextet(line, pos++, base);
  }
  if (n > kMaxVertices)
    throw ParseError("graph has " + std::to_string(n) +
                         " vertices; at most 64 are supported",
                     base);

  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t body = (bits + 5) / 6;
  if (line.size() - pos < body)
    throw ParseError("graph6 line truncated at byte " +
                         std::to_string(base + line.size()),
                     base + line.size());
  if (line.size() - pos > body)
    throw ParseError("trailing bytes in graph6 line at offset " +
                         std::to_string(base + pos + body),
                     base + pos + body);

  std::vector<std::pair<int, int>> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      int byte = sextet(line, pos + k / 6, base);
      if ((byte >> (5 - k % 6)) & 1)
        edges.emplace_back(i, j);
    }
  }
  // Padding bits must be zero in canonical graph6.
  if (bits % 6 != 0) {
    int last = sextet(line, pos + body - 1, base);
    if (last & ((1 << (6 - bits % 6)) - 1))
      throw ParseError("nonzero padding bits at offset " +
                           std::to_string(base + pos + body - 1),
                       base + pos + body - 1);
  }
  return Graph(static_cast<int>(n), edges);
}

std::string to_graph6(const Graph &g) {
  const int n = g.num_vertices();
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(static_cast<char>(126));
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0, count = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++count == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = count = 0;
      }
    }
  }
  if (count > 0)
    out.push_back(static_cast<char>((acc << (6 - count)) + 63));
  return out;
}

Graph parse_adjacency_text(std::string_view text) {
  std::vector<std::vector<std::uint8_t>> rows;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    std::vector<std::uint8_t> row;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == ',')
        continue;
      if (c != '0' && c != '1')
        throw ParseError("unexpected character '" + std::string(1, c) +
                             "' in adjacency matrix at offset " +
                             std::to_string(line_start + i),
                         line_start + i);
      row.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (!row.empty())
      rows.push_back(std::move(row));
    line_start = end + 1;
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0)
    throw ParseError("adjacency matrix is empty", 0);
  std::vector<std::uint8_t> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto &row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw ParseError("adjacency matrix is not square", std::string::npos);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  try {
    return Graph::from_adjacency(n, flat);
  } catch (const std::invalid_argument &e) {
    throw ParseError(e.what(), std::string::npos);
  }
}

std::string to_adjacency_text(const Graph &g) {
  std::ostringstream out;
  for (int i = 0; i < g.num_vertices(); ++i) {
    for (int j = 0; j < g.num_vertices(); ++j)
      out << (j ? " " : "") << (g.adjacent(i, j) ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::vector<NamedGraph> read_graph_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open " + path, std::string::npos);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string stem = std::filesystem::path(path).stem().string();

  // A file made only of 0/1/whitespace is an adjacency matrix; anything
  // else is read as graph6.
  bool matrix = !text.empty() &&
                text.find_first_not_of("01 \t\r\n,") == std::string::npos;
  std::vector<NamedGraph> out;
  if (matrix) {
    out.push_back({stem, parse_adjacency_text(text)});
    return out;
  }
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos)
      end = text.size();
    std::string_view line = trim(std::string_view(text).substr(start, end - start));
    ++line_no;
    if (line == kGraph6Header)
      line = {};
    if (!line.empty()) {
      try {
        out.push_back({stem + "#" + std::to_string(out.size() + 1),
                       parse_graph6(line)});
      } catch (const ParseError &e) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what(),
                         e.offset());
      }
    }
    start = end + 1;
  }
  if (out.empty())
    throw ParseError("no graphs found in " + path, std::string::npos);
  return out;
}

} // namespace qagi
