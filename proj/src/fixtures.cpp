/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/graph.hpp"

#include <array>

namespace qagi {

namespace {

// Rows are written with 1-based vertex numbering in mind; conversion to the
// 0-based Graph happens in from_rows().
constexpr std::array<std::string_view, 14> kG1Rows = {
    "01000001000011", "10000000110010", "00010000110001", "00100101100000",
    "00000100011001", "00011010001000", "00000101000101", "10010010000100",
    "01110000000100", "01101000001000", "00001100010010", "00000011100010",
    "11000000001100", "10101010000000",
};

constexpr std::array<std::string_view, 16> kG3Rows = {
    "0011000000010000", "0000110000001000", "1000100000000100",
    "1000010000000010", "0110010000000000", "0101100000000000",
    "0000000111000000", "0000001010100000", "0000001100010000",
    "0000001000001100", "0000000100001010", "1000000010000001",
    "0100000001100000", "0010000001000001", "0001000000100001",
    "0000000000010110",
};

template <std::size_t N>
std::vector<std::uint8_t> from_rows(const std::array<std::string_view, N> &rows) {
  std::vector<std::uint8_t> flat;
  flat.reserve(N * N);
  for (auto row : rows)
    for (char c : row)
      flat.push_back(static_cast<std::uint8_t>(c - '0'));
  return flat;
}

// Sets the symmetric pair of entries for 1-based indices (i, j).
void set_entry(std::vector<std::uint8_t> &a, int n, int i, int j,
               std::uint8_t v) {
  a[(i - 1) * n + (j - 1)] = v;
  a[(j - 1) * n + (i - 1)] = v;
}

} // namespace

Graph fixture_graph(std::string_view name) {
  if (name == "G1" || name == "G2") {
    constexpr int n = 14;
    auto a = from_rows(kG1Rows);
    if (name == "G2") {
      // Move the edges {1,2},{3,4} onto {1,3},{2,4}.
      set_entry(a, n, 1, 2, 0);
      set_entry(a, n, 3, 4, 0);
      set_entry(a, n, 1, 3, 1);
      set_entry(a, n, 2, 4, 1);
    }
    return Graph::from_adjacency(n, a);
  }
  if (name == "G3" || name == "G4") {
    constexpr int n = 16;
    auto a = from_rows(kG3Rows);
    if (name == "G4") {
      for (int r : {1, 2})
        for (int c : {3, 4, 5, 6})
          set_entry(a, n, r, c, static_cast<std::uint8_t>(1 - a[(r - 1) * n + (c - 1)]));
    }
    return Graph::from_adjacency(n, a);
  }
  throw std::invalid_argument("unknown fixture graph: " + std::string(name));
}

std::vector<std::string> fixture_names() { return {"G1", "G2", "G3", "G4"}; }

} // namespace qagi
