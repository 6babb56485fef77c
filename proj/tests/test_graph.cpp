/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace qagi;
using qagi::test::random_graph;

namespace {

// Independent graph6 decoder for n < 63: bit k of the upper-triangle
// stream (column-major, i < j) is bit (5 - k % 6) of byte 1 + k / 6.
std::vector<std::vector<int>> decode_g6(const std::string &s) {
  const int n = s[0] - 63;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = s[1 + k / 6] - 63;
      const int bit = (byte >> (5 - k % 6)) & 1;
      a[i][j] = a[j][i] = bit;
    }
  return a;
}

std::string temp_file(const std::string &name, const std::string &content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

} // namespace

TEST(Graph, EdgeListAndMasks) {
  std::vector<std::pair<int, int>> e = {{0, 1}, {1, 2}, {2, 0}, {1, 0}};
  Graph g(4, e);
  EXPECT_EQ(g.num_vertices(), 4);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(3, 0));
  EXPECT_EQ(g.degree(3), 0);
  EXPECT_EQ(g.neighbor_mask(1), 0b101u);
  EXPECT_EQ((g.degree_sequence()), (std::vector<int>{2, 2, 2, 0}));
}

TEST(Graph, RejectsBadInput) {
  std::vector<std::pair<int, int>> loop = {{1, 1}};
  EXPECT_THROW(Graph(3, loop), std::invalid_argument);
  std::vector<std::pair<int, int>> range = {{0, 3}};
  EXPECT_THROW(Graph(3, range), std::invalid_argument);
  std::vector<std::pair<int, int>> none;
  EXPECT_THROW(Graph(65, none), std::invalid_argument);
  std::vector<std::uint8_t> asym = {0, 1, 0, 0};
  EXPECT_THROW(Graph::from_adjacency(2, asym), std::invalid_argument);
  std::vector<std::uint8_t> diag = {1, 0, 0, 0};
  EXPECT_THROW(Graph::from_adjacency(2, diag), std::invalid_argument);
}

TEST(Graph6, KnownStrings) {
  Graph k2 = parse_graph6("A_");
  EXPECT_EQ(k2.num_vertices(), 2);
  EXPECT_TRUE(k2.adjacent(0, 1));
  Graph petersen = parse_graph6("IheA@GUAo");
  ASSERT_EQ(petersen.num_vertices(), 10);
  EXPECT_EQ(petersen.num_edges(), 15u);
  auto sig = check_srg(petersen);
  ASSERT_TRUE(sig.has_value());
  EXPECT_EQ(*sig, (SrgSignature{10, 3, 0, 1}));
  EXPECT_EQ(parse_graph6(">>graph6<<A_\n"), k2);
}

TEST(Graph6, MatchesIndependentDecoder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 40;
    Graph g = random_graph(n, 0.4, rng);
    const std::string text = to_graph6(g);
    auto a = decode_g6(text);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        ASSERT_EQ(a[i][j], g.adjacent(i, j) ? 1 : 0);
    EXPECT_EQ(parse_graph6(text), g);
  }
}

TEST(Graph6, LargeVertexCountRoundTrip) {
  std::mt19937_64 rng(5);
  Graph g = random_graph(64, 0.5, rng);
  const std::string text = to_graph6(g);
  EXPECT_EQ(text[0], '~');
  EXPECT_EQ(parse_graph6(text), g);
}

TEST(Graph6, ErrorsCarryOffsets) {
  try {
    parse_graph6("IheA@GU");
    FAIL() << "truncated input accepted";
  } catch (const ParseError &e) {
    EXPECT_NE(e.offset(), std::string::npos);
  }
  try {
    parse_graph6("Ihe A@GUAo");
    FAIL() << "invalid byte accepted";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.offset(), 3u);
  }
  EXPECT_THROW(parse_graph6("A_x"), ParseError);  // trailing byte
  EXPECT_THROW(parse_graph6("A`"), ParseError);   // padding bit set
  EXPECT_THROW(parse_graph6(""), ParseError);
}

TEST(AdjacencyText, RoundTripAndErrors) {
  std::mt19937_64 rng(3);
  Graph g = random_graph(9, 0.5, rng);
  EXPECT_EQ(parse_adjacency_text(to_adjacency_text(g)), g);
  EXPECT_THROW(parse_adjacency_text("0 1\n0 0\n"), ParseError);
  EXPECT_THROW(parse_adjacency_text("0 1 1\n1 0 0\n"), ParseError);
  EXPECT_THROW(parse_adjacency_text("0 2\n2 0\n"), ParseError);
  EXPECT_THROW(parse_adjacency_text(""), ParseError);
}

TEST(ReadGraphFile, Graph6AndMatrixFiles) {
  auto g6 = temp_file("qagi_two.g6", "A_\nIheA@GUAo\n");
  auto graphs = read_graph_file(g6);
  ASSERT_EQ(graphs.size(), 2u);
  EXPECT_EQ(graphs[0].id, "qagi_two#1");
  EXPECT_EQ(graphs[1].graph.num_edges(), 15u);
  auto mat = temp_file("qagi_k3.txt", "0 1 1\n1 0 1\n1 1 0\n");
  auto k3 = read_graph_file(mat);
  ASSERT_EQ(k3.size(), 1u);
  EXPECT_EQ(k3[0].graph.num_edges(), 3u);
  EXPECT_THROW(read_graph_file(temp_file("qagi_empty.g6", "")), ParseError);
  EXPECT_THROW(read_graph_file("/nonexistent/qagi.g6"), ParseError);
  EXPECT_THROW(read_graph_file(temp_file("qagi_bad.g6", "A_\n!!\n")), ParseError);
}

TEST(Graph, PermuteAndComplement) {
  std::mt19937_64 rng(9);
  Graph g = random_graph(12, 0.3, rng);
  auto p = test::random_permutation(12, rng);
  Graph h = permute(g, p);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      EXPECT_EQ(g.adjacent(i, j), h.adjacent(p[i], p[j]));
  EXPECT_TRUE(test::oracle_isomorphic(g, h));
  std::vector<int> bad(12, 0);
  EXPECT_THROW(permute(g, bad), std::invalid_argument);
  Graph c = complement(g);
  EXPECT_EQ(c.num_edges() + g.num_edges(), 66u);
  EXPECT_EQ(complement(c), g);
}

TEST(Srg, CheckSignature) {
  EXPECT_FALSE(check_srg(test::complete_graph(5)).has_value());
  EXPECT_FALSE(check_srg(Graph(5, std::vector<std::pair<int, int>>{})).has_value());
  auto c5 = check_srg(test::cycle_graph(5));
  ASSERT_TRUE(c5.has_value());
  EXPECT_EQ(*c5, (SrgSignature{5, 2, 0, 1}));
  EXPECT_FALSE(check_srg(test::cycle_graph(6)).has_value());
  EXPECT_EQ(to_string(SrgSignature{16, 6, 2, 2}), "(16,6,2,2)");
}

TEST(Spectrum, CycleEigenvalues) {
  // C_n has eigenvalues 2 cos(2 pi k / n).
  auto spec = adjacency_spectrum(test::cycle_graph(6));
  std::vector<std::pair<double, int>> expect = {{-2, 1}, {-1, 2}, {1, 2}, {2, 1}};
  ASSERT_EQ(spec.size(), expect.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    EXPECT_NEAR(spec[i].value, expect[i].first, 1e-12);
    EXPECT_EQ(spec[i].multiplicity, expect[i].second);
  }
}

TEST(Fixtures, CospectralNonIsomorphicPairs) {
  for (auto [a, b] : {std::pair{"G1", "G2"}, std::pair{"G3", "G4"}}) {
    Graph ga = fixture_graph(a), gb = fixture_graph(b);
    EXPECT_EQ(ga.num_vertices(), gb.num_vertices());
    auto sa = adjacency_spectrum(ga), sb = adjacency_spectrum(gb);
    ASSERT_EQ(sa.size(), sb.size()) << a;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      EXPECT_NEAR(sa[i].value, sb[i].value, 1e-9);
      EXPECT_EQ(sa[i].multiplicity, sb[i].multiplicity);
    }
    // Both pairs are regular graphs.
    auto da = ga.degree_sequence();
    EXPECT_TRUE(std::all_of(da.begin(), da.end(), [&](int d) { return d == da[0]; }));
    EXPECT_FALSE(test::oracle_isomorphic(ga, gb)) << a << " vs " << b;
  }
  EXPECT_EQ(fixture_graph("G1").num_vertices(), 14);
  EXPECT_EQ(fixture_graph("G3").num_vertices(), 16);
  EXPECT_THROW(fixture_graph("G9"), std::invalid_argument);
}
