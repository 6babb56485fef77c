/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/classical.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qagi;

namespace {

ClassicalSpectrum brute_force(const Graph &g) {
  ClassicalSpectrum s;
  s.num_spins = g.num_vertices();
  s.edge_count = static_cast<int>(g.num_edges());
  s.ground_energy = std::numeric_limits<int>::max();
  for (SpinConfig z = 0; z < (SpinConfig{1} << s.num_spins); ++z) {
    const int e = test::oracle_energy(g, z);
    ++s.histogram[e];
    if (e < s.ground_energy) {
      s.ground_energy = e;
      s.ground_states.clear();
    }
    if (e == s.ground_energy)
      s.ground_states.push_back(z);
  }
  return s;
}

} // namespace

TEST(Classical, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int n : {1, 2, 3, 7, 10, 13}) {
    Graph g = test::random_graph(n, 0.5, rng);
    auto ref = brute_force(g);
    auto got = enumerate(g);
    EXPECT_EQ(got.ground_energy, ref.ground_energy) << n;
    EXPECT_EQ(got.ground_states, ref.ground_states) << n;
    EXPECT_EQ(got.histogram, ref.histogram) << n;
    EXPECT_TRUE(spectra_equal(got, ref));
    EXPECT_EQ(got.edge_count, ref.edge_count);
  }
}

TEST(Classical, WorkersAndFlipSymmetryAgree) {
  std::mt19937_64 rng(32);
  Graph g = test::random_graph(15, 0.45, rng);
  auto base = enumerate(g);
  for (int workers : {2, 3, 8}) {
    for (bool flip : {false, true}) {
      EnumerationOptions opt;
      opt.workers = workers;
      opt.use_flip_symmetry = flip;
      auto r = enumerate(g, opt);
      EXPECT_EQ(r.ground_states, base.ground_states);
      EXPECT_EQ(r.histogram, base.histogram);
    }
  }
}

TEST(Classical, KnownSmallCases) {
  // Odd cycle is frustrated: one unsatisfied edge, 2n ground states.
  auto c5 = enumerate(test::cycle_graph(5));
  EXPECT_EQ(c5.ground_energy, -3);
  EXPECT_EQ(c5.degeneracy(), 10u);
  auto c6 = enumerate(test::cycle_graph(6));
  EXPECT_EQ(c6.ground_energy, -6);
  EXPECT_EQ(c6.degeneracy(), 2u);
  // Degeneracy always comes in flip pairs.
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t)
    EXPECT_EQ(enumerate(test::random_graph(9, 0.5, rng)).degeneracy() % 2, 0u);
}

TEST(Classical, HistogramSumsToHilbertDimension) {
  std::mt19937_64 rng(34);
  auto s = enumerate(test::random_graph(12, 0.5, rng));
  std::uint64_t total = 0;
  for (auto [e, c] : s.histogram)
    total += c;
  EXPECT_EQ(total, 4096u);
}

TEST(Classical, GroundStateIoRoundTrip) {
  std::mt19937_64 rng(35);
  auto s = enumerate(test::random_graph(11, 0.5, rng));
  std::stringstream buf;
  write_ground_states(buf, s);
  auto [n, states] = read_ground_states(buf);
  EXPECT_EQ(n, 11);
  EXPECT_EQ(states, s.ground_states);
  std::istringstream bad("# n=4\nzz\n");
  EXPECT_THROW(read_ground_states(bad), std::invalid_argument);
}

TEST(Classical, SpectrumCsv) {
  std::ostringstream out;
  write_spectrum_csv(out, enumerate(test::cycle_graph(4)));
  EXPECT_EQ(out.str(), "energy,count\n-4,2\n0,12\n4,2\n");
}

TEST(Classical, Guards) {
  Graph big(kMaxEnumerationSpins + 1, std::vector<std::pair<int, int>>{});
  EXPECT_THROW(enumerate(big), std::invalid_argument);
  // Non-positive worker counts fall back to a single segment.
  EnumerationOptions opt;
  opt.workers = 0;
  EXPECT_EQ(enumerate(test::cycle_graph(4), opt).degeneracy(), 2u);
}
