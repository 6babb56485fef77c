/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/report_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <charconv>
#include <sstream>

using namespace qagi;

namespace {

std::vector<GraphSweep> sample_sweeps() {
  SweepPlan p;
  p.s_values = {0.0, 0.35, 1.0};
  p.observables = {true, true};
  return sweep_all({{"G1", fixture_graph("G1")}, {"G2", fixture_graph("G2")}}, p);
}

} // namespace

TEST(Numbers, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-7), "-7");
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng) * std::pow(10.0, k % 20 - 10);
    const std::string text = format_number(x);
    double back = 0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    ASSERT_EQ(back, x) << text;
  }
}

TEST(FingerprintCsv, RoundTrip) {
  auto sweeps = sample_sweeps();
  std::stringstream buf;
  write_fingerprint_csv(buf, sweeps);
  std::string first;
  std::getline(buf, first);
  EXPECT_EQ(first, kFingerprintCsvVersion);
  buf.seekg(0);
  auto rows = read_fingerprint_csv(buf);
  ASSERT_EQ(rows.size(), 6u);
  std::size_t k = 0;
  for (const auto &sw : sweeps)
    for (const auto &pt : sw.points) {
      const auto &row = rows[k++];
      EXPECT_EQ(row.graph_id, sw.id);
      EXPECT_EQ(row.s, pt.s);
      EXPECT_EQ(row.method, to_string(pt.method));
      EXPECT_TRUE(row.ok);
      EXPECT_EQ(row.fp.energy, pt.fp.energy);
      EXPECT_EQ(row.fp.classical_energy, pt.fp.classical_energy);
      EXPECT_EQ(row.fp.mx, pt.fp.mx);
      EXPECT_EQ(row.fp.q2, pt.fp.q2);
      EXPECT_EQ(row.fp.q4, pt.fp.q4);
      EXPECT_EQ(row.fp.q2_prime, pt.fp.q2_prime);
      EXPECT_EQ(row.fp.degeneracy, pt.fp.degeneracy);
    }
  EXPECT_EQ(rows[2].method, "pt_limit");
  EXPECT_TRUE(rows[2].fp.degeneracy.has_value());
  EXPECT_FALSE(rows[1].fp.degeneracy.has_value());
}

TEST(FingerprintCsv, FailedRowsAndErrors) {
  GraphSweep sw{"x", {}};
  PointResult bad;
  bad.s = 0.5;
  bad.method = Method::dense;
  bad.error = "too big";
  sw.points.push_back(bad);
  std::stringstream buf;
  write_fingerprint_csv(buf, {sw});
  EXPECT_NE(buf.str().find("x,0.5,dense,failed: too big,,,,,,,"), std::string::npos);
  auto rows = read_fingerprint_csv(buf);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].ok);
  std::istringstream no_version("graph_id,s\n");
  EXPECT_THROW(read_fingerprint_csv(no_version), std::invalid_argument);
  std::istringstream short_row(std::string(kFingerprintCsvVersion) +
                               "\ngraph_id,s,method,status,E,E_G,Mx,Q2,Q4,Q2p,degeneracy\na,0.5\n");
  EXPECT_THROW(read_fingerprint_csv(short_row), std::invalid_argument);
}

TEST(DeltaCsv, Layout) {
  DeltaCurve c{"q2", {{0.5, 0.25, 0.125, 0.125}}, {}};
  std::ostringstream out;
  write_delta_csv(out, "A", "B", {c});
  EXPECT_EQ(out.str(), std::string(kDeltaCsvVersion) +
                           "\n# a=A b=B\nfield,s,a,b,delta\nq2,0.5,0.25,0.125,0.125\n");
}

TEST(ClassicalCsv, Layout) {
  std::ostringstream out;
  write_classical_csv(out, {"c4"}, {enumerate(test::cycle_graph(4))});
  EXPECT_EQ(out.str(), "graph_id,n,edges,E_G,degeneracy\nc4,4,4,-4,2\n");
}

TEST(Json, ReportStructure) {
  SweepPlan p;
  p.s_values = {0.0};
  p.escalate = true;
  p.escalation_grid = {0.6};
  std::mt19937_64 rng(72);
  FamilyReport r = run_family({{"a", test::random_graph(7, 0.5, rng)},
                               {"b", test::random_graph(7, 0.5, rng)}},
                              p);
  std::ostringstream out;
  write_report_json(out, r, p);
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["graph_ids"], (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(j["fingerprints"].size(), 2u);
  EXPECT_EQ(j["escalations"].size(), 1u);
  EXPECT_EQ(j["escalations"][0]["outcome"], "distinguished");
  EXPECT_TRUE(j["all_distinguished"].get<bool>());
  EXPECT_EQ(j["plan"]["s_values"][0], 0.0);

  std::ostringstream fj;
  write_fingerprint_json(fj, r.sweeps);
  auto arr = nlohmann::json::parse(fj.str());
  ASSERT_TRUE(arr.is_array());
  EXPECT_EQ(arr[0]["graph_id"], "a");
  EXPECT_DOUBLE_EQ(arr[0]["fingerprint"]["mx"].get<double>(), -7.0);
}
