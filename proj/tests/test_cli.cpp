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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI; stderr is folded into the captured output unless discarded.
CliRun cli(const std::string &args, bool keep_stderr = true) {
  const std::string cmd = std::string(QAGI_CLI_PATH) + " " + args +
                          (keep_stderr ? " 2>&1" : " 2>/dev/null");
  CliRun r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST(Cli, FingerprintAtDriverPoint) {
  CliRun r = cli("fingerprint -i fixture:G1 --s-grid 0 --observables q4");
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream in(r.out);
  auto rows = qagi::read_fingerprint_csv(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].fp.energy, -7.0, 1e-10);
  EXPECT_NEAR(rows[0].fp.mx, -14.0, 1e-10);
  EXPECT_NEAR(rows[0].fp.q2, 0.0, 1e-10);
  EXPECT_NEAR(*rows[0].fp.q4, (3.0 * 196 - 28) / std::pow(14.0, 4), 1e-12);
}

TEST(Cli, ClassicalCsv) {
  CliRun r = cli("classical -i fixture:G3 -i fixture:G4");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("graph_id,n,edges,E_G,degeneracy"), std::string::npos);
  EXPECT_NE(r.out.find(",16,24,-18,2"), std::string::npos) << r.out;
}

TEST(Cli, CompareExitCodes) {
  // Two relabelings of one graph cannot be separated.
  std::mt19937_64 rng(81);
  qagi::Graph g = qagi::test::random_graph(8, 0.5, rng);
  const std::string path = tmp("qagi_cli_pair.g6");
  std::ofstream(path) << qagi::to_graph6(g) << '\n'
                      << qagi::to_graph6(qagi::permute(g, qagi::test::random_permutation(8, rng)))
                      << '\n';
  CliRun same = cli("compare -i " + path + " --s-grid 0.5,1", false);
  EXPECT_EQ(same.code, 2) << same.out;
  auto j = nlohmann::json::parse(same.out);
  EXPECT_EQ(j["partition"].size(), 1u);

  CliRun split = cli("compare -i fixture:G1 -i fixture:G2 --s-grid 0.24,1");
  EXPECT_EQ(split.code, 0) << split.out;
}

TEST(Cli, DeltaAndFixture) {
  const std::string out = tmp("qagi_cli_delta.csv");
  CliRun r = cli("delta -i fixture:G1 -i fixture:G2 --s-grid 0.5,1 --fields mx,q2 --out " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, qagi::kDeltaCsvVersion);
  CliRun list = cli("fixture --list");
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("G4"), std::string::npos);
  CliRun g6 = cli("fixture --name G1 --format g6");
  EXPECT_EQ(g6.code, 0);
  EXPECT_EQ(qagi::parse_graph6(g6.out.substr(0, g6.out.find('\n'))),
            qagi::fixture_graph("G1"));
}

TEST(Cli, UsageErrors) {
  const std::string empty = tmp("qagi_cli_empty.g6");
  std::ofstream(empty).close();
  EXPECT_EQ(cli("classical -i " + empty).code, 1);
  EXPECT_EQ(cli("fingerprint -i fixture:G1").code, 1);          // missing grid
  EXPECT_EQ(cli("fingerprint -i fixture:G1 --s-grid 0.9995").code, 1);
  EXPECT_EQ(cli("fingerprint -i fixture:G1 --s-grid 0.5 --method nope").code, 1);
  EXPECT_EQ(cli("bogus").code, 1);
}

TEST(Cli, SolverFailureExitCode) {
  // Forcing dense diagonalization at N = 14 fails the point.
  CliRun r = cli("fingerprint -i fixture:G1 --s-grid 0.5 --method dense");
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("failed: "), std::string::npos);
}
