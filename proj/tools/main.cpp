/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

// qagi: command-line front end.
//
//   qagi classical   --input FILE...            E_G and degeneracy per graph
//   qagi fingerprint --input FILE... --s-grid   fingerprint table
//   qagi compare     --input FILE... --s-grid   family partition (JSON)
//   qagi delta       --input A --input B        difference curves
//   qagi spectrum    --input FILE...            adjacency spectra
//   qagi fixture     --name G1                  built-in graphs
//
// Exit codes: 0 success, 1 usage or input error, 2 coincidences remain,
// 3 solver failure.

#include "qagi/classical.hpp"
#include "qagi/graph.hpp"
#include "qagi/perturbation.hpp"
#include "qagi/pipeline.hpp"
#include "qagi/report_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCoincident = 2;
constexpr int kExitSolver = 3;

struct Options {
  std::vector<std::string> inputs;
  std::string out = "-";
  std::string format = "csv";
  std::string s_grid;
  std::vector<std::string> observables;
  std::string method = "auto";
  std::string escalate;
  std::vector<std::string> fields = {"q2", "energy"};
  int workers = 1;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  int max_iter = 50000;
  int dense_max = 10;
  int cg_max = qagi::kMaxStateSpins;
  bool compare_degeneracy = false;
  bool flip_symmetry = false;
  std::string histogram;
  std::string ground_dir;
  std::string coo;
  std::string fixture;
  bool list = false;
};

std::vector<qagi::NamedGraph> load_inputs(const std::vector<std::string> &paths) {
  std::vector<qagi::NamedGraph> graphs;
  for (const auto &p : paths) {
    if (p.rfind("fixture:", 0) == 0) {
      const std::string name = p.substr(8);
      graphs.push_back({name, qagi::fixture_graph(name)});
      continue;
    }
    for (auto &g : qagi::read_graph_file(p))
      graphs.push_back(std::move(g));
  }
  if (graphs.empty())
    throw std::invalid_argument("no input graphs");
  return graphs;
}

// Output stream for --out ("-" is stdout).
class Sink {
public:
  explicit Sink(const std::string &path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_)
        throw std::invalid_argument("cannot open output file " + path);
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

qagi::SweepPlan make_plan(const Options &o) {
  qagi::SweepPlan plan;
  if (o.s_grid.empty())
    throw std::invalid_argument("--s-grid is required");
  plan.s_values = qagi::parse_s_grid(o.s_grid);
  const qagi::Method m = qagi::parse_method(o.method);
  if (m != qagi::Method::automatic)
    plan.methods.assign(plan.s_values.size(), m);
  for (const auto &name : o.observables) {
    if (name == "q4")
      plan.observables.q4 = true;
    else if (name == "q2p" || name == "q2_prime")
      plan.observables.q2_prime = true;
    else
      throw std::invalid_argument("unknown observable '" + name + "'");
  }
  plan.tolerance = o.tolerance;
  plan.compare_degeneracy = o.compare_degeneracy;
  plan.workers = o.workers;
  plan.thresholds.dense_max = o.dense_max;
  plan.thresholds.cg_max = o.cg_max;
  plan.cg.seed = o.seed;
  plan.cg.max_iterations = o.max_iter;
  plan.enumeration.use_flip_symmetry = o.flip_symmetry;
  if (!o.escalate.empty()) {
    plan.escalate = true;
    plan.escalation_grid = qagi::parse_s_grid(o.escalate);
  }
  plan.validate();
  return plan;
}

int failed_exit(const std::vector<qagi::GraphSweep> &sweeps) {
  for (const auto &sw : sweeps)
    for (const auto &p : sw.points)
      if (!p.ok) {
        std::cerr << "solver failure: " << sw.id << " at s=" << p.s << ": " << p.error
                  << '\n';
        return kExitSolver;
      }
  return kExitOk;
}

int cmd_classical(const Options &o) {
  auto graphs = load_inputs(o.inputs);
  qagi::EnumerationOptions opt;
  opt.workers = o.workers;
  opt.use_flip_symmetry = o.flip_symmetry;
  std::vector<std::string> ids;
  std::vector<qagi::ClassicalSpectrum> spectra;
  for (const auto &g : graphs) {
    ids.push_back(g.id);
    spectra.push_back(qagi::enumerate(g.graph, opt));
  }
  Sink sink(o.out);
  qagi::write_classical_csv(sink.stream(), ids, spectra);
  if (!o.histogram.empty()) {
    std::ofstream h(o.histogram);
    h << "graph_id,energy,count\n";
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (auto [e, c] : spectra[i].histogram)
        h << ids[i] << ',' << e << ',' << c << '\n';
  }
  auto file_stem = [](std::string id) {
    for (char &c : id)
      if (c == '/' || c == '#')
        c = '_';
    return id;
  };
  if (!o.ground_dir.empty()) {
    std::filesystem::create_directories(o.ground_dir);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::ofstream f(std::filesystem::path(o.ground_dir) / (file_stem(ids[i]) + ".hex"));
      qagi::write_ground_states(f, spectra[i]);
    }
  }
  if (!o.coo.empty()) {
    std::filesystem::create_directories(o.coo);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::ofstream f(std::filesystem::path(o.coo) / (file_stem(ids[i]) + ".coo.csv"));
      qagi::write_effective_coo(f, qagi::build_effective(spectra[i]));
    }
  }
  return kExitOk;
}

int cmd_fingerprint(const Options &o) {
  auto graphs = load_inputs(o.inputs);
  qagi::SweepPlan plan = make_plan(o);
  std::vector<qagi::GraphSweep> sweeps = qagi::sweep_all(graphs, plan);
  Sink sink(o.out);
  if (o.format == "json")
    qagi::write_fingerprint_json(sink.stream(), sweeps);
  else
    qagi::write_fingerprint_csv(sink.stream(), sweeps);
  return failed_exit(sweeps);
}

int cmd_compare(const Options &o) {
  auto graphs = load_inputs(o.inputs);
  qagi::SweepPlan plan = make_plan(o);
  qagi::FamilyReport report = qagi::run_family(graphs, plan);
  Sink sink(o.out);
  if (o.format == "csv")
    qagi::write_fingerprint_csv(sink.stream(), report.sweeps);
  else
    qagi::write_report_json(sink.stream(), report, plan);
  std::cerr << report.partition.size() << " groups for " << graphs.size()
            << " graphs\n";
  for (const auto &group : report.partition)
    if (group.size() > 1) {
      std::cerr << "not distinguished:";
      for (const auto &id : group)
        std::cerr << ' ' << id;
      std::cerr << '\n';
    }
  if (report.failed_points > 0)
    return kExitSolver;
  return report.all_distinguished() ? kExitOk : kExitCoincident;
}

int cmd_delta(const Options &o) {
  auto graphs = load_inputs(o.inputs);
  if (graphs.size() != 2)
    throw std::invalid_argument("delta needs exactly two graphs");
  qagi::SweepPlan plan = make_plan(o);
  auto a = qagi::sweep_graph(graphs[0], plan);
  auto b = qagi::sweep_graph(graphs[1], plan);
  std::vector<qagi::DeltaCurve> curves;
  for (const auto &f : o.fields)
    curves.push_back(qagi::delta_curve(a, b, f));
  Sink sink(o.out);
  qagi::write_delta_csv(sink.stream(), graphs[0].id, graphs[1].id, curves);
  return failed_exit({a, b});
}

int cmd_spectrum(const Options &o) {
  auto graphs = load_inputs(o.inputs);
  Sink sink(o.out);
  auto &out = sink.stream();
  out << "graph_id,eigenvalue,multiplicity\n";
  for (const auto &g : graphs)
    for (const auto &e : qagi::adjacency_spectrum(g.graph))
      out << g.id << ',' << qagi::format_number(e.value) << ',' << e.multiplicity
          << '\n';
  for (const auto &g : graphs)
    if (auto sig = qagi::check_srg(g.graph))
      std::cerr << g.id << ": strongly regular " << qagi::to_string(*sig) << '\n';
  return kExitOk;
}

int cmd_fixture(const Options &o) {
  Sink sink(o.out);
  if (o.list) {
    for (const auto &n : qagi::fixture_names())
      sink.stream() << n << '\n';
    return kExitOk;
  }
  if (o.fixture.empty())
    throw std::invalid_argument("--name or --list is required");
  qagi::Graph g = qagi::fixture_graph(o.fixture);
  if (o.format == "g6")
    sink.stream() << qagi::to_graph6(g) << '\n';
  else
    sink.stream() << qagi::to_adjacency_text(g);
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Graph fingerprints from quantum annealing ground states"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--input,-i", o.inputs,
                    "graph6 or adjacency-matrix file, or fixture:<name>")
        ->required();
    cmd->add_option("--out,-o", o.out, "output path ('-' for stdout)");
    cmd->add_option("--workers", o.workers, "concurrent workers")
        ->check(CLI::PositiveNumber);
  };
  auto add_sweep = [&](CLI::App *cmd) {
    add_common(cmd);
    cmd->add_option("--s-grid", o.s_grid, "start:stop:step or comma list")->required();
    cmd->add_option("--observables", o.observables, "extra observables: q4, q2p")
        ->delimiter(',');
    cmd->add_option("--method", o.method, "auto, dense, cg or pt");
    cmd->add_option("--seed", o.seed, "CG start vector seed (0 = driver state)");
    cmd->add_option("--tolerance", o.tolerance, "fingerprint comparison tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", o.max_iter, "CG iteration limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dense-max", o.dense_max, "largest N for automatic dense solves");
    cmd->add_option("--cg-max", o.cg_max, "largest N for automatic CG solves");
    cmd->add_flag("--flip-symmetry", o.flip_symmetry,
                  "halve classical enumeration using the global flip");
  };

  auto *classical = app.add_subcommand("classical", "classical ground energy and degeneracy");
  add_common(classical);
  classical->add_option("--histogram", o.histogram, "write energy histograms here");
  classical->add_option("--ground-states", o.ground_dir,
                        "directory for hex lists of ground configurations");
  classical->add_option("--effective", o.coo,
                        "directory for effective-Hamiltonian COO files");
  classical->add_flag("--flip-symmetry", o.flip_symmetry,
                      "halve the enumeration using the global flip");

  auto *fingerprint = app.add_subcommand("fingerprint", "fingerprint table over an s grid");
  add_sweep(fingerprint);
  fingerprint->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto *compare = app.add_subcommand("compare", "partition a family by fingerprints");
  add_sweep(compare);
  compare->add_option("--format", o.format, "json report or csv fingerprints")
      ->check(CLI::IsMember({"csv", "json"}));
  compare->add_option("--escalate", o.escalate, "CG grid for coincident pairs");
  compare->add_flag("--compare-degeneracy", o.compare_degeneracy,
                    "also compare classical degeneracy at s = 1");
  o.format = "csv";

  auto *delta = app.add_subcommand("delta", "difference curves between two graphs");
  add_sweep(delta);
  delta->add_option("--fields", o.fields, "fingerprint fields")->delimiter(',');

  auto *spectrum = app.add_subcommand("spectrum", "adjacency spectra");
  add_common(spectrum);

  auto *fixture = app.add_subcommand("fixture", "print a built-in graph");
  fixture->add_option("--name", o.fixture, "fixture name");
  fixture->add_flag("--list", o.list, "list fixture names");
  fixture->add_option("--format", o.format, "matrix or g6")
      ->check(CLI::IsMember({"matrix", "g6", "csv"}));
  fixture->add_option("--out,-o", o.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }
  if (compare->parsed() && compare->count("--format") == 0)
    o.format = "json";

  try {
    if (classical->parsed())
      return cmd_classical(o);
    if (fingerprint->parsed())
      return cmd_fingerprint(o);
    if (compare->parsed())
      return cmd_compare(o);
    if (delta->parsed())
      return cmd_delta(o);
    if (spectrum->parsed())
      return cmd_spectrum(o);
    if (fixture->parsed())
      return cmd_fixture(o);
  } catch (const qagi::ParseError &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
