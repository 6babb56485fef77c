/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qagi/classical.hpp"
#include "qagi/graph.hpp"
#include "qagi/observables.hpp"
#include "qagi/perturbation.hpp"
#include "qagi/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qagi {

enum class Method { automatic, dense, cg, pt_limit };

std::string to_string(Method m);
/// Accepts "auto", "dense", "cg", "pt" / "pt_limit".
Method parse_method(const std::string &name);

struct MethodThresholds {
  /// Largest N solved by dense diagonalization under Method::automatic.
  int dense_max = 10;
  /// Largest N solved by conjugate gradients under Method::automatic.
  int cg_max = kMaxStateSpins;
};

/// pt_limit at s = 1, dense up to t.dense_max spins, CG otherwise.
Method automatic_method(double s, int num_spins, const MethodThresholds &t);

struct SweepPlan {
  /// Strictly increasing values in [0, 1]. s = 1 is solved perturbatively
  /// and values in (0.999, 1) are rejected.
  std::vector<double> s_values;
  /// Empty (automatic everywhere) or one entry per s value.
  std::vector<Method> methods;
  ObservableFlags observables;
  /// Absolute tolerance for declaring two fingerprint fields equal.
  double tolerance = 1e-6;
  /// Also compare the classical ground degeneracy at s = 1.
  bool compare_degeneracy = false;
  MethodThresholds thresholds;
  CgSettings cg;
  LimitOptions limit;
  EnumerationOptions enumeration;
  /// Graphs processed concurrently.
  int workers = 1;
  /// Rerun coincident pairs on escalation_grid with CG.
  bool escalate = false;
  std::vector<double> escalation_grid;

  /// Throws std::invalid_argument describing the first violation.
  void validate() const;
  Method method_at(std::size_t index, int num_spins) const;
};

/// Parses "start:stop:step" or a comma-separated list.
std::vector<double> parse_s_grid(const std::string &spec);

struct PointResult {
  double s = 0.0;
  Method method = Method::automatic;
  bool ok = false;
  std::string error;
  Fingerprint fp;
  int iterations = 0;
  double residual = 0.0;
};

struct GraphSweep {
  std::string id;
  std::vector<PointResult> points;
};

/// One point of one graph. Solver problems are captured in the result
/// (ok = false) rather than thrown.
PointResult solve_point(const Graph &g, double s, Method method,
                        const SweepPlan &plan);

/// Runs every s value of the plan on one graph.
GraphSweep sweep_graph(const NamedGraph &g, const SweepPlan &plan);

/// sweep_graph for every graph, plan.workers graphs at a time; output in
/// input order.
std::vector<GraphSweep> sweep_all(const std::vector<NamedGraph> &graphs,
                                  const SweepPlan &plan);

struct FieldComparison {
  bool coincident = true;
  /// Field and s with the largest separation (when not coincident).
  std::string field;
  double s = 0.0;
  double separation = 0.0;
};

/// Compares the points both sweeps solved successfully at equal s.
FieldComparison compare_sweeps(const GraphSweep &a, const GraphSweep &b,
                               const SweepPlan &plan);

/// Names understood by fingerprint_field / delta_curve.
inline const std::vector<std::string> &fingerprint_fields() {
  static const std::vector<std::string> names = {
      "energy", "classical_energy", "mx", "q2", "q4", "q2_prime", "degeneracy"};
  return names;
}
std::optional<double> fingerprint_field(const Fingerprint &fp,
                                        const std::string &field);

struct Escalation {
  std::string a, b;
  std::vector<double> grid;
  bool distinguished = false;
  std::optional<double> s;
  std::string field;
  double separation = 0.0;
  GraphSweep sweep_a, sweep_b;
};

/// CG fingerprints of both graphs on `grid` (s < 1 only).
Escalation escalate_pair(const NamedGraph &a, const NamedGraph &b,
                         const std::vector<double> &grid, const SweepPlan &plan);

struct DeltaPoint {
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;
};

struct DeltaCurve {
  std::string field;
  std::vector<DeltaPoint> points;
  /// s values where either solve failed or the field is absent.
  std::vector<double> skipped;
};

/// Per-point differences a - b of `field` from two sweeps.
DeltaCurve delta_curve(const GraphSweep &a, const GraphSweep &b,
                       const std::string &field);
DeltaCurve delta_curve(const NamedGraph &a, const NamedGraph &b,
                       const std::vector<double> &grid, const std::string &field,
                       const SweepPlan &plan);

struct FamilyReport {
  std::vector<std::string> graph_ids;
  std::vector<GraphSweep> sweeps;
  /// Groups of graphs not distinguished at any probed point, each sorted by
  /// input order; groups ordered by their first member.
  std::vector<std::vector<std::string>> partition;
  std::vector<Escalation> escalations;
  /// Separated pairs whose best separation is below 10 * tolerance.
  std::vector<std::pair<std::string, std::string>> marginal;
  int failed_points = 0;

  bool all_distinguished() const;
  const Fingerprint *find(const std::string &id, double s) const;
};

/// Fingerprints every graph at every plan point, partitions the family and
/// optionally escalates coincident pairs. Throws std::invalid_argument if
/// the graphs differ in size or the plan is invalid.
FamilyReport run_family(const std::vector<NamedGraph> &graphs,
                        const SweepPlan &plan);

} // namespace qagi
