/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qagi {

std::string to_string(Method m) {
  switch (m) {
  case Method::automatic:
    return "auto";
  case Method::dense:
    return "dense";
  case Method::cg:
    return "cg";
  case Method::pt_limit:
    return "pt_limit";
  }
  return "?";
}

Method parse_method(const std::string &name) {
  if (name == "auto")
    return Method::automatic;
  if (name == "dense")
    return Method::dense;
  if (name == "cg")
    return Method::cg;
  if (name == "pt" || name == "pt_limit")
    return Method::pt_limit;
  throw std::invalid_argument("unknown method '" + name + "'");
}

namespace {

void check_grid(const std::vector<double> &grid, const char *what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    if (!(s >= 0.0 && s <= 1.0))
      throw std::invalid_argument(std::string(what) + " value outside [0,1]");
    if (s > 0.999 && s < 1.0)
      throw std::invalid_argument(
          std::string(what) +
          " value in (0.999, 1): use s = 1 for the perturbative limit");
    if (i > 0 && !(s > grid[i - 1]))
      throw std::invalid_argument(std::string(what) + " is not strictly increasing");
  }
}

} // namespace

void SweepPlan::validate() const {
  if (s_values.empty())
    throw std::invalid_argument("sweep plan has no s values");
  check_grid(s_values, "s grid");
  if (!methods.empty() && methods.size() != s_values.size())
    throw std::invalid_argument("method list length differs from the s grid");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const bool at_one = s_values[i] == 1.0;
    if (at_one && methods[i] != Method::pt_limit && methods[i] != Method::automatic)
      throw std::invalid_argument("s = 1 must use the perturbative limit");
    if (!at_one && methods[i] == Method::pt_limit)
      throw std::invalid_argument("the perturbative limit applies only at s = 1");
  }
  if (!(tolerance > 0.0))
    throw std::invalid_argument("comparison tolerance must be positive");
  if (workers < 1)
    throw std::invalid_argument("worker count must be at least 1");
  if (thresholds.dense_max > kMaxDenseSpins)
    throw std::invalid_argument("dense threshold exceeds the dense solver limit");
  if (thresholds.cg_max > kMaxStateSpins)
    throw std::invalid_argument("CG threshold exceeds the state-vector limit");
  if (escalate) {
    check_grid(escalation_grid, "escalation grid");
    if (escalation_grid.empty())
      throw std::invalid_argument("escalation requested without a grid");
    if (escalation_grid.back() >= 1.0)
      throw std::invalid_argument("escalation grid must stay below s = 1");
  }
  cg.validate();
}

Method automatic_method(double s, int num_spins, const MethodThresholds &t) {
  if (s == 1.0)
    return Method::pt_limit;
  if (num_spins <= t.dense_max)
    return Method::dense;
  return Method::cg;
}

Method SweepPlan::method_at(std::size_t index, int num_spins) const {
  Method m = methods.empty() ? Method::automatic : methods.at(index);
  if (m != Method::automatic)
    return m;
  return automatic_method(s_values.at(index), num_spins, thresholds);
}

std::vector<double> parse_s_grid(const std::string &spec) {
  std::vector<double> out;
  auto number = [&](const std::string &tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception &) {
      throw std::invalid_argument("bad s value '" + tok + "'");
    }
    if (used != tok.size())
      throw std::invalid_argument("bad s value '" + tok + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string tok; std::getline(ss, tok, ':');)
      parts.push_back(tok);
    if (parts.size() != 3)
      throw std::invalid_argument("range grid must be start:stop:step");
    const double start = number(parts[0]), stop = number(parts[1]),
                 step = number(parts[2]);
    if (!(step > 0.0) || stop < start)
      throw std::invalid_argument("range grid needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= count; ++k) {
      // Round to 12 digits so 0.1 + 3 * 0.05 prints as 0.25.
      const double s = std::round((start + k * step) * 1e12) / 1e12;
      out.push_back(s);
    }
  } else {
    std::stringstream ss(spec);
    for (std::string tok; std::getline(ss, tok, ',');)
      if (!tok.empty())
        out.push_back(number(tok));
  }
  if (out.empty())
    throw std::invalid_argument("empty s grid");
  check_grid(out, "s grid");
  return out;
}

PointResult solve_point(const Graph &g, double s, Method method,
                        const SweepPlan &plan) {
  PointResult r;
  r.s = s;
  r.method = method;
  try {
    switch (method) {
    case Method::pt_limit: {
      if (s != 1.0)
        throw std::invalid_argument("the perturbative limit applies only at s = 1");
      ClassicalSpectrum spectrum = enumerate(g, plan.enumeration);
      EffectiveHamiltonian eff = build_effective(spectrum);
      LimitGroundSpace space = limit_ground_space(eff, plan.limit);
      r.fp = fingerprint(g, space, plan.observables);
      r.ok = true;
      break;
    }
    case Method::dense: {
      AnnealHamiltonian h(g, s);
      GroundStateResult res = dense_ground_state(h);
      r.fp = fingerprint(h, res, plan.observables);
      r.residual = res.final_residual_norm;
      r.ok = true;
      break;
    }
    case Method::cg: {
      if (g.num_vertices() > plan.thresholds.cg_max)
        throw std::invalid_argument("graph exceeds the CG size threshold");
      AnnealHamiltonian h(g, s);
      GroundStateResult res = solve_ground_state(h, plan.cg);
      r.iterations = res.iterations;
      r.residual = res.final_residual_norm;
      r.fp = fingerprint(h, res, plan.observables);
      r.ok = res.converged;
      if (!r.ok)
        r.error = "conjugate gradients did not converge";
      break;
    }
    case Method::automatic:
      return solve_point(g, s, automatic_method(s, g.num_vertices(), plan.thresholds),
                         plan);
    }
  } catch (const std::exception &e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

GraphSweep sweep_graph(const NamedGraph &g, const SweepPlan &plan) {
  GraphSweep out;
  out.id = g.id;
  for (std::size_t i = 0; i < plan.s_values.size(); ++i) {
    const double s = plan.s_values[i];
    out.points.push_back(
        solve_point(g.graph, s, plan.method_at(i, g.graph.num_vertices()), plan));
  }
  return out;
}

std::optional<double> fingerprint_field(const Fingerprint &fp,
                                        const std::string &field) {
  if (field == "energy")
    return fp.energy;
  if (field == "classical_energy")
    return fp.classical_energy;
  if (field == "mx")
    return fp.mx;
  if (field == "q2")
    return fp.q2;
  if (field == "q4")
    return fp.q4;
  if (field == "q2_prime")
    return fp.q2_prime;
  if (field == "degeneracy")
    return fp.degeneracy;
  throw std::invalid_argument("unknown fingerprint field '" + field + "'");
}

FieldComparison compare_sweeps(const GraphSweep &a, const GraphSweep &b,
                               const SweepPlan &plan) {
  FieldComparison out;
  for (const auto &pa : a.points) {
    if (!pa.ok)
      continue;
    auto it = std::find_if(b.points.begin(), b.points.end(),
                           [&](const PointResult &pb) { return pb.s == pa.s; });
    if (it == b.points.end() || !it->ok)
      continue;
    for (const auto &field : fingerprint_fields()) {
      if (field == "degeneracy" && !plan.compare_degeneracy)
        continue;
      auto va = fingerprint_field(pa.fp, field);
      auto vb = fingerprint_field(it->fp, field);
      if (!va || !vb)
        continue;
      const double d = std::abs(*va - *vb);
      if (d > plan.tolerance)
        out.coincident = false;
      if (d > out.separation) {
        out.separation = d;
        out.field = field;
        out.s = pa.s;
      }
    }
  }
  if (out.coincident) {
    out.field.clear();
  }
  return out;
}

DeltaCurve delta_curve(const GraphSweep &a, const GraphSweep &b,
                       const std::string &field) {
  DeltaCurve curve;
  curve.field = field;
  for (const auto &pa : a.points) {
    auto it = std::find_if(b.points.begin(), b.points.end(),
                           [&](const PointResult &pb) { return pb.s == pa.s; });
    std::optional<double> va, vb;
    if (pa.ok && it != b.points.end() && it->ok) {
      va = fingerprint_field(pa.fp, field);
      vb = fingerprint_field(it->fp, field);
    }
    if (!va || !vb) {
      curve.skipped.push_back(pa.s);
      continue;
    }
    curve.points.push_back({pa.s, *va, *vb, *va - *vb});
  }
  return curve;
}

DeltaCurve delta_curve(const NamedGraph &a, const NamedGraph &b,
                       const std::vector<double> &grid, const std::string &field,
                       const SweepPlan &plan) {
  if (a.graph.num_vertices() != b.graph.num_vertices())
    throw std::invalid_argument("delta curves need graphs of equal size");
  fingerprint_field(Fingerprint{}, field); // rejects unknown names early
  SweepPlan p = plan;
  p.s_values = grid;
  p.methods.clear();
  p.escalate = false;
  p.validate();
  return delta_curve(sweep_graph(a, p), sweep_graph(b, p), field);
}

namespace {

SweepPlan escalation_plan(const std::vector<double> &grid, const SweepPlan &plan) {
  SweepPlan p = plan;
  p.s_values = grid;
  p.methods.assign(grid.size(), Method::cg);
  p.escalate = false;
  p.validate();
  if (!grid.empty() && grid.back() >= 1.0)
    throw std::invalid_argument("escalation grid must stay below s = 1");
  return p;
}

Escalation judge(const std::string &a, const std::string &b,
                 const std::vector<double> &grid, GraphSweep sa, GraphSweep sb,
                 const SweepPlan &plan) {
  Escalation e;
  e.a = a;
  e.b = b;
  e.grid = grid;
  FieldComparison c = compare_sweeps(sa, sb, plan);
  e.distinguished = !c.coincident;
  if (e.distinguished) {
    e.s = c.s;
    e.field = c.field;
  }
  e.separation = c.separation;
  e.sweep_a = std::move(sa);
  e.sweep_b = std::move(sb);
  return e;
}

template <class Job> void parallel_for(std::size_t count, int workers, Job &&job) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto nthreads = std::min<std::size_t>(workers, count);
  for (std::size_t t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;)
        job(i);
    });
  for (auto &th : pool)
    th.join();
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

Escalation escalate_pair(const NamedGraph &a, const NamedGraph &b,
                         const std::vector<double> &grid, const SweepPlan &plan) {
  if (a.graph.num_vertices() != b.graph.num_vertices())
    throw std::invalid_argument("escalation needs graphs of equal size");
  SweepPlan p = escalation_plan(grid, plan);
  return judge(a.id, b.id, grid, sweep_graph(a, p), sweep_graph(b, p), p);
}

bool FamilyReport::all_distinguished() const {
  return std::all_of(partition.begin(), partition.end(),
                     [](const auto &g) { return g.size() == 1; });
}

const Fingerprint *FamilyReport::find(const std::string &id, double s) const {
  for (const auto &sw : sweeps)
    if (sw.id == id)
      for (const auto &p : sw.points)
        if (p.s == s && p.ok)
          return &p.fp;
  return nullptr;
}

std::vector<GraphSweep> sweep_all(const std::vector<NamedGraph> &graphs,
                                  const SweepPlan &plan) {
  plan.validate();
  std::vector<GraphSweep> sweeps(graphs.size());
  parallel_for(graphs.size(), plan.workers,
               [&](std::size_t i) { sweeps[i] = sweep_graph(graphs[i], plan); });
  return sweeps;
}

FamilyReport run_family(const std::vector<NamedGraph> &graphs,
                        const SweepPlan &plan) {
  plan.validate();
  if (graphs.empty())
    throw std::invalid_argument("no graphs to compare");
  const int n = graphs.front().graph.num_vertices();
  for (const auto &g : graphs)
    if (g.graph.num_vertices() != n)
      throw std::invalid_argument("all graphs in a family must share N");

  FamilyReport report;
  const std::size_t count = graphs.size();
  for (const auto &g : graphs)
    report.graph_ids.push_back(g.id);
  report.sweeps = sweep_all(graphs, plan);
  for (const auto &sw : report.sweeps)
    for (const auto &p : sw.points)
      report.failed_points += p.ok ? 0 : 1;

  // Pairwise coincidence on the planned grid.
  std::vector<std::pair<std::size_t, std::size_t>> coincident;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      FieldComparison c = compare_sweeps(report.sweeps[i], report.sweeps[j], plan);
      if (c.coincident)
        coincident.emplace_back(i, j);
      else if (c.separation < 10.0 * plan.tolerance)
        report.marginal.emplace_back(graphs[i].id, graphs[j].id);
    }

  if (plan.escalate && !coincident.empty()) {
    SweepPlan p = escalation_plan(plan.escalation_grid, plan);
    std::vector<std::size_t> involved;
    for (auto [i, j] : coincident) {
      involved.push_back(i);
      involved.push_back(j);
    }
    std::sort(involved.begin(), involved.end());
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
    std::map<std::size_t, GraphSweep> fine;
    std::vector<GraphSweep> computed(involved.size());
    parallel_for(involved.size(), plan.workers, [&](std::size_t k) {
      computed[k] = sweep_graph(graphs[involved[k]], p);
    });
    for (std::size_t k = 0; k < involved.size(); ++k)
      fine[involved[k]] = std::move(computed[k]);
    std::vector<std::pair<std::size_t, std::size_t>> still;
    for (auto [i, j] : coincident) {
      Escalation e = judge(graphs[i].id, graphs[j].id, plan.escalation_grid,
                           fine[i], fine[j], p);
      if (!e.distinguished)
        still.emplace_back(i, j);
      else if (e.separation < 10.0 * plan.tolerance)
        report.marginal.emplace_back(graphs[i].id, graphs[j].id);
      report.escalations.push_back(std::move(e));
    }
    coincident = std::move(still);
  }

  DisjointSets sets(count);
  for (auto [i, j] : coincident)
    sets.unite(i, j);
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < count; ++i)
    groups[sets.find(i)].push_back(graphs[i].id);
  for (auto &[root, members] : groups)
    report.partition.push_back(std::move(members));
  return report;
}

} // namespace qagi
