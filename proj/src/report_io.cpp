/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/report_io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qagi {

using nlohmann::json;

std::string format_number(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell(const std::optional<double> &v) {
  return v ? format_number(*v) : std::string();
}

// CSV cells never need quoting except for free-form error text.
std::string quote(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

double parse_number(const std::string &s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad number '" + s + "' in CSV");
  return v;
}

std::optional<double> parse_optional(const std::string &s) {
  if (s.empty())
    return std::nullopt;
  return parse_number(s);
}

const char *kFingerprintHeader = "graph_id,s,method,status,E,E_G,Mx,Q2,Q4,Q2p,degeneracy";

json fingerprint_json(const Fingerprint &fp) {
  json j = {{"s", fp.s},
            {"energy", fp.energy},
            {"classical_energy", fp.classical_energy},
            {"mx", fp.mx},
            {"q2", fp.q2}};
  if (fp.q4)
    j["q4"] = *fp.q4;
  if (fp.q2_prime)
    j["q2_prime"] = *fp.q2_prime;
  if (fp.degeneracy)
    j["degeneracy"] = *fp.degeneracy;
  return j;
}

json point_json(const std::string &id, const PointResult &p) {
  json j = {{"graph_id", id}, {"s", p.s}, {"method", to_string(p.method)}, {"ok", p.ok}};
  if (p.ok) {
    j["fingerprint"] = fingerprint_json(p.fp);
  } else {
    j["error"] = p.error;
  }
  if (p.method == Method::cg) {
    j["iterations"] = p.iterations;
    j["residual"] = p.residual;
  }
  return j;
}

json sweeps_json(const std::vector<GraphSweep> &sweeps) {
  json arr = json::array();
  for (const auto &sw : sweeps)
    for (const auto &p : sw.points)
      arr.push_back(point_json(sw.id, p));
  return arr;
}

} // namespace

void write_fingerprint_csv(std::ostream &out, const std::vector<GraphSweep> &sweeps) {
  out << kFingerprintCsvVersion << '\n' << kFingerprintHeader << '\n';
  for (const auto &sw : sweeps)
    for (const auto &p : sw.points) {
      out << quote(sw.id) << ',' << format_number(p.s) << ',' << to_string(p.method)
          << ',';
      if (!p.ok) {
        out << quote("failed: " + p.error) << ",,,,,,,\n";
        continue;
      }
      const auto &fp = p.fp;
      out << "ok," << format_number(fp.energy) << ','
          << format_number(fp.classical_energy) << ',' << format_number(fp.mx) << ','
          << format_number(fp.q2) << ',' << cell(fp.q4) << ',' << cell(fp.q2_prime)
          << ',' << cell(fp.degeneracy) << '\n';
    }
}

std::vector<FingerprintRow> read_fingerprint_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != kFingerprintCsvVersion)
    throw std::invalid_argument("missing fingerprint CSV version line");
  if (!std::getline(in, line) || line != kFingerprintHeader)
    throw std::invalid_argument("unexpected fingerprint CSV header");
  std::vector<FingerprintRow> rows;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    auto c = split_csv(line);
    if (c.size() != 11)
      throw std::invalid_argument("fingerprint CSV row has " +
                                  std::to_string(c.size()) + " cells");
    FingerprintRow r;
    r.graph_id = c[0];
    r.s = parse_number(c[1]);
    r.method = c[2];
    r.ok = c[3] == "ok";
    r.fp.s = r.s;
    if (r.ok) {
      r.fp.energy = parse_number(c[4]);
      r.fp.classical_energy = parse_number(c[5]);
      r.fp.mx = parse_number(c[6]);
      r.fp.q2 = parse_number(c[7]);
      r.fp.q4 = parse_optional(c[8]);
      r.fp.q2_prime = parse_optional(c[9]);
      r.fp.degeneracy = parse_optional(c[10]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_delta_csv(std::ostream &out, const std::string &a_id,
                     const std::string &b_id, const std::vector<DeltaCurve> &curves) {
  out << kDeltaCsvVersion << '\n'
      << "# a=" << a_id << " b=" << b_id << '\n'
      << "field,s,a,b,delta\n";
  for (const auto &c : curves)
    for (const auto &p : c.points)
      out << c.field << ',' << format_number(p.s) << ',' << format_number(p.a) << ','
          << format_number(p.b) << ',' << format_number(p.delta) << '\n';
}

void write_classical_csv(std::ostream &out, const std::vector<std::string> &ids,
                         const std::vector<ClassicalSpectrum> &spectra) {
  if (ids.size() != spectra.size())
    throw std::invalid_argument("id and spectrum counts differ");
  out << "graph_id,n,edges,E_G,degeneracy\n";
  for (std::size_t i = 0; i < ids.size(); ++i)
    out << quote(ids[i]) << ',' << spectra[i].num_spins << ','
        << spectra[i].edge_count << ',' << spectra[i].ground_energy << ','
        << spectra[i].degeneracy() << '\n';
}

void write_report_json(std::ostream &out, const FamilyReport &report,
                       const SweepPlan &plan) {
  json j;
  json p = {{"s_values", plan.s_values},
            {"tolerance", plan.tolerance},
            {"compare_degeneracy", plan.compare_degeneracy},
            {"q4", plan.observables.q4},
            {"q2_prime", plan.observables.q2_prime},
            {"escalate", plan.escalate}};
  if (plan.escalate)
    p["escalation_grid"] = plan.escalation_grid;
  j["plan"] = p;
  j["graph_ids"] = report.graph_ids;
  j["fingerprints"] = sweeps_json(report.sweeps);
  j["partition"] = report.partition;
  j["all_distinguished"] = report.all_distinguished();
  j["failed_points"] = report.failed_points;
  json marg = json::array();
  for (const auto &[a, b] : report.marginal)
    marg.push_back({a, b});
  j["marginal"] = marg;
  json esc = json::array();
  for (const auto &e : report.escalations) {
    json x = {{"pair", {e.a, e.b}},
              {"grid", e.grid},
              {"outcome", e.distinguished ? "distinguished" : "still-coincident"},
              {"separation", e.separation}};
    if (e.s) {
      x["s"] = *e.s;
      x["field"] = e.field;
    }
    x["fingerprints"] = sweeps_json({e.sweep_a, e.sweep_b});
    esc.push_back(std::move(x));
  }
  j["escalations"] = esc;
  out << j.dump(2) << '\n';
}

void write_fingerprint_json(std::ostream &out, const std::vector<GraphSweep> &sweeps) {
  out << sweeps_json(sweeps).dump(2) << '\n';
}

} // namespace qagi
