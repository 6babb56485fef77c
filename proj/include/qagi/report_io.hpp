/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qagi/classical.hpp"
#include "qagi/pipeline.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qagi {

/// First line of every fingerprint CSV.
inline constexpr const char *kFingerprintCsvVersion = "# qagi-fingerprint-csv v1";
inline constexpr const char *kDeltaCsvVersion = "# qagi-delta-csv v1";

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

/// Columns: graph_id,s,method,status,E,E_G,Mx,Q2,Q4,Q2p,degeneracy.
/// Optional values and failed points leave their cells empty; the error
/// text of a failed point goes into status as "failed: <message>".
void write_fingerprint_csv(std::ostream &out, const std::vector<GraphSweep> &sweeps);

struct FingerprintRow {
  std::string graph_id;
  double s = 0.0;
  std::string method;
  bool ok = false;
  Fingerprint fp;
};

/// Inverse of write_fingerprint_csv. Throws std::invalid_argument on a
/// missing version line or malformed row.
std::vector<FingerprintRow> read_fingerprint_csv(std::istream &in);

/// Columns: field,s,a,b,delta, one block per curve; a and b name the
/// graphs in a "# a=<id> b=<id>" line after the version line.
void write_delta_csv(std::ostream &out, const std::string &a_id,
                     const std::string &b_id, const std::vector<DeltaCurve> &curves);

/// Columns: graph_id,n,edges,E_G,degeneracy.
void write_classical_csv(std::ostream &out, const std::vector<std::string> &ids,
                         const std::vector<ClassicalSpectrum> &spectra);

/// Family report with plan summary, fingerprints, partition and escalations.
void write_report_json(std::ostream &out, const FamilyReport &report,
                       const SweepPlan &plan);

/// Fingerprint table as a JSON array of records.
void write_fingerprint_json(std::ostream &out, const std::vector<GraphSweep> &sweeps);

} // namespace qagi
