/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qagi/graph.hpp"
#include "qagi/hilbert.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace qagi {

/// Largest graph accepted by enumerate().
inline constexpr int kMaxEnumerationSpins = 30;

/// Exact spectrum of the Ising problem Hamiltonian over all 2^n
/// configurations.
struct ClassicalSpectrum {
  int num_spins = 0;
  int edge_count = 0;
  int ground_energy = 0;
  /// Every configuration attaining ground_energy, ascending.
  std::vector<SpinConfig> ground_states;
  /// energy -> number of configurations.
  std::map<int, std::uint64_t> histogram;

  std::size_t degeneracy() const { return ground_states.size(); }
};

struct EnumerationOptions {
  /// Number of contiguous Gray-code segments processed concurrently.
  int workers = 1;
  /// Enumerate only configurations with the top spin up and mirror the rest
  /// through the global flip. Counts stay literal.
  bool use_flip_symmetry = false;
};

/// Walks all configurations in Gray-code order with single-flip energy
/// updates. Throws std::invalid_argument above kMaxEnumerationSpins.
ClassicalSpectrum enumerate(const Graph &g, const EnumerationOptions &options = {});

/// True iff the two energy histograms are identical.
bool spectra_equal(const ClassicalSpectrum &a, const ClassicalSpectrum &b);

/// "energy,count" rows preceded by a header line.
void write_spectrum_csv(std::ostream &out, const ClassicalSpectrum &spectrum);

/// One hexadecimal configuration per line, preceded by "# n=<spins>".
void write_ground_states(std::ostream &out, const ClassicalSpectrum &spectrum);

/// Inverse of write_ground_states; returns (num_spins, configurations).
std::pair<int, std::vector<SpinConfig>> read_ground_states(std::istream &in);

} // namespace qagi
