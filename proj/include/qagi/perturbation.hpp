/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qagi/classical.hpp"
#include "qagi/hilbert.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qagi {

/// First-order degenerate perturbation theory around s = 1. Within the
/// classical ground manifold the driver acts as 1/2 times the adjacency
/// matrix of the single-flip graph on the ground configurations.
struct EffectiveHamiltonian {
  int num_spins = 0;
  /// Ground configurations, ascending; index = basis position.
  std::vector<SpinConfig> basis;
  /// CSR adjacency of the single-flip graph; every stored entry is 1/2.
  std::vector<std::uint64_t> row_offsets;
  std::vector<std::uint32_t> columns;

  std::size_t dim() const { return basis.size(); }
  std::size_t nonzeros() const { return columns.size(); }
  /// Matrix element <basis[a]| H_eff |basis[b]>.
  double entry(std::size_t a, std::size_t b) const;
  /// y = H_eff x.
  void apply(const std::vector<double> &x, std::vector<double> &y) const;
};

/// Builds H_eff from the ground configurations (any order, no duplicates).
EffectiveHamiltonian build_effective(int num_spins,
                                     std::vector<SpinConfig> ground_states);
EffectiveHamiltonian build_effective(const ClassicalSpectrum &spectrum);

/// Writes "row,col,value" triplets (0-based basis positions) with a header.
void write_effective_coo(std::ostream &out, const EffectiveHamiltonian &h);

/// Ground vector of H_eff stored on its support only.
struct SparseGroundVector {
  std::vector<std::uint32_t> support; // basis positions
  std::vector<double> amplitudes;
};

struct LimitGroundSpace {
  int num_spins = 0;
  /// Lowest eigenvalue of H_eff; E(s) = s E_G + (1 - s) eigenvalue + O((1-s)^2).
  double eigenvalue = 0.0;
  /// Orthonormal basis of the (possibly degenerate) lowest eigenspace.
  std::vector<SparseGroundVector> vectors;
  /// Projector-averaged probabilities (1/m) sum_k v_k(z)^2 per basis
  /// position of the effective Hamiltonian.
  std::vector<double> probabilities;
  std::vector<SpinConfig> basis;
  /// Number of connected components of the single-flip graph.
  std::size_t components = 0;

  int multiplicity() const { return static_cast<int>(vectors.size()); }
};

struct LimitOptions {
  /// Components up to this size are diagonalized densely.
  std::size_t dense_limit = 2000;
  double dense_tolerance = 1e-9;
  double iterative_tolerance = 1e-8;
};

/// Lowest eigenspace of H_eff, component by component.
LimitGroundSpace limit_ground_space(const EffectiveHamiltonian &h,
                                    const LimitOptions &options = {});

/// Transverse magnetization <sum_i sigma^x_i> as s -> 1.
double limit_mx(const LimitGroundSpace &space);

} // namespace qagi
