/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qagi/graph.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace qagi {

/// Index of a sigma^z basis configuration. Bit i set means spin i is down
/// (sigma^z_i = -1); bit i clear means spin i is up (+1).
using SpinConfig = std::uint64_t;

inline int spin_value(SpinConfig z, int i) {
  return 1 - 2 * static_cast<int>((z >> i) & 1u);
}

/// Largest spin count for which a full state vector may be allocated.
inline constexpr int kMaxStateSpins = 26;

/// Largest spin count for which a per-configuration energy table is built.
inline constexpr int kMaxTableSpins = 30;

/// Real amplitudes over the 2^n sigma^z basis.
struct StateVector {
  int num_spins = 0;
  std::vector<double> amplitudes;

  StateVector() = default;
  explicit StateVector(int n);
  StateVector(int n, std::vector<double> amps);

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
  void normalize();
  double &operator[](SpinConfig z) { return amplitudes[z]; }
  double operator[](SpinConfig z) const { return amplitudes[z]; }
};

/// Deterministic blocked dot product; repeated calls give identical bits.
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

void scale(double alpha, std::span<double> x);

/// Ising energy sum over edges of s_i s_j for one configuration.
int classical_energy(const Graph &g, SpinConfig z);

/// Problem-Hamiltonian energy of every configuration, packed one byte per
/// entry. Energies have the parity of the edge count, so (E + |E|) / 2 fits
/// in a byte for every graph with at most 510 edges.
class EnergyTable {
public:
  explicit EnergyTable(const Graph &g);

  int num_spins() const { return n_; }
  int edge_count() const { return edges_; }
  std::size_t size() const { return codes_.size(); }
  int energy(SpinConfig z) const { return 2 * int{codes_[z]} - edges_; }
  std::span<const std::uint8_t> codes() const { return codes_; }

private:
  int n_ = 0;
  int edges_ = 0;
  std::vector<std::uint8_t> codes_;
};

/// Symmetric real operator acting on dense vectors. `shift` is subtracted
/// from every diagonal element inside the kernel, so callers can evaluate
/// (A - shift I) x without a separate pass.
class SymmetricOperator {
public:
  virtual ~SymmetricOperator() = default;
  virtual std::size_t dim() const = 0;
  virtual void apply(std::span<const double> in, std::span<double> out,
                     double shift = 0.0) const = 0;
};

/// H(s) = (1 - s) * (1/2) sum_i sigma^x_i + s * sum_<ij> sigma^z_i sigma^z_j
/// applied matrix-free in the sigma^z basis.
class AnnealHamiltonian final : public SymmetricOperator {
public:
  AnnealHamiltonian(const Graph &g, double s);
  AnnealHamiltonian(const Graph &g, std::shared_ptr<const EnergyTable> table,
                    double s);

  const Graph &graph() const { return graph_; }
  double s() const { return s_; }
  int num_spins() const { return graph_.num_vertices(); }
  std::size_t dim() const override { return std::size_t{1} << num_spins(); }
  const EnergyTable &table() const { return *table_; }
  std::shared_ptr<const EnergyTable> shared_table() const { return table_; }

  /// Coefficient of each single spin flip: (1 - s) / 2.
  double flip_weight() const { return 0.5 * (1.0 - s_); }

  /// Diagonal element s * E_p(z).
  double diagonal(SpinConfig z) const { return s_ * table_->energy(z); }

  void apply(std::span<const double> in, std::span<double> out,
             double shift = 0.0) const override;

  StateVector apply(const StateVector &v) const;

private:
  Graph graph_;
  std::shared_ptr<const EnergyTable> table_;
  double s_ = 0.0;
};

/// out = sum_i sigma^x_i in (the unweighted transverse-field sum).
void apply_flip_sum(int num_spins, std::span<const double> in,
                    std::span<double> out);

/// Ground state of H(0): amplitude (-1)^popcount(z) / sqrt(2^n).
StateVector driver_ground_state(int num_spins);

} // namespace qagi
