/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qagi {

namespace {

constexpr std::size_t kDotBlock = 4096;

double block_sum(const double *a, const double *b, std::size_t n) {
  double acc[8] = {};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    for (int k = 0; k < 8; ++k)
      acc[k] += a[i + k] * b[i + k];
  for (; i < n; ++i)
    acc[0] += a[i] * b[i];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) +
         ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

// Pairwise sum over [lo, hi) blocks.
double pairwise_dot(const double *a, const double *b, std::size_t n) {
  if (n <= kDotBlock)
    return block_sum(a, b, n);
  std::size_t blocks = (n + kDotBlock - 1) / kDotBlock;
  std::size_t half = (blocks / 2) * kDotBlock;
  return pairwise_dot(a, b, half) + pairwise_dot(a + half, b + half, n - half);
}

void check_spins(int n) {
  if (n < 0 || n > kMaxStateSpins)
    throw std::invalid_argument("state vectors support at most " +
                                std::to_string(kMaxStateSpins) + " spins");
}

} // namespace

StateVector::StateVector(int n) : num_spins(n) {
  check_spins(n);
  amplitudes.assign(std::size_t{1} << n, 0.0);
}

StateVector::StateVector(int n, std::vector<double> amps)
    : num_spins(n), amplitudes(std::move(amps)) {
  check_spins(n);
  if (amplitudes.size() != (std::size_t{1} << n))
    throw std::invalid_argument("amplitude count must be 2^n");
}

double StateVector::norm() const {
  return std::sqrt(dot(amplitudes, amplitudes));
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0)
    throw std::invalid_argument("cannot normalize the zero vector");
  scale(1.0 / nrm, amplitudes);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return pairwise_dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (double &v : x)
    v *= alpha;
}

int classical_energy(const Graph &g, SpinConfig z) {
  int e = 0;
  for (auto [i, j] : g.edges())
    e += spin_value(z, i) * spin_value(z, j);
  return e;
}

EnergyTable::EnergyTable(const Graph &g)
    : n_(g.num_vertices()), edges_(static_cast<int>(g.num_edges())) {
  if (n_ > kMaxTableSpins)
    throw std::invalid_argument("energy table supports at most " +
                                std::to_string(kMaxTableSpins) + " spins");
  if (edges_ > 2 * 255)
    throw std::invalid_argument("too many edges for packed energy table");
  const std::size_t dim = std::size_t{1} << n_;
  codes_.resize(dim);

  std::vector<int> degree(n_);
  for (int i = 0; i < n_; ++i)
    degree[i] = g.degree(i);

  // Gray-code walk: consecutive configurations differ by one spin flip.
  int energy = edges_;
  SpinConfig gray = 0;
  codes_[0] = static_cast<std::uint8_t>((energy + edges_) / 2);
  for (std::size_t k = 1; k < dim; ++k) {
    const int b = std::countr_zero(k);
    const int neighbor_sum =
        degree[b] - 2 * std::popcount(gray & g.neighbor_mask(b));
    energy -= 2 * spin_value(gray, b) * neighbor_sum;
    gray ^= SpinConfig{1} << b;
    codes_[gray] = static_cast<std::uint8_t>((energy + edges_) / 2);
  }
}

AnnealHamiltonian::AnnealHamiltonian(const Graph &g, double s)
    : AnnealHamiltonian(g, std::make_shared<const EnergyTable>(g), s) {}

AnnealHamiltonian::AnnealHamiltonian(const Graph &g,
                                     std::shared_ptr<const EnergyTable> table,
                                     double s)
    : graph_(g), table_(std::move(table)), s_(s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::invalid_argument("adiabatic parameter must lie in [0, 1]");
  if (g.num_vertices() > kMaxStateSpins)
    throw std::invalid_argument("too many spins for a full state vector");
  if (!table_ || table_->num_spins() != g.num_vertices())
    throw std::invalid_argument("energy table does not match graph");
}

void AnnealHamiltonian::apply(std::span<const double> in, std::span<double> out,
                              double shift) const {
  const std::size_t dim = this->dim();
  if (in.size() != dim || out.size() != dim)
    throw std::invalid_argument("state dimension does not match Hamiltonian");
  const int n = num_spins();
  const int edges = table_->edge_count();
  const auto codes = table_->codes();
  const double w = flip_weight();

  // Tiles of 2^tile_bits amplitudes stay cache resident while the low-bit
  // flips are applied; high-bit flips stream the partner tile.
  const int tile_bits = std::min(n, 12);
  const std::size_t tile = std::size_t{1} << tile_bits;

  for (std::size_t base = 0; base < dim; base += tile) {
    const double *x = in.data() + base;
    double *y = out.data() + base;
    const std::uint8_t *c = codes.data() + base;
    for (std::size_t j = 0; j < tile; ++j)
      y[j] = (s_ * (2 * int{c[j]} - edges) - shift) * x[j];
    if (w == 0.0)
      continue;
    for (int bit = 0; bit < tile_bits; ++bit) {
      const std::size_t h = std::size_t{1} << bit;
      for (std::size_t j0 = 0; j0 < tile; j0 += 2 * h) {
        for (std::size_t j = j0; j < j0 + h; ++j) {
          y[j] += w * x[j + h];
          y[j + h] += w * x[j];
        }
      }
    }
    for (int bit = tile_bits; bit < n; ++bit) {
      const double *partner = in.data() + (base ^ (std::size_t{1} << bit));
      for (std::size_t j = 0; j < tile; ++j)
        y[j] += w * partner[j];
    }
  }
}

StateVector AnnealHamiltonian::apply(const StateVector &v) const {
  if (v.num_spins != num_spins())
    throw std::invalid_argument("state dimension does not match Hamiltonian");
  StateVector out(v.num_spins);
  apply(v.amplitudes, out.amplitudes);
  return out;
}

void apply_flip_sum(int num_spins, std::span<const double> in,
                    std::span<double> out) {
  const std::size_t dim = std::size_t{1} << num_spins;
  if (in.size() != dim || out.size() != dim)
    throw std::invalid_argument("state dimension does not match spin count");
  std::fill(out.begin(), out.end(), 0.0);
  for (int bit = 0; bit < num_spins; ++bit) {
    const std::size_t h = std::size_t{1} << bit;
    for (std::size_t j0 = 0; j0 < dim; j0 += 2 * h) {
      for (std::size_t j = j0; j < j0 + h; ++j) {
        out[j] += in[j + h];
        out[j + h] += in[j];
      }
    }
  }
}

StateVector driver_ground_state(int num_spins) {
  StateVector v(num_spins);
  const double amp = std::pow(2.0, -0.5 * num_spins);
  for (std::size_t z = 0; z < v.dim(); ++z)
    v.amplitudes[z] = (std::popcount(z) & 1) ? -amp : amp;
  return v;
}

} // namespace qagi
