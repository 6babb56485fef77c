/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace qagi {

std::vector<double> materialize(const AnnealHamiltonian &h) {
  if (h.num_spins() > kMaxDenseSpins)
    throw std::invalid_argument("dense matrices are limited to " +
                                std::to_string(kMaxDenseSpins) + " spins");
  const std::size_t dim = h.dim();
  std::vector<double> m(dim * dim, 0.0);
  const double w = h.flip_weight();
  for (std::size_t z = 0; z < dim; ++z) {
    m[z * dim + z] = h.diagonal(z);
    for (int i = 0; i < h.num_spins(); ++i)
      m[z * dim + (z ^ (std::size_t{1} << i))] += w;
  }
  return m;
}

GroundStateResult dense_ground_state(const AnnealHamiltonian &h,
                                     double degeneracy_tolerance) {
  const int n = h.num_spins();
  if (n > kMaxDenseSpins)
    throw std::invalid_argument(
        "dense diagonalization is limited to " + std::to_string(kMaxDenseSpins) +
        " spins; use cg_ground_state for larger graphs");
  if (n == 0)
    throw std::invalid_argument("empty graph has no spins");

  // H commutes with the global flip F, so it splits into the sectors
  // F = +1 and F = -1. Representatives r have the top spin up; the sector
  // basis vector is (|r> + sign |~r>) / sqrt(2).
  const std::size_t half = h.dim() / 2;
  const SpinConfig top = SpinConfig{1} << (n - 1);
  const SpinConfig low_mask = top - 1;
  const double w = h.flip_weight();

  struct Sector {
    double sign;
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
  };
  std::vector<Sector> sectors;
  for (double sign : {1.0, -1.0}) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(half, half);
    for (std::size_t r = 0; r < half; ++r) {
      m(r, r) += h.diagonal(r);
      for (int i = 0; i + 1 < n; ++i)
        m(r ^ (std::size_t{1} << i), r) += w;
      m(r ^ low_mask, r) += sign * w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    if (eig.info() != Eigen::Success)
      throw std::runtime_error("dense eigensolver failed");
    sectors.push_back({sign, eig.eigenvalues(), eig.eigenvectors()});
  }

  double emin = std::min(sectors[0].values[0], sectors[1].values[0]);
  GroundStateResult result;
  result.energy = emin;
  result.converged = true;
  result.degeneracy = 0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const auto &sec : sectors) {
    for (Eigen::Index k = 0; k < sec.values.size(); ++k) {
      if (sec.values[k] > emin + degeneracy_tolerance)
        break;
      StateVector v(n);
      for (std::size_t r = 0; r < half; ++r) {
        v.amplitudes[r] = sec.vectors(r, k) * inv_sqrt2;
        v.amplitudes[r ^ (top | low_mask)] = sec.sign * sec.vectors(r, k) * inv_sqrt2;
      }
      if (result.degeneracy++ == 0)
        result.state = std::move(v);
      else
        result.partners.push_back(std::move(v));
    }
  }
  result.final_residual_norm = residual_norm(h, result.state, result.energy);
  return result;
}

} // namespace qagi
