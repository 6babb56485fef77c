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
#include "qagi/perturbation.hpp"
#include "qagi/solver.hpp"

#include <optional>
#include <vector>

namespace qagi {

/// Probability distribution over sigma^z configurations, either dense
/// (indexed by configuration) or sparse (explicit support).
struct ConfigDistribution {
  int num_spins = 0;
  std::vector<double> dense;
  std::vector<SpinConfig> configs;
  std::vector<double> weights;

  bool is_dense() const { return !dense.empty(); }
  /// Calls f(z, p) for every configuration carrying weight.
  template <class F> void for_each(F &&f) const {
    if (is_dense()) {
      for (std::size_t z = 0; z < dense.size(); ++z)
        if (dense[z] != 0.0)
          f(static_cast<SpinConfig>(z), dense[z]);
    } else {
      for (std::size_t k = 0; k < configs.size(); ++k)
        f(configs[k], weights[k]);
    }
  }
};

/// |amplitude|^2. Throws std::invalid_argument unless |norm^2 - 1| <= 1e-8.
ConfigDistribution distribution(const StateVector &state);
/// Projector average over result.state and result.partners.
ConfigDistribution distribution(const GroundStateResult &result);
/// Projector-averaged probabilities of the limiting ground space.
ConfigDistribution distribution(const LimitGroundSpace &space);

/// Symmetric matrix of <sigma^z_i sigma^z_j> with unit diagonal.
struct CorrelationMatrix {
  int n = 0;
  std::vector<double> entries; // row-major n x n

  double operator()(int i, int j) const { return entries[i * n + j]; }
};

CorrelationMatrix correlations(const ConfigDistribution &p);
CorrelationMatrix correlations(const StateVector &state);
CorrelationMatrix correlations(const LimitGroundSpace &space);

/// <sigma^z_i> for every site.
std::vector<double> single_site_moments(const ConfigDistribution &p);

/// sqrt of the mean squared off-diagonal correlator.
double q2(const CorrelationMatrix &corr);

/// Largest order accepted by q2n (2n <= 6) and largest spin count.
inline constexpr int kMaxQ2nOrder = 3;
inline constexpr int kMaxQ2nSpins = 26;

/// (1/N^{2n}) sum over all index tuples (i_1..i_{2n}), repeats included, of
/// <sigma_{i_1} ... sigma_{i_{2n}}>^2. No square root.
double q2n(const ConfigDistribution &p, int n);

/// (1/N^2) sum_{i,j} <H_p sigma_i sigma_j>^2 with diagonal moments.
double q2_prime(const ConfigDistribution &p, const Graph &g);

/// <H_p> = sum_z p(z) E_p(z).
double classical_expectation(const ConfigDistribution &p, const Graph &g);

struct Fingerprint {
  double s = 0.0;
  double energy = 0.0;           // <H(s)>
  double classical_energy = 0.0; // <H_p>
  double mx = 0.0;               // 2 <H_d> = <sum_i sigma^x_i>
  double q2 = 0.0;
  std::optional<double> q4;
  std::optional<double> q2_prime;
  /// Classical ground degeneracy; set on perturbative s -> 1 points.
  std::optional<double> degeneracy;
};

struct ObservableFlags {
  bool q4 = false;
  bool q2_prime = false;
};

/// Fingerprint of a ground state (projector average when degenerate).
Fingerprint fingerprint(const AnnealHamiltonian &h, const GroundStateResult &r,
                        const ObservableFlags &flags = {});
Fingerprint fingerprint(const AnnealHamiltonian &h, const StateVector &state,
                        const ObservableFlags &flags = {});

/// s -> 1 fingerprint from first-order degenerate perturbation theory.
/// E = E_G, Mx = 2 * lowest eigenvalue of H_eff.
Fingerprint fingerprint(const Graph &g, const LimitGroundSpace &space,
                        const ObservableFlags &flags = {});

} // namespace qagi
