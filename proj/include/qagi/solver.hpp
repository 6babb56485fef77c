/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include "qagi/hilbert.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qagi {

/// Largest spin count accepted by dense_ground_state.
inline constexpr int kMaxDenseSpins = 12;

struct CgSettings {
  int max_iterations = 50000;
  /// Stage one stops once ||grad|| < gradient_tolerance * sqrt(dim).
  double gradient_tolerance = 1e-10;
  /// Stage one also stops when the energy moved less than this (relative to
  /// max(1, |E|)) over the last `stall_window` iterations.
  double energy_stall_tolerance = 1e-13;
  int stall_window = 100;
  /// Polak-Ribiere restart period; 0 selects 2^ceil(n/2).
  int restart_interval = 0;
  /// Residual stage stops once ||H psi - E0 psi|| < this * sqrt(dim).
  double residual_stage_tolerance = 1e-13;
  int residual_max_iterations = 2000;
  /// 0 starts from the s = 0 ground state; any other value seeds a random
  /// initial vector.
  std::uint64_t seed = 0;
  /// Keep the running objective at zero by shifting the diagonal.
  bool variable_offset = true;
  /// Optional CSV sink: stage,iteration,objective,gradient_norm,offset
  std::ostream *diagnostics = nullptr;

  /// Throws std::invalid_argument if a tolerance is not positive or a count
  /// is out of range.
  void validate() const;
};

struct GroundStateResult {
  double energy = 0.0;
  StateVector state;
  bool converged = false;
  int iterations = 0;
  double final_residual_norm = 0.0;

  /// Number of eigenvalues within the degeneracy tolerance of the minimum
  /// (dense solver only; iterative solves report 1).
  int degeneracy = 1;
  /// Remaining orthonormal ground vectors when degeneracy > 1.
  std::vector<StateVector> partners;

  // Diagnostics.
  int line_search_fallbacks = 0;
  int monotonicity_violations = 0;
  int residual_iterations = 0;
  bool residual_stage_rejected = false;
};

/// Exact ground state by dense diagonalization of the two global spin-flip
/// sectors. Throws std::invalid_argument when n > kMaxDenseSpins.
GroundStateResult dense_ground_state(const AnnealHamiltonian &h,
                                     double degeneracy_tolerance = 1e-10);

/// Dense matrix of H(s) in the sigma^z basis (row-major, 2^n x 2^n).
std::vector<double> materialize(const AnnealHamiltonian &h);

/// <v|A|v> / <v|v>. Throws std::invalid_argument for the zero vector.
double rayleigh_quotient(const SymmetricOperator &op, std::span<const double> v);

/// Gradient of the Rayleigh quotient with respect to the amplitudes:
/// 2 (A v) / |v|^2 - 2 v <v|A|v> / |v|^4.
std::vector<double> rq_gradient(const SymmetricOperator &op,
                                std::span<const double> v);

struct LineMinimum {
  double alpha = 0.0;
  double energy = 0.0;
  /// Set when the closed-form root was unusable and a 1-D scan was used,
  /// or when the minimum lies at alpha -> infinity (the direction alone).
  bool fallback = false;
  bool at_infinity = false;
};

/// Inner products entering f(psi + alpha delta).
struct LineCoefficients {
  double dhd = 0.0; // <delta|A|delta>
  double phd = 0.0; // <psi|A|delta>
  double php = 0.0; // <psi|A|psi>
  double dd = 0.0;  // <delta|delta>
  double pd = 0.0;  // <psi|delta>
  double pp = 0.0;  // <psi|psi>
};

/// Exact minimizer of the rational function
/// (dhd a^2 + 2 phd a + php) / (dd a^2 + 2 pd a + pp).
LineMinimum line_minimize(const LineCoefficients &c);

LineMinimum line_minimize(const SymmetricOperator &op,
                          std::span<const double> psi,
                          std::span<const double> delta);

struct RayleighOptions {
  int max_iterations = 50000;
  /// Absolute bound on ||grad|| for a normalized iterate.
  double gradient_tolerance = 1e-10;
  /// Stop when the value improved by less than
  /// stall_tolerance * max(stall_floor, |value|) over stall_window steps.
  double stall_tolerance = 1e-13;
  double stall_floor = 1.0;
  int stall_window = 100;
  /// Stop as soon as the value drops below this.
  double value_target = -std::numeric_limits<double>::infinity();
  int restart_interval = 64;
  bool variable_offset = true;
  std::ostream *trace = nullptr;
  std::string stage = "rq";
  /// Orthonormal vectors whose span is projected out of every iterate.
  std::span<const std::vector<double>> deflate = {};
};

struct RayleighOutcome {
  std::vector<double> vector;
  double value = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  int fallbacks = 0;
  int monotonicity_violations = 0;
};

/// Nonlinear conjugate-gradient minimization of the Rayleigh quotient of
/// `op` with exact line searches (Polak-Ribiere directions). With
/// variable_offset the diagonal is re-shifted after every step so that the
/// shifted objective at the iterate is zero; the accumulated shift is the
/// returned value. Throws std::runtime_error if a NaN appears.
RayleighOutcome minimize_rayleigh(const SymmetricOperator &op,
                                  std::vector<double> start,
                                  const RayleighOptions &options);

/// Stage one: ground state of h by variable-offset conjugate gradients.
/// `start` warm-starts the iteration (e.g. from a neighboring s).
GroundStateResult cg_ground_state(const AnnealHamiltonian &h,
                                  const CgSettings &settings,
                                  const StateVector *start = nullptr);

/// Stage two: minimizes ||(H - E0) psi||^2 / ||psi||^2 with E0 fixed at the
/// stage-one energy. Keeps the stage-one state if the residual grows.
GroundStateResult residual_refine(const AnnealHamiltonian &h,
                                  GroundStateResult result,
                                  const CgSettings &settings);

/// cg_ground_state followed by residual_refine when stage one converged.
GroundStateResult solve_ground_state(const AnnealHamiltonian &h,
                                     const CgSettings &settings,
                                     const StateVector *start = nullptr);

/// ||H v - e v||.
double residual_norm(const AnnealHamiltonian &h, const StateVector &v, double e);

} // namespace qagi
