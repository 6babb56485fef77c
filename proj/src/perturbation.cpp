/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/perturbation.hpp"
#include "qagi/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qagi {

double EffectiveHamiltonian::entry(std::size_t a, std::size_t b) const {
  if (a >= dim() || b >= dim())
    throw std::out_of_range("effective basis index out of range");
  auto first = columns.begin() + static_cast<std::ptrdiff_t>(row_offsets[a]);
  auto last = columns.begin() + static_cast<std::ptrdiff_t>(row_offsets[a + 1]);
  return std::binary_search(first, last, static_cast<std::uint32_t>(b)) ? 0.5 : 0.0;
}

void EffectiveHamiltonian::apply(const std::vector<double> &x,
                                 std::vector<double> &y) const {
  y.assign(dim(), 0.0);
  for (std::size_t a = 0; a < dim(); ++a) {
    double acc = 0.0;
    for (std::uint64_t p = row_offsets[a]; p < row_offsets[a + 1]; ++p)
      acc += x[columns[p]];
    y[a] = 0.5 * acc;
  }
}

EffectiveHamiltonian build_effective(int num_spins,
                                     std::vector<SpinConfig> ground_states) {
  if (num_spins < 1 || num_spins > kMaxVertices)
    throw std::invalid_argument("spin count out of range");
  if (ground_states.size() > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("ground manifold too large");
  std::sort(ground_states.begin(), ground_states.end());
  if (std::adjacent_find(ground_states.begin(), ground_states.end()) !=
      ground_states.end())
    throw std::invalid_argument("duplicate ground configuration");

  EffectiveHamiltonian h;
  h.num_spins = num_spins;
  h.basis = std::move(ground_states);
  h.row_offsets.reserve(h.dim() + 1);
  h.row_offsets.push_back(0);
  for (SpinConfig z : h.basis) {
    std::size_t row_start = h.columns.size();
    for (int i = 0; i < num_spins; ++i) {
      const SpinConfig y = z ^ (SpinConfig{1} << i);
      auto it = std::lower_bound(h.basis.begin(), h.basis.end(), y);
      if (it != h.basis.end() && *it == y)
        h.columns.push_back(static_cast<std::uint32_t>(it - h.basis.begin()));
    }
    std::sort(h.columns.begin() + static_cast<std::ptrdiff_t>(row_start),
              h.columns.end());
    h.row_offsets.push_back(h.columns.size());
  }
  return h;
}

EffectiveHamiltonian build_effective(const ClassicalSpectrum &spectrum) {
  return build_effective(spectrum.num_spins, spectrum.ground_states);
}

void write_effective_coo(std::ostream &out, const EffectiveHamiltonian &h) {
  out << "row,col,value\n";
  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::uint64_t p = h.row_offsets[a]; p < h.row_offsets[a + 1]; ++p)
      out << a << ',' << h.columns[p] << ",0.5\n";
}

namespace {

// H_eff restricted to one connected component, in local indices.
class ComponentOperator final : public SymmetricOperator {
public:
  ComponentOperator(const EffectiveHamiltonian &h,
                    const std::vector<std::uint32_t> &members,
                    const std::vector<std::uint32_t> &local)
      : h_(h), members_(members), local_(local) {}

  std::size_t dim() const override { return members_.size(); }

  void apply(std::span<const double> in, std::span<double> out,
             double shift) const override {
    for (std::size_t a = 0; a < members_.size(); ++a) {
      const std::uint32_t row = members_[a];
      double acc = 0.0;
      for (std::uint64_t p = h_.row_offsets[row]; p < h_.row_offsets[row + 1]; ++p)
        acc += in[local_[h_.columns[p]]];
      out[a] = 0.5 * acc - shift * in[a];
    }
  }

private:
  const EffectiveHamiltonian &h_;
  const std::vector<std::uint32_t> &members_;
  const std::vector<std::uint32_t> &local_;
};

struct ComponentMinimum {
  double value = 0.0;
  std::vector<std::vector<double>> vectors; // local coordinates
};

ComponentMinimum dense_minimum(const EffectiveHamiltonian &h,
                               const std::vector<std::uint32_t> &members,
                               const std::vector<std::uint32_t> &local,
                               double tolerance) {
  const auto m = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (std::uint64_t p = h.row_offsets[members[i]];
         p < h.row_offsets[members[i] + 1]; ++p)
      a(i, local[h.columns[p]]) = 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed on effective block");
  ComponentMinimum out;
  out.value = eig.eigenvalues()[0];
  for (Eigen::Index k = 0; k < m && eig.eigenvalues()[k] <= out.value + tolerance; ++k) {
    const auto col = eig.eigenvectors().col(k);
    out.vectors.emplace_back(col.data(), col.data() + m);
  }
  return out;
}

// H_eff of a flip-closed component restricted to the flip sector of parity
// `parity`, on one representative per {z, ~z} pair. A neighbour that is not
// a representative enters through its partner, weighted by the parity.
class ParitySectorOperator final : public SymmetricOperator {
public:
  ParitySectorOperator(const EffectiveHamiltonian &h,
                       const std::vector<std::uint32_t> &members,
                       const std::vector<std::uint32_t> &local,
                       std::vector<std::uint32_t> reps, std::vector<std::uint32_t> pair_of,
                       std::vector<double> sign)
      : h_(h), members_(members), local_(local), reps_(std::move(reps)),
        pair_of_(std::move(pair_of)), sign_(std::move(sign)) {}

  std::size_t dim() const override { return reps_.size(); }

  void apply(std::span<const double> in, std::span<double> out,
             double shift) const override {
    for (std::size_t r = 0; r < reps_.size(); ++r) {
      const std::uint32_t row = members_[reps_[r]];
      double acc = 0.0;
      for (std::uint64_t p = h_.row_offsets[row]; p < h_.row_offsets[row + 1]; ++p) {
        const std::uint32_t c = local_[h_.columns[p]];
        acc += sign_[c] * in[pair_of_[c]];
      }
      out[r] = 0.5 * acc - shift * in[r];
    }
  }

private:
  const EffectiveHamiltonian &h_;
  const std::vector<std::uint32_t> &members_;
  const std::vector<std::uint32_t> &local_;
  std::vector<std::uint32_t> reps_;    // local index of each representative
  std::vector<std::uint32_t> pair_of_; // local index -> representative slot
  std::vector<double> sign_;           // +1 on representatives, parity on partners
};

RayleighOutcome minimize_component(const SymmetricOperator &op, std::vector<double> start,
                                   double tolerance) {
  RayleighOptions opt;
  opt.gradient_tolerance = tolerance * 1e-2;
  opt.max_iterations = 100000;
  opt.restart_interval = 256;
  // The eigenvalue settles to rounding long before the gradient does, so
  // the value-stall exit would stop short of the vector tolerance.
  opt.stall_window = opt.max_iterations + 1;
  RayleighOutcome rq = minimize_rayleigh(op, std::move(start), opt);
  if (!rq.converged)
    throw std::runtime_error("effective ground state did not converge");
  return rq;
}

// The single-flip graph is bipartite (a flip changes the parity of the
// number of down spins), so on a connected component the lowest eigenvalue
// of H_eff is simple, with the Perron vector carrying alternating signs on
// the two colour classes. That vector is the start point.
//
// When the component also contains every global flip partner, the ground
// vector has flip parity (-1)^n. Mirror halves joined through a narrow
// bottleneck leave the opposite-parity state exponentially close, which
// stalls the minimizer, so such components are solved in the parity sector.
ComponentMinimum iterative_minimum(const EffectiveHamiltonian &h,
                                   const std::vector<std::uint32_t> &members,
                                   const std::vector<std::uint32_t> &local,
                                   double tolerance) {
  const std::size_t m = members.size();
  const SpinConfig all = h.num_spins == 64 ? ~SpinConfig{0}
                                           : (SpinConfig{1} << h.num_spins) - 1;
  std::vector<std::uint32_t> partner(m);
  bool closed = true;
  for (std::size_t a = 0; a < m && closed; ++a) {
    const SpinConfig y = h.basis[members[a]] ^ all;
    auto it = std::lower_bound(h.basis.begin(), h.basis.end(), y);
    if (it == h.basis.end() || *it != y) {
      closed = false;
      break;
    }
    const auto g = static_cast<std::uint32_t>(it - h.basis.begin());
    closed = local[g] < m && members[local[g]] == g;
    partner[a] = local[g];
  }

  ComponentMinimum out;
  if (!closed) {
    ComponentOperator op(h, members, local);
    std::vector<double> start(m);
    for (std::size_t a = 0; a < m; ++a)
      start[a] = (std::popcount(h.basis[members[a]]) % 2) ? -1.0 : 1.0;
    RayleighOutcome rq = minimize_component(op, std::move(start), tolerance);
    out.value = rq.value;
    out.vectors.push_back(std::move(rq.vector));
    return out;
  }

  const double parity = (h.num_spins % 2) ? -1.0 : 1.0;
  std::vector<std::uint32_t> reps;
  std::vector<std::uint32_t> pair_of(m);
  std::vector<double> sign(m);
  for (std::size_t a = 0; a < m; ++a) {
    if (h.basis[members[a]] < h.basis[members[partner[a]]]) {
      pair_of[a] = pair_of[partner[a]] = static_cast<std::uint32_t>(reps.size());
      sign[a] = 1.0;
      sign[partner[a]] = parity;
      reps.push_back(static_cast<std::uint32_t>(a));
    }
  }
  std::vector<double> start(reps.size());
  for (std::size_t r = 0; r < reps.size(); ++r)
    start[r] = (std::popcount(h.basis[members[reps[r]]]) % 2) ? -1.0 : 1.0;
  ParitySectorOperator op(h, members, local, reps, pair_of, sign);
  RayleighOutcome rq = minimize_component(op, std::move(start), tolerance);

  std::vector<double> full(m);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t a = 0; a < m; ++a)
    full[a] = sign[a] * rq.vector[pair_of[a]] * inv_sqrt2;
  out.value = rq.value;
  out.vectors.push_back(std::move(full));
  return out;
}

} // namespace

LimitGroundSpace limit_ground_space(const EffectiveHamiltonian &h,
                                    const LimitOptions &options) {
  if (h.dim() == 0)
    throw std::invalid_argument("effective Hamiltonian has no basis states");
  const std::size_t d = h.dim();
  constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> local(d, unseen);

  struct Found {
    std::vector<std::uint32_t> members;
    ComponentMinimum minimum;
    bool dense;
  };
  std::vector<Found> found;
  double best = std::numeric_limits<double>::infinity();
  std::size_t components = 0;

  std::vector<std::uint32_t> members;
  for (std::size_t root = 0; root < d; ++root) {
    if (local[root] != unseen)
      continue;
    ++components;
    members.clear();
    members.push_back(static_cast<std::uint32_t>(root));
    local[root] = 0;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const std::uint32_t row = members[head];
      for (std::uint64_t p = h.row_offsets[row]; p < h.row_offsets[row + 1]; ++p) {
        const std::uint32_t c = h.columns[p];
        if (local[c] == unseen) {
          local[c] = static_cast<std::uint32_t>(members.size());
          members.push_back(c);
        }
      }
    }

    ComponentMinimum cm;
    const bool dense = members.size() <= options.dense_limit;
    if (members.size() == 1) {
      cm.value = 0.0;
      cm.vectors.push_back({1.0});
    } else if (dense) {
      cm = dense_minimum(h, members, local, options.dense_tolerance);
    } else {
      cm = iterative_minimum(h, members, local, options.iterative_tolerance);
    }
    const double tol = dense ? options.dense_tolerance : options.iterative_tolerance;
    if (cm.value > best + tol)
      continue;
    if (cm.value < best - tol) {
      // Drop stored components that are no longer within tolerance.
      std::erase_if(found, [&](const Found &f) {
        const double ftol = f.dense ? options.dense_tolerance
                                    : options.iterative_tolerance;
        return f.minimum.value > cm.value + ftol;
      });
    }
    best = std::min(best, cm.value);
    found.push_back({members, std::move(cm), dense});
  }

  LimitGroundSpace space;
  space.num_spins = h.num_spins;
  space.eigenvalue = best;
  space.basis = h.basis;
  space.components = components;
  space.probabilities.assign(d, 0.0);
  for (auto &f : found) {
    for (auto &v : f.minimum.vectors) {
      SparseGroundVector sv;
      sv.support = f.members;
      sv.amplitudes = std::move(v);
      space.vectors.push_back(std::move(sv));
    }
  }
  const double inv_m = 1.0 / static_cast<double>(space.vectors.size());
  for (const auto &sv : space.vectors)
    for (std::size_t a = 0; a < sv.support.size(); ++a)
      space.probabilities[sv.support[a]] += inv_m * sv.amplitudes[a] * sv.amplitudes[a];
  return space;
}

double limit_mx(const LimitGroundSpace &space) { return 2.0 * space.eigenvalue; }

} // namespace qagi
