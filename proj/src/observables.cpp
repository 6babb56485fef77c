/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qagi {

namespace {

constexpr double kNormTolerance = 1e-8;

void check_total(double total) {
  if (std::abs(total - 1.0) > kNormTolerance)
    throw std::invalid_argument("distribution is not normalized (total weight " +
                                std::to_string(total) + ")");
}

void add_squares(const StateVector &v, double weight, std::vector<double> &p) {
  for (std::size_t z = 0; z < p.size(); ++z)
    p[z] += weight * v.amplitudes[z] * v.amplitudes[z];
}

double total_weight(const std::vector<double> &w) {
  double t = 0.0;
  for (double x : w)
    t += x;
  return t;
}

// In-place unnormalized Walsh-Hadamard transform: afterwards
// a[S] = sum_z a_in[z] (-1)^{popcount(z & S)}.
void walsh_hadamard(std::vector<double> &a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t base = 0; base < n; base += 2 * h)
      for (std::size_t k = base; k < base + h; ++k) {
        const double x = a[k], y = a[k + h];
        a[k] = x + y;
        a[k + h] = x - y;
      }
}

// Dense copy of a distribution, optionally reweighted per configuration.
template <class Weight>
std::vector<double> densify(const ConfigDistribution &p, Weight &&weight) {
  if (p.num_spins > kMaxStateSpins)
    throw std::invalid_argument("dense moment transform limited to " +
                                std::to_string(kMaxStateSpins) + " spins");
  std::vector<double> out(std::size_t{1} << p.num_spins, 0.0);
  p.for_each([&](SpinConfig z, double w) { out[z] = w * weight(z); });
  return out;
}

// Number of length-m index sequences over n sites in which exactly the
// sites of a fixed k-set appear an odd number of times:
// m! [x^m] sinh(x)^k cosh(x)^(n-k).
double tuple_count(int n, int k, int m) {
  std::vector<double> fact(m + 1, 1.0);
  for (int i = 1; i <= m; ++i)
    fact[i] = fact[i - 1] * i;
  std::vector<double> sinh_s(m + 1, 0.0), cosh_s(m + 1, 0.0);
  for (int i = 0; i <= m; ++i)
    (i % 2 ? sinh_s : cosh_s)[i] = 1.0 / fact[i];
  auto mul = [m](const std::vector<double> &a, const std::vector<double> &b) {
    std::vector<double> c(m + 1, 0.0);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; i + j <= m; ++j)
        c[i + j] += a[i] * b[j];
    return c;
  };
  std::vector<double> poly(m + 1, 0.0);
  poly[0] = 1.0;
  for (int i = 0; i < k; ++i)
    poly = mul(poly, sinh_s);
  for (int i = 0; i < n - k; ++i)
    poly = mul(poly, cosh_s);
  return std::round(poly[m] * fact[m]);
}

} // namespace

ConfigDistribution distribution(const StateVector &state) {
  ConfigDistribution p;
  p.num_spins = state.num_spins;
  p.dense.assign(state.dim(), 0.0);
  add_squares(state, 1.0, p.dense);
  check_total(total_weight(p.dense));
  return p;
}

ConfigDistribution distribution(const GroundStateResult &result) {
  if (result.partners.empty())
    return distribution(result.state);
  ConfigDistribution p;
  p.num_spins = result.state.num_spins;
  p.dense.assign(result.state.dim(), 0.0);
  const double w = 1.0 / static_cast<double>(1 + result.partners.size());
  add_squares(result.state, w, p.dense);
  for (const auto &v : result.partners)
    add_squares(v, w, p.dense);
  check_total(total_weight(p.dense));
  return p;
}

ConfigDistribution distribution(const LimitGroundSpace &space) {
  ConfigDistribution p;
  p.num_spins = space.num_spins;
  for (std::size_t a = 0; a < space.basis.size(); ++a)
    if (space.probabilities[a] != 0.0) {
      p.configs.push_back(space.basis[a]);
      p.weights.push_back(space.probabilities[a]);
    }
  check_total(total_weight(p.weights));
  return p;
}

namespace {

// M_ij = sum_z v(z) s_i(z) s_j(z) for a dense weight vector v over 2^n
// configurations. The index is split into low and high halves so the work
// is O(2^n * n/2) instead of O(2^n * n^2).
std::vector<double> dense_pair_moments(std::span<const double> v, int n) {
  const int low = n / 2, high = n - low;
  const std::size_t nl = std::size_t{1} << low, nh = std::size_t{1} << high;
  std::vector<double> low_sum(nl, 0.0), high_sum(nh, 0.0);
  std::vector<double> cross(static_cast<std::size_t>(low) * high, 0.0);
  std::vector<double> bit_sum(low);
  for (std::size_t zh = 0; zh < nh; ++zh) {
    const double *block = v.data() + zh * nl;
    std::fill(bit_sum.begin(), bit_sum.end(), 0.0);
    double t = 0.0;
    for (std::size_t zl = 0; zl < nl; ++zl) {
      const double x = block[zl];
      t += x;
      low_sum[zl] += x;
      for (int i = 0; i < low; ++i)
        bit_sum[i] += static_cast<double>((zl >> i) & 1u) * x;
    }
    high_sum[zh] = t;
    for (int j = 0; j < high; ++j) {
      const double sj = spin_value(zh, j);
      for (int i = 0; i < low; ++i)
        cross[i * high + j] += sj * (t - 2.0 * bit_sum[i]);
    }
  }
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  auto within = [&](const std::vector<double> &sums, int width, int offset) {
    for (std::size_t z = 0; z < sums.size(); ++z) {
      if (sums[z] == 0.0)
        continue;
      for (int i = 0; i < width; ++i)
        for (int j = i; j < width; ++j)
          m[(i + offset) * n + j + offset] +=
              sums[z] * spin_value(z, i) * spin_value(z, j);
    }
  };
  within(low_sum, low, 0);
  within(high_sum, high, low);
  for (int i = 0; i < low; ++i)
    for (int j = 0; j < high; ++j)
      m[i * n + low + j] = cross[i * high + j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      m[i * n + j] = m[j * n + i];
  return m;
}

// Same moments for a weight function over a distribution.
template <class Weight>
std::vector<double> pair_moments(const ConfigDistribution &p, Weight &&weight) {
  const int n = p.num_spins;
  if (p.is_dense()) {
    std::vector<double> v(p.dense.size());
    for (std::size_t z = 0; z < v.size(); ++z)
      v[z] = p.dense[z] == 0.0 ? 0.0 : p.dense[z] * weight(z);
    return dense_pair_moments(v, n);
  }
  // Rank-1 update per supported configuration, via
  // s_i s_j = 1 - 2 [bit i != bit j].
  std::vector<double> disagree(static_cast<std::size_t>(n) * n, 0.0);
  double total = 0.0;
  p.for_each([&](SpinConfig z, double w0) {
    const double w = w0 * weight(z);
    total += w;
    for (int i = 0; i < n; ++i) {
      const SpinConfig zi = (z >> i) & 1u;
      double *row = disagree.data() + static_cast<std::size_t>(i) * n;
      for (int j = i + 1; j < n; ++j)
        if (((z >> j) & 1u) != zi)
          row[j] += w;
    }
  });
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    m[i * n + i] = total;
    for (int j = i + 1; j < n; ++j)
      m[i * n + j] = m[j * n + i] = total - 2.0 * disagree[i * n + j];
  }
  return m;
}

} // namespace

CorrelationMatrix correlations(const ConfigDistribution &p) {
  CorrelationMatrix c;
  c.n = p.num_spins;
  c.entries = pair_moments(p, [](SpinConfig) { return 1.0; });
  check_total(c.entries.empty() ? 0.0 : c.entries[0]);
  for (int i = 0; i < c.n; ++i)
    c.entries[i * c.n + i] = 1.0;
  return c;
}

CorrelationMatrix correlations(const StateVector &state) {
  return correlations(distribution(state));
}

CorrelationMatrix correlations(const LimitGroundSpace &space) {
  return correlations(distribution(space));
}

std::vector<double> single_site_moments(const ConfigDistribution &p) {
  std::vector<double> m(p.num_spins, 0.0);
  p.for_each([&](SpinConfig z, double w) {
    for (int i = 0; i < p.num_spins; ++i)
      m[i] += w * spin_value(z, i);
  });
  return m;
}

double q2(const CorrelationMatrix &corr) {
  const int n = corr.n;
  if (n < 2)
    return 0.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        sum += corr(i, j) * corr(i, j);
  return std::sqrt(sum / (static_cast<double>(n) * (n - 1)));
}

double q2n(const ConfigDistribution &p, int n) {
  if (n < 1 || n > kMaxQ2nOrder)
    throw std::invalid_argument("q2n order must lie in 1.." +
                                std::to_string(kMaxQ2nOrder));
  if (p.num_spins > kMaxQ2nSpins)
    throw std::invalid_argument("q2n is limited to " +
                                std::to_string(kMaxQ2nSpins) + " spins");
  const int sites = p.num_spins;
  const int m = 2 * n;
  std::vector<double> w = densify(p, [](SpinConfig) { return 1.0; });
  walsh_hadamard(w);
  // Only subsets of even size <= m contribute.
  std::vector<double> count(m + 1, 0.0);
  for (int k = 0; k <= std::min(m, sites); k += 2)
    count[k] = tuple_count(sites, k, m);
  double sum = 0.0;
  for (std::size_t s = 0; s < w.size(); ++s) {
    const int k = std::popcount(s);
    if (k <= m && k % 2 == 0)
      sum += count[k] * w[s] * w[s];
  }
  return sum / std::pow(static_cast<double>(sites), m);
}

double q2_prime(const ConfigDistribution &p, const Graph &g) {
  const int n = p.num_spins;
  if (g.num_vertices() != n)
    throw std::invalid_argument("graph and distribution sizes differ");
  std::vector<double> m;
  if (p.is_dense() && n <= kMaxTableSpins) {
    EnergyTable table(g);
    m = pair_moments(p, [&](SpinConfig z) { return double(table.energy(z)); });
  } else {
    m = pair_moments(p, [&](SpinConfig z) { return double(classical_energy(g, z)); });
  }
  double sum = 0.0;
  for (double x : m)
    sum += x * x;
  return sum / (static_cast<double>(n) * n);
}

double classical_expectation(const ConfigDistribution &p, const Graph &g) {
  if (g.num_vertices() != p.num_spins)
    throw std::invalid_argument("graph and distribution sizes differ");
  double e = 0.0;
  if (p.is_dense() && p.num_spins <= kMaxTableSpins) {
    EnergyTable table(g);
    for (std::size_t z = 0; z < p.dense.size(); ++z)
      e += p.dense[z] * table.energy(z);
    return e;
  }
  p.for_each([&](SpinConfig z, double w) { e += w * classical_energy(g, z); });
  return e;
}

namespace {

// <v|H|v>, <v|H_p|v> and <v|sum sigma^x|v> for a normalized v.
struct StateMoments {
  double energy = 0.0;
  double classical = 0.0;
  double mx = 0.0;
};

StateMoments moments(const AnnealHamiltonian &h, const StateVector &v,
                     std::vector<double> &scratch) {
  StateMoments m;
  scratch.resize(v.dim());
  h.apply(v.amplitudes, scratch);
  m.energy = dot(v.amplitudes, scratch);
  apply_flip_sum(h.num_spins(), v.amplitudes, scratch);
  m.mx = dot(v.amplitudes, scratch);
  const auto &table = h.table();
  double e = 0.0;
  for (std::size_t z = 0; z < v.dim(); ++z)
    e += v.amplitudes[z] * v.amplitudes[z] * table.energy(z);
  m.classical = e;
  return m;
}

void add_optional(Fingerprint &fp, const ConfigDistribution &p, const Graph &g,
                  const ObservableFlags &flags) {
  if (flags.q4)
    fp.q4 = q2n(p, 2);
  if (flags.q2_prime)
    fp.q2_prime = q2_prime(p, g);
}

} // namespace

Fingerprint fingerprint(const AnnealHamiltonian &h, const GroundStateResult &r,
                        const ObservableFlags &flags) {
  if (r.state.num_spins != h.num_spins())
    throw std::invalid_argument("state does not match the Hamiltonian");
  Fingerprint fp;
  fp.s = h.s();
  std::vector<double> scratch;
  const double w = 1.0 / static_cast<double>(1 + r.partners.size());
  auto accumulate = [&](const StateVector &v) {
    StateMoments m = moments(h, v, scratch);
    fp.energy += w * m.energy;
    fp.classical_energy += w * m.classical;
    fp.mx += w * m.mx;
  };
  accumulate(r.state);
  for (const auto &v : r.partners)
    accumulate(v);
  ConfigDistribution p = distribution(r);
  fp.q2 = q2(correlations(p));
  add_optional(fp, p, h.graph(), flags);
  return fp;
}

Fingerprint fingerprint(const AnnealHamiltonian &h, const StateVector &state,
                        const ObservableFlags &flags) {
  GroundStateResult r;
  r.state = state;
  return fingerprint(h, r, flags);
}

Fingerprint fingerprint(const Graph &g, const LimitGroundSpace &space,
                        const ObservableFlags &flags) {
  if (g.num_vertices() != space.num_spins)
    throw std::invalid_argument("graph and ground space sizes differ");
  Fingerprint fp;
  fp.s = 1.0;
  ConfigDistribution p = distribution(space);
  // Every basis configuration sits at E_G, so take it exactly.
  if (space.basis.empty())
    throw std::invalid_argument("empty ground space");
  fp.classical_energy = classical_energy(g, space.basis.front());
  fp.energy = fp.classical_energy;
  fp.mx = limit_mx(space);
  fp.q2 = q2(correlations(p));
  fp.degeneracy = static_cast<double>(space.basis.size());
  add_optional(fp, p, g, flags);
  return fp;
}

} // namespace qagi
