/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

// Helpers and brute-force oracles shared by the test binaries. The oracles
// deliberately avoid the library's kernels: they build matrices entry by
// entry from the definitions.

#pragma once

#include "qagi/graph.hpp"
#include "qagi/hilbert.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace qagi::test {

inline Graph random_graph(int n, double p, std::mt19937_64 &rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng))
        edges.emplace_back(i, j);
  return Graph(n, edges);
}

inline std::vector<int> random_permutation(int n, std::mt19937_64 &rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      e.emplace_back(i, j);
  return Graph(n, e);
}

/// Spin of vertex i in configuration z: +1 when bit i is clear.
inline int spin(std::uint64_t z, int i) { return ((z >> i) & 1u) ? -1 : 1; }

/// sum over edges s_i s_j, straight from the adjacency predicate.
inline int oracle_energy(const Graph &g, std::uint64_t z) {
  int e = 0;
  for (int i = 0; i < g.num_vertices(); ++i)
    for (int j = i + 1; j < g.num_vertices(); ++j)
      if (g.adjacent(i, j))
        e += spin(z, i) * spin(z, j);
  return e;
}

/// Full H(s) = (1-s)/2 sum sigma^x + s H_p, entry by entry.
inline Eigen::MatrixXd oracle_hamiltonian(const Graph &g, double s) {
  const int n = g.num_vertices();
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      if (a == b)
        h(a, b) = s * oracle_energy(g, a);
      else if (std::popcount(a ^ b) == 1)
        h(a, b) = 0.5 * (1.0 - s);
    }
  return h;
}

struct OracleGround {
  double energy;
  /// Projector-averaged probabilities over the ground eigenspace.
  std::vector<double> probabilities;
  int degeneracy;
  Eigen::MatrixXd vectors; // columns span the ground space
  /// Distance to the next level (infinity when the space is exhausted).
  double gap;
};

inline OracleGround oracle_ground(const Graph &g, double s, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oracle_hamiltonian(g, s));
  OracleGround out;
  out.energy = eig.eigenvalues()[0];
  int m = 0;
  while (m < eig.eigenvalues().size() && eig.eigenvalues()[m] < out.energy + tol)
    ++m;
  out.degeneracy = m;
  out.gap = m < eig.eigenvalues().size() ? eig.eigenvalues()[m] - out.energy
                                         : std::numeric_limits<double>::infinity();
  out.vectors = eig.eigenvectors().leftCols(m);
  out.probabilities.assign(eig.eigenvalues().size(), 0.0);
  for (int k = 0; k < m; ++k)
    for (Eigen::Index z = 0; z < eig.eigenvalues().size(); ++z)
      out.probabilities[z] += out.vectors(z, k) * out.vectors(z, k) / m;
  return out;
}

/// <sigma_i sigma_j> by direct summation.
inline double oracle_correlator(const std::vector<double> &p, int i, int j) {
  double c = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z)
    c += p[z] * spin(z, i) * spin(z, j);
  return c;
}

/// Q2 from direct correlators.
inline double oracle_q2(const std::vector<double> &p, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        double c = oracle_correlator(p, i, j);
        sum += c * c;
      }
  return std::sqrt(sum / (n * (n - 1.0)));
}

/// (1/N^{2m}) sum over every index tuple of <prod sigma>^2, by brute force.
inline double oracle_q2n(const std::vector<double> &p, int n, int order) {
  const int len = 2 * order;
  std::vector<int> idx(len, 0);
  double sum = 0.0;
  while (true) {
    double moment = 0.0;
    for (std::size_t z = 0; z < p.size(); ++z) {
      int prod = 1;
      for (int t = 0; t < len; ++t)
        prod *= spin(z, idx[t]);
      moment += p[z] * prod;
    }
    sum += moment * moment;
    int t = 0;
    while (t < len && ++idx[t] == n)
      idx[t++] = 0;
    if (t == len)
      break;
  }
  return sum / std::pow(n, len);
}

/// Backtracking isomorphism test (degree-refined); fine for n <= 20.
inline bool oracle_isomorphic(const Graph &a, const Graph &b) {
  const int n = a.num_vertices();
  if (n != b.num_vertices() || a.num_edges() != b.num_edges())
    return false;
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto &&self, int v) -> bool {
    if (v == n)
      return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || a.degree(v) != b.degree(w))
        continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        ok = a.adjacent(u, v) == b.adjacent(map[u], w);
      if (!ok)
        continue;
      map[v] = w;
      used[w] = true;
      if (self(self, v + 1))
        return true;
      used[w] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

inline std::string data_path(const std::string &rel) {
  return std::string(QAGI_DATA_DIR) + "/" + rel;
}

} // namespace qagi::test
