/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>

namespace qagi {

Graph::Graph(int n, std::span<const std::pair<int, int>> edges) : Graph(n) {
  if (n < 0 || n > kMaxVertices)
    throw std::invalid_argument("vertex count out of range: " +
                                std::to_string(n));
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (i == j)
      throw std::invalid_argument("self loop at vertex " + std::to_string(i));
    masks_[i] |= std::uint64_t{1} << j;
    masks_[j] |= std::uint64_t{1} << i;
  }
  rebuild_edges();
}

Graph Graph::from_adjacency(int n, std::span<const std::uint8_t> rows) {
  if (n < 0 || n > kMaxVertices)
    throw std::invalid_argument("vertex count out of range: " +
                                std::to_string(n));
  if (rows.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("adjacency matrix has wrong size");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    if (rows[i * n + i] != 0)
      throw std::invalid_argument("nonzero diagonal at vertex " +
                                  std::to_string(i));
    for (int j = 0; j < n; ++j) {
      auto a = rows[i * n + j];
      if (a > 1)
        throw std::invalid_argument("adjacency entries must be 0 or 1");
      if (a != rows[j * n + i])
        throw std::invalid_argument("adjacency matrix is not symmetric");
      if (a)
        g.masks_[i] |= std::uint64_t{1} << j;
    }
  }
  g.rebuild_edges();
  return g;
}

void Graph::rebuild_edges() {
  edges_.clear();
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adjacent(i, j))
        edges_.emplace_back(i, j);
}

int Graph::degree(int i) const { return std::popcount(masks_[i]); }

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d(n_);
  for (int i = 0; i < n_; ++i)
    d[i] = degree(i);
  return d;
}

std::string to_string(const SrgSignature &sig) {
  return "(" + std::to_string(sig.n) + "," + std::to_string(sig.k) + "," +
         std::to_string(sig.lambda) + "," + std::to_string(sig.mu) + ")";
}

Graph permute(const Graph &g, std::span<const int> perm) {
  const int n = g.num_vertices();
  if (perm.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("permutation length differs from vertex count");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p])
      throw std::invalid_argument("permutation is not a bijection");
    seen[p] = true;
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.num_edges());
  for (auto [i, j] : g.edges())
    edges.emplace_back(perm[i], perm[j]);
  return Graph(n, edges);
}

Graph complement(const Graph &g) {
  const int n = g.num_vertices();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.adjacent(i, j))
        edges.emplace_back(i, j);
  return Graph(n, edges);
}

std::optional<SrgSignature> check_srg(const Graph &g) {
  const int n = g.num_vertices();
  if (n < 2)
    return std::nullopt;
  const int k = g.degree(0);
  for (int i = 1; i < n; ++i)
    if (g.degree(i) != k)
      return std::nullopt;
  std::optional<int> lambda, mu;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int common = std::popcount(g.neighbor_mask(i) & g.neighbor_mask(j));
      auto &slot = g.adjacent(i, j) ? lambda : mu;
      if (!slot)
        slot = common;
      else if (*slot != common)
        return std::nullopt;
    }
  }
  if (!lambda || !mu)
    return std::nullopt;
  return SrgSignature{n, k, *lambda, *mu};
}

std::vector<SpectrumEntry> adjacency_spectrum(const Graph &g,
                                              double group_tolerance) {
  const int n = g.num_vertices();
  if (n == 0)
    return {};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : g.edges())
    a(i, j) = a(j, i) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a,
                                                     Eigen::EigenvaluesOnly);
  const auto &vals = eig.eigenvalues(); // ascending
  std::vector<SpectrumEntry> out;
  for (int i = 0; i < n; ++i) {
    if (!out.empty() && std::abs(vals[i] - out.back().value) <= group_tolerance)
      ++out.back().multiplicity;
    else
      out.push_back({vals[i], 1});
  }
  return out;
}

} // namespace qagi
