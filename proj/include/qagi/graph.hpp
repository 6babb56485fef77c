/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qagi {

/// Largest vertex count representable by the 64-bit neighbor masks.
inline constexpr int kMaxVertices = 64;

/// Raised for any malformed graph input. `offset()` is the byte offset of
/// the offending character in the input line, or npos when not applicable.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Simple undirected graph on vertices 0..n-1, immutable after construction.
///
/// The adjacency matrix is stored as one 64-bit neighbor mask per vertex,
/// which is what the Ising energy kernels consume directly.
class Graph {
public:
  Graph() = default;

  /// Builds from an edge list. Self loops and out-of-range endpoints throw;
  /// repeated edges are merged.
  Graph(int n, std::span<const std::pair<int, int>> edges);

  /// Builds from a dense 0/1 matrix given row-major. The matrix must be
  /// symmetric with a zero diagonal.
  static Graph from_adjacency(int n, std::span<const std::uint8_t> rows);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool adjacent(int i, int j) const { return (masks_[i] >> j) & 1u; }
  std::uint64_t neighbor_mask(int i) const { return masks_[i]; }
  int degree(int i) const;

  /// Edges (i, j) with i < j, sorted lexicographically.
  const std::vector<std::pair<int, int>> &edges() const { return edges_; }

  std::vector<int> degree_sequence() const;

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.n_ == b.n_ && a.masks_ == b.masks_;
  }

private:
  explicit Graph(int n) : n_(n), masks_(static_cast<std::size_t>(n), 0) {}
  void rebuild_edges();

  int n_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::pair<int, int>> edges_;
};

struct SrgSignature {
  int n = 0;
  int k = 0;
  int lambda = 0;
  int mu = 0;

  friend bool operator==(const SrgSignature &, const SrgSignature &) = default;
};

std::string to_string(const SrgSignature &sig);

/// Relabels vertices: vertex i of `g` becomes vertex perm[i].
/// Throws std::invalid_argument unless perm is a bijection on 0..n-1.
Graph permute(const Graph &g, std::span<const int> perm);

/// Swaps edges and non-edges.
Graph complement(const Graph &g);

/// Returns (n, k, lambda, mu) when g is strongly regular, nullopt otherwise.
/// Complete and empty graphs are rejected (one of lambda/mu is undefined).
std::optional<SrgSignature> check_srg(const Graph &g);

struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 0;
};

/// Eigenvalues of the adjacency matrix in ascending order. Values closer
/// than `group_tolerance` to the first member of a run are merged.
std::vector<SpectrumEntry> adjacency_spectrum(const Graph &g,
                                              double group_tolerance = 1e-9);

// --- text formats ----------------------------------------------------------

/// Decodes one graph6 line (trailing newline and the optional ">>graph6<<"
/// header are accepted).
Graph parse_graph6(std::string_view line);

std::string to_graph6(const Graph &g);

/// Parses an adjacency-matrix text block: N non-empty lines each holding N
/// whitespace-separated 0/1 entries.
Graph parse_adjacency_text(std::string_view text);

std::string to_adjacency_text(const Graph &g);

/// A graph together with the identifier used in reports.
struct NamedGraph {
  std::string id;
  Graph graph;
};

/// Reads a graph file. graph6 files hold one graph per line (ids become
/// "<stem>#<line>"); otherwise the file is read as a single adjacency matrix.
/// Throws ParseError on malformed content and on files with no graphs.
std::vector<NamedGraph> read_graph_file(const std::string &path);

// --- fixtures --------------------------------------------------------------

/// The regular cospectral test pairs: "G1", "G2" (14 vertices, valency 4)
/// and "G3", "G4" (16 vertices, valency 3). Unknown names throw
/// std::invalid_argument.
Graph fixture_graph(std::string_view name);

/// Names accepted by fixture_graph.
std::vector<std::string> fixture_names();

} // namespace qagi
