/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/classical.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qagi {

namespace {

struct Segment {
  std::uint64_t begin = 0; // Gray-code ranks [begin, end)
  std::uint64_t end = 0;
};

// Walks ranks [seg.begin, seg.end) of the reflected Gray code, calling
// visit(config, energy) for each configuration.
template <class Visit>
void walk(const Graph &g, const std::vector<int> &degree, Segment seg,
          Visit &&visit) {
  if (seg.begin >= seg.end)
    return;
  SpinConfig gray = seg.begin ^ (seg.begin >> 1);
  int energy = classical_energy(g, gray);
  visit(gray, energy);
  for (std::uint64_t k = seg.begin + 1; k < seg.end; ++k) {
    const int b = std::countr_zero(k);
    const int neighbor_sum =
        degree[b] - 2 * std::popcount(gray & g.neighbor_mask(b));
    energy -= 2 * spin_value(gray, b) * neighbor_sum;
    gray ^= SpinConfig{1} << b;
    visit(gray, energy);
  }
}

struct Partial {
  std::vector<std::uint64_t> counts; // indexed by energy + edges
  std::vector<SpinConfig> ground;
};

template <class Job>
void run_segments(int workers, std::vector<Segment> &segments,
                  std::vector<Partial> &parts, Job &&job) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < segments.size(); ++i)
      job(segments[i], parts[i]);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < segments.size(); ++i)
    pool.emplace_back([&, i] { job(segments[i], parts[i]); });
  for (auto &t : pool)
    t.join();
}

} // namespace

ClassicalSpectrum enumerate(const Graph &g, const EnumerationOptions &options) {
  const int n = g.num_vertices();
  if (n < 1 || n > kMaxEnumerationSpins)
    throw std::invalid_argument("classical enumeration supports 1.." +
                                std::to_string(kMaxEnumerationSpins) +
                                " vertices");
  const int edges = static_cast<int>(g.num_edges());
  std::vector<int> degree = g.degree_sequence();

  // Ranks below 2^(n-1) are exactly the configurations with the top spin up.
  const bool mirror = options.use_flip_symmetry && n > 1;
  const std::uint64_t total =
      mirror ? (std::uint64_t{1} << (n - 1)) : (std::uint64_t{1} << n);
  const int workers = std::max(1, options.workers);
  std::vector<Segment> segments(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    segments[w] = {total * w / workers, total * (w + 1) / workers};
  std::vector<Partial> parts(segments.size());

  // Pass one: histogram.
  run_segments(workers, segments, parts, [&](Segment seg, Partial &part) {
    part.counts.assign(2 * edges + 1, 0);
    auto *counts = part.counts.data() + edges;
    walk(g, degree, seg, [&](SpinConfig, int e) { ++counts[e]; });
  });

  ClassicalSpectrum out;
  out.num_spins = n;
  out.edge_count = edges;
  std::vector<std::uint64_t> counts(2 * edges + 1, 0);
  for (const auto &p : parts)
    for (std::size_t i = 0; i < counts.size(); ++i)
      counts[i] += p.counts[i];
  long double energy_sum = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!counts[i])
      continue;
    const int e = static_cast<int>(i) - edges;
    const std::uint64_t c = mirror ? 2 * counts[i] : counts[i];
    out.histogram[e] = c;
    energy_sum += static_cast<long double>(e) * c;
  }
  if (energy_sum != 0)
    throw std::logic_error("classical energies do not sum to zero");
  out.ground_energy = out.histogram.begin()->first;

  // Pass two: collect the ground configurations.
  const int ground = out.ground_energy;
  run_segments(workers, segments, parts, [&](Segment seg, Partial &part) {
    part.counts.clear();
    part.ground.clear();
    walk(g, degree, seg, [&](SpinConfig z, int e) {
      if (e == ground)
        part.ground.push_back(z);
    });
  });
  const SpinConfig all = (n == 64) ? ~SpinConfig{0} : ((SpinConfig{1} << n) - 1);
  for (const auto &p : parts) {
    out.ground_states.insert(out.ground_states.end(), p.ground.begin(),
                             p.ground.end());
    if (mirror)
      for (SpinConfig z : p.ground)
        out.ground_states.push_back(z ^ all);
  }
  std::sort(out.ground_states.begin(), out.ground_states.end());
  return out;
}

bool spectra_equal(const ClassicalSpectrum &a, const ClassicalSpectrum &b) {
  return a.num_spins == b.num_spins && a.histogram == b.histogram;
}

void write_spectrum_csv(std::ostream &out, const ClassicalSpectrum &spectrum) {
  out << "energy,count\n";
  for (auto [e, c] : spectrum.histogram)
    out << e << ',' << c << '\n';
}

void write_ground_states(std::ostream &out, const ClassicalSpectrum &spectrum) {
  out << "# n=" << spectrum.num_spins << '\n';
  for (SpinConfig z : spectrum.ground_states)
    out << std::hex << z << std::dec << '\n';
}

std::pair<int, std::vector<SpinConfig>> read_ground_states(std::istream &in) {
  std::string line;
  int n = -1;
  std::vector<SpinConfig> states;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    if (line.rfind("# n=", 0) == 0) {
      n = std::stoi(line.substr(4));
      continue;
    }
    std::size_t used = 0;
    SpinConfig z = std::stoull(line, &used, 16);
    if (used != line.size())
      throw std::invalid_argument("malformed ground-state line: " + line);
    states.push_back(z);
  }
  if (n < 0)
    throw std::invalid_argument("ground-state file lacks the '# n=' header");
  return {n, std::move(states)};
}

} // namespace qagi
