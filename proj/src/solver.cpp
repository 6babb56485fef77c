/*******************************************************************************
 * Copyright (c) 2026 The qagi Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#include "qagi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace qagi {

void CgSettings::validate() const {
  if (max_iterations < 1)
    throw std::invalid_argument("max_iterations must be at least 1");
  if (!(gradient_tolerance > 0) || !(energy_stall_tolerance > 0) ||
      !(residual_stage_tolerance > 0))
    throw std::invalid_argument("solver tolerances must be positive");
  if (stall_window < 1 || restart_interval < 0 || residual_max_iterations < 0)
    throw std::invalid_argument("invalid solver iteration settings");
}

double rayleigh_quotient(const SymmetricOperator &op,
                         std::span<const double> v) {
  const double vv = dot(v, v);
  if (vv == 0.0)
    throw std::invalid_argument("Rayleigh quotient of the zero vector");
  std::vector<double> av(v.size());
  op.apply(v, av);
  return dot(v, av) / vv;
}

std::vector<double> rq_gradient(const SymmetricOperator &op,
                                std::span<const double> v) {
  const double vv = dot(v, v);
  if (vv == 0.0)
    throw std::invalid_argument("Rayleigh gradient of the zero vector");
  std::vector<double> g(v.size());
  op.apply(v, g);
  const double vav = dot(v, g);
  const double a = 2.0 / vv;
  const double b = -2.0 * vav / (vv * vv);
  for (std::size_t k = 0; k < g.size(); ++k)
    g[k] = a * g[k] + b * v[k];
  return g;
}

namespace {

double line_value(const LineCoefficients &c, double a) {
  return (c.dhd * a * a + 2.0 * c.phd * a + c.php) /
         (c.dd * a * a + 2.0 * c.pd * a + c.pp);
}

// Bounded scan in the angle t, alpha = tan(t) * sqrt(pp / dd), followed by
// golden-section refinement around the best grid point.
LineMinimum scan_line(const LineCoefficients &c) {
  LineMinimum out;
  out.fallback = true;
  const double scale = std::sqrt(c.pp / c.dd);
  auto value_at = [&](double t) { return line_value(c, std::tan(t) * scale); };
  const double half = 0.5 * std::numbers::pi * (1.0 - 1e-9);
  constexpr int kGrid = 720;
  double best_t = 0.0, best = line_value(c, 0.0);
  for (int i = 0; i <= kGrid; ++i) {
    double t = -half + 2.0 * half * i / kGrid;
    double v = value_at(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  const double step = 2.0 * half / kGrid;
  double lo = std::max(-half, best_t - step), hi = std::min(half, best_t + step);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    if (value_at(m1) < value_at(m2))
      hi = m2;
    else
      lo = m1;
  }
  double t = 0.5 * (lo + hi);
  if (value_at(t) < best) {
    best_t = t;
    best = value_at(t);
  }
  out.alpha = std::tan(best_t) * scale;
  out.energy = best;
  return out;
}

} // namespace

LineMinimum line_minimize(const LineCoefficients &c) {
  LineMinimum out;
  const double f0 = c.php / c.pp;
  out.alpha = 0.0;
  out.energy = f0;
  if (!(c.dd > 0.0) || !(c.pp > 0.0))
    return out;
  const double det = c.dd * c.pp - c.pd * c.pd;
  // delta (nearly) parallel to psi: the plane is degenerate and every
  // candidate value would be dominated by cancellation.
  if (det <= 1e-14 * c.dd * c.pp)
    return out;

  // Stationarity of the rational function reduces to qa a^2 + qb a + qc = 0.
  const double qa = c.dhd * c.pd - c.phd * c.dd;
  const double qb = c.dhd * c.pp - c.php * c.dd;
  const double qc = c.phd * c.pp - c.php * c.pd;

  double candidates[2];
  int count = 0;
  const double size = std::abs(qa) + std::abs(qb) + std::abs(qc);
  if (size == 0.0)
    return out; // f is constant on the line
  if (std::abs(qa) <= 1e-15 * size) {
    if (qb != 0.0)
      candidates[count++] = -qc / qb;
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
      if (disc < -1e-12 * qb * qb)
        return scan_line(c);
      disc = 0.0;
    }
    const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    if (q != 0.0) {
      candidates[count++] = q / qa;
      candidates[count++] = qc / q;
    } else {
      candidates[count++] = 0.0;
    }
  }
  for (int i = 0; i < count; ++i) {
    if (!std::isfinite(candidates[i]))
      continue;
    double v = line_value(c, candidates[i]);
    if (v < out.energy) {
      out.energy = v;
      out.alpha = candidates[i];
    }
  }
  // The quotient tends to dhd / dd as alpha grows without bound.
  const double limit = c.dhd / c.dd;
  if (limit < out.energy - 1e-15 * std::max(1.0, std::abs(limit))) {
    out.energy = limit;
    out.alpha = std::numeric_limits<double>::infinity();
    out.at_infinity = true;
    out.fallback = true;
  }
  return out;
}

LineMinimum line_minimize(const SymmetricOperator &op,
                          std::span<const double> psi,
                          std::span<const double> delta) {
  if (psi.size() != op.dim() || delta.size() != op.dim())
    throw std::invalid_argument("vector dimension does not match operator");
  std::vector<double> hp(psi.size()), hd(psi.size());
  op.apply(psi, hp);
  op.apply(delta, hd);
  LineCoefficients c{dot(delta, hd), dot(psi, hd), dot(psi, hp),
                     dot(delta, delta), dot(psi, delta), dot(psi, psi)};
  if (c.pp == 0.0 || c.dd == 0.0)
    throw std::invalid_argument("line minimization needs nonzero vectors");
  return line_minimize(c);
}

namespace {

void project_out(std::span<const std::vector<double>> basis,
                 std::span<double> v) {
  for (const auto &u : basis)
    axpy(-dot(u, v), u, v);
}

} // namespace

RayleighOutcome minimize_rayleigh(const SymmetricOperator &op,
                                  std::vector<double> start,
                                  const RayleighOptions &options) {
  const std::size_t n = op.dim();
  if (start.size() != n)
    throw std::invalid_argument("start vector dimension does not match operator");
  const int restart = std::max(1, options.restart_interval);

  RayleighOutcome out;
  std::vector<double> &x = out.vector;
  x = std::move(start);
  project_out(options.deflate, x);
  double nrm = std::sqrt(dot(x, x));
  if (nrm == 0.0)
    throw std::invalid_argument("start vector vanishes after deflation");
  scale(1.0 / nrm, x);

  std::vector<double> ax(n), g(n), gnew(n), d(n), ad(n);
  double offset = 0.0;

  // Evaluates (A - offset) x and, with the variable offset, moves the
  // offset so that the shifted objective at x is zero.
  auto refresh = [&]() {
    op.apply(x, ax, offset);
    double f = dot(x, ax);
    if (options.variable_offset) {
      offset += f;
      axpy(-f, x, ax);
      f = dot(x, ax);
    }
    return f;
  };
  auto gradient = [&](double f, std::vector<double> &out_g) {
    for (std::size_t k = 0; k < n; ++k)
      out_g[k] = 2.0 * (ax[k] - f * x[k]);
    project_out(options.deflate, out_g);
  };

  double f = refresh();
  double value = offset + f;
  gradient(f, g);
  for (std::size_t k = 0; k < n; ++k)
    d[k] = -g[k];
  double gg = dot(g, g);

  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(
      std::min(options.max_iterations, 1 << 20)) + 1);
  history.push_back(value);

  auto trace = [&](int it, double gnorm) {
    if (options.trace)
      *options.trace << options.stage << ',' << it << ',' << value << ','
                     << gnorm << ',' << offset << '\n';
  };

  int it = 0;
  for (;;) {
    const double gnorm = std::sqrt(gg);
    out.gradient_norm = gnorm;
    if (!std::isfinite(value) || !std::isfinite(gnorm))
      throw std::runtime_error("NaN encountered in conjugate-gradient stage '" +
                               options.stage + "' at iteration " +
                               std::to_string(it));
    trace(it, gnorm);
    if (gnorm < options.gradient_tolerance || value < options.value_target) {
      out.converged = true;
      break;
    }
    if (it >= options.max_iterations)
      break;
    if (it >= options.stall_window &&
        history[it - options.stall_window] - value <
            options.stall_tolerance *
                std::max(options.stall_floor, std::abs(value)))
      break;
    ++it;

    // Same search plane, but with d orthogonal to the (unit) iterate; an
    // accumulated component along x would make the plane ill conditioned.
    axpy(-dot(x, d), x, d);
    op.apply(d, ad, offset);
    LineCoefficients c{dot(d, ad), dot(x, ad), dot(x, ax),
                       dot(d, d),  dot(x, d),  dot(x, x)};
    LineMinimum lm = line_minimize(c);
    if (lm.fallback)
      ++out.fallbacks;
    if (lm.at_infinity) {
      x.swap(d);
      ax.swap(ad);
    } else {
      axpy(lm.alpha, d, x);
      axpy(lm.alpha, ad, ax);
    }
    nrm = std::sqrt(dot(x, x));
    scale(1.0 / nrm, x);
    scale(1.0 / nrm, ax);

    const bool restart_now = it % restart == 0;
    if (restart_now) {
      f = refresh();
    } else {
      f = dot(x, ax);
      if (options.variable_offset) {
        offset += f;
        axpy(-f, x, ax);
        f = dot(x, ax);
      }
    }
    const double new_value = offset + f;
    if (new_value > value + 1e-12 * std::max(1.0, std::abs(value)))
      ++out.monotonicity_violations;
    value = new_value;
    history.push_back(value);

    gradient(f, gnew);
    const double gg_new = dot(gnew, gnew);
    double beta = 0.0;
    if (!restart_now && !lm.at_infinity && gg > 0.0)
      beta = std::max(0.0, (gg_new - dot(gnew, g)) / gg);
    for (std::size_t k = 0; k < n; ++k)
      d[k] = -gnew[k] + beta * d[k];
    if (dot(d, gnew) >= 0.0)
      for (std::size_t k = 0; k < n; ++k)
        d[k] = -gnew[k];
    project_out(options.deflate, d);
    g.swap(gnew);
    gg = gg_new;
  }
  out.value = value;
  out.iterations = it;
  return out;
}

double residual_norm(const AnnealHamiltonian &h, const StateVector &v,
                     double e) {
  std::vector<double> r(v.dim());
  h.apply(v.amplitudes, r, e);
  return std::sqrt(dot(r, r));
}

namespace {

int default_restart(int n) { return 1 << ((n + 1) / 2); }

StateVector initial_state(int n, std::uint64_t seed) {
  if (seed == 0)
    return driver_ground_state(n);
  StateVector v(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (double &a : v.amplitudes)
    a = normal(rng);
  v.normalize();
  return v;
}

// (H - e0)^2 with an extra diagonal shift, applied as two passes.
class SquaredResidualOperator final : public SymmetricOperator {
public:
  SquaredResidualOperator(const AnnealHamiltonian &h, double e0)
      : h_(h), e0_(e0), scratch_(h.dim()) {}
  std::size_t dim() const override { return h_.dim(); }
  void apply(std::span<const double> in, std::span<double> out,
             double shift) const override {
    h_.apply(in, scratch_, e0_);
    h_.apply(scratch_, out, e0_);
    if (shift != 0.0)
      axpy(-shift, in, out);
  }

private:
  const AnnealHamiltonian &h_;
  double e0_;
  mutable std::vector<double> scratch_;
};

} // namespace

GroundStateResult cg_ground_state(const AnnealHamiltonian &h,
                                  const CgSettings &settings,
                                  const StateVector *start) {
  settings.validate();
  const int n = h.num_spins();
  StateVector x0 = start ? *start : initial_state(n, settings.seed);
  if (x0.num_spins != n)
    throw std::invalid_argument("warm-start state has the wrong size");

  RayleighOptions opt;
  opt.max_iterations = settings.max_iterations;
  opt.gradient_tolerance =
      settings.gradient_tolerance * std::sqrt(static_cast<double>(h.dim()));
  opt.stall_tolerance = settings.energy_stall_tolerance;
  opt.stall_window = settings.stall_window;
  opt.restart_interval = settings.restart_interval > 0 ? settings.restart_interval
                                                       : default_restart(n);
  opt.variable_offset = settings.variable_offset;
  opt.trace = settings.diagnostics;
  opt.stage = "energy";

  RayleighOutcome rq = minimize_rayleigh(h, std::move(x0.amplitudes), opt);

  GroundStateResult result;
  result.energy = rq.value;
  result.state = StateVector(n, std::move(rq.vector));
  result.converged = rq.converged;
  result.iterations = rq.iterations;
  result.line_search_fallbacks = rq.fallbacks;
  result.monotonicity_violations = rq.monotonicity_violations;
  result.final_residual_norm = residual_norm(h, result.state, result.energy);
  return result;
}

GroundStateResult residual_refine(const AnnealHamiltonian &h,
                                  GroundStateResult result,
                                  const CgSettings &settings) {
  settings.validate();
  const double before = residual_norm(h, result.state, result.energy);
  result.final_residual_norm = before;
  const double target =
      settings.residual_stage_tolerance * std::sqrt(static_cast<double>(h.dim()));
  if (before <= target || settings.residual_max_iterations == 0)
    return result;

  SquaredResidualOperator op(h, result.energy);
  RayleighOptions opt;
  opt.max_iterations = settings.residual_max_iterations;
  opt.gradient_tolerance = 0.0;
  opt.value_target = target * target;
  // Less than 1% improvement of ||r||^2 over 50 steps ends the stage.
  opt.stall_tolerance = 1e-2;
  opt.stall_floor = 0.0;
  opt.stall_window = 50;
  opt.restart_interval = settings.restart_interval > 0
                             ? settings.restart_interval
                             : default_restart(h.num_spins());
  opt.variable_offset = false;
  opt.trace = settings.diagnostics;
  opt.stage = "residual";

  RayleighOutcome rq = minimize_rayleigh(op, result.state.amplitudes, opt);
  StateVector refined(h.num_spins(), std::move(rq.vector));
  const double after = residual_norm(h, refined, result.energy);
  result.residual_iterations = rq.iterations;
  if (after > before) {
    result.residual_stage_rejected = true;
    return result;
  }
  result.state = std::move(refined);
  result.final_residual_norm = after;
  return result;
}

GroundStateResult solve_ground_state(const AnnealHamiltonian &h,
                                     const CgSettings &settings,
                                     const StateVector *start) {
  GroundStateResult r = cg_ground_state(h, settings, start);
  if (r.converged)
    r = residual_refine(h, std::move(r), settings);
  return r;
}

} // namespace qagi
