#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "loewner/driver.hpp"
#include "loewner/rng.hpp"
#include "loewner/subordinator.hpp"

namespace loewner {

// Brownian driver with the multiplier convention of the time-changed family:
// values are kappa * B_t, i.e. Gaussian increments of variance kappa^2 * dt.
inline SampledDriver gen_brownian(double horizon, std::size_t n_steps,
                                  double kappa, std::uint64_t seed) {
  if (!(kappa > 0.0)) throw std::invalid_argument("brownian: kappa must be > 0");
  if (n_steps < 1) throw std::invalid_argument("brownian: need >= 1 step");
  SampledDriver d;
  d.times = uniform_grid(horizon, n_steps);
  d.values.resize(n_steps + 1);
  d.values[0] = 0.0;
  Rng rng = Rng::substream(seed, 0);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double dt = d.times[k] - d.times[k - 1];
    d.values[k] = d.values[k - 1] + kappa * std::sqrt(dt) * rng.normal();
  }
  return d;
}

// Truncated Weierstrass function W(t) = sum_{n=0}^{depth} 2^{-n/2} cos(2^n t).
// Depth 60 puts the tail amplitude below 1e-9.
inline double weierstrass_value(double t, int depth) {
  double acc = 0.0;
  double amp = 1.0;
  double freq = 1.0;
  for (int n = 0; n <= depth; ++n) {
    acc += amp * std::cos(freq * t);
    amp *= 0.70710678118654752440;  // 2^{-1/2}
    freq *= 2.0;
  }
  return acc;
}

inline SampledDriver gen_weierstrass(double horizon, std::size_t n_steps,
                                     double c, int depth) {
  if (depth < 0) throw std::invalid_argument("weierstrass: depth must be >= 0");
  SampledDriver d;
  d.times = uniform_grid(horizon, n_steps);
  d.values.resize(d.times.size());
  for (std::size_t k = 0; k < d.times.size(); ++k)
    d.values[k] = c * weierstrass_value(d.times[k], depth);
  return d;
}

// Deterministic driver families.
enum class DetFamily { Constant, SqrtForward, SqrtBackward, Power };

// constant(c): c; sqrt_forward(c): c*sqrt(t); sqrt_backward(c): c*sqrt(1-t)
// (requires horizon <= 1); power(a,r): a*t^r.
inline SampledDriver gen_deterministic(DetFamily family, double c, double a,
                                       double r, double horizon,
                                       std::size_t n_steps) {
  if (family == DetFamily::SqrtBackward && horizon > 1.0)
    throw std::invalid_argument("sqrt_backward: horizon must be <= 1");
  if (family == DetFamily::Power && !(r > 0.0 && r <= 0.5))
    throw std::invalid_argument("power: r must be in (0, 1/2]");
  SampledDriver d;
  d.times = uniform_grid(horizon, n_steps);
  d.values.resize(d.times.size());
  for (std::size_t k = 0; k < d.times.size(); ++k) {
    const double t = d.times[k];
    switch (family) {
      case DetFamily::Constant: d.values[k] = c; break;
      case DetFamily::SqrtForward: d.values[k] = c * std::sqrt(t); break;
      case DetFamily::SqrtBackward: d.values[k] = c * std::sqrt(1.0 - t); break;
      case DetFamily::Power: d.values[k] = a * std::pow(t, r); break;
    }
  }
  return d;
}

// Composes an outer sampled path with a time change: values[k] = outer(E(t_k))
// by linear interpolation on the outer grid. The outer path must cover
// [0, max E] with step <= delta/4.
inline SampledDriver time_change(const SampledDriver& outer,
                                 const InversePath& inverse) {
  validate_driver(outer);
  if (inverse.t_grid.empty())
    throw std::invalid_argument("time_change: empty inverse path");
  if (!(outer.times.back() >= inverse.max_value()))
    throw std::invalid_argument(
        "time_change: outer path does not cover [0, max E]");
  double max_step = 0.0;
  for (std::size_t k = 1; k < outer.times.size(); ++k)
    max_step = std::max(max_step, outer.times[k] - outer.times[k - 1]);
  if (inverse.delta > 0.0 && max_step > inverse.delta / 4.0 * (1.0 + 1e-9))
    throw std::invalid_argument(
        "time_change: outer grid step exceeds delta/4");

  SampledDriver out;
  out.times = inverse.t_grid;
  out.values.resize(inverse.values.size());
  std::size_t j = 0;
  for (std::size_t k = 0; k < inverse.values.size(); ++k) {
    const double s = inverse.values[k];
    while (j + 1 < outer.times.size() && outer.times[j + 1] <= s) ++j;
    if (j + 1 == outer.times.size() || outer.times[j] == s) {
      out.values[k] = outer.values[j];
    } else {
      const double t0 = outer.times[j], t1 = outer.times[j + 1];
      const double w = (s - t0) / (t1 - t0);
      out.values[k] = (1.0 - w) * outer.values[j] + w * outer.values[j + 1];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Declarative driver specification (the config-facing surface).

enum class Family {
  Constant,
  SqrtForward,
  SqrtBackward,
  Power,
  Brownian,
  Weierstrass,
};

enum class TimeChangeKind { Identity, InverseStable, InverseTemperedStable };

struct TimeChangeSpec {
  TimeChangeKind kind = TimeChangeKind::Identity;
  double alpha = 0.7;
  double theta = 0.0;
  // Operational-time resolution: delta = E[E_horizon] / op_resolution.
  double op_resolution = 1e4;
};

struct DriverSpec {
  Family family = Family::Constant;
  double c = 0.0;        // constant / sqrt / weierstrass multiplier
  double a = 1.0;        // power prefactor
  double r = 0.5;        // power exponent, in (0, 1/2]
  double kappa = 1.0;    // Brownian multiplier
  int depth = 60;        // Weierstrass truncation depth
  double hurst = 0.5;    // outer self-similarity index (metadata)
  TimeChangeSpec change;
  double horizon = 1.0;
  std::size_t grid_n = 16384;
  std::uint64_t seed = 0;
};

inline void validate_driver_spec(const DriverSpec& spec) {
  if (!(spec.horizon > 0.0))
    throw std::invalid_argument("driver spec: horizon must be > 0");
  if (spec.grid_n < 2)
    throw std::invalid_argument("driver spec: grid size must be >= 2");
  if (spec.family == Family::Brownian && !(spec.kappa > 0.0))
    throw std::invalid_argument("driver spec: kappa must be > 0");
  if (spec.family == Family::Power && !(spec.r > 0.0 && spec.r <= 0.5))
    throw std::invalid_argument("driver spec: r must be in (0, 1/2]");
  if (spec.family == Family::Weierstrass && spec.depth < 0)
    throw std::invalid_argument("driver spec: depth must be >= 0");
  if (spec.change.kind != TimeChangeKind::Identity) {
    if (!(spec.change.alpha > 0.0 && spec.change.alpha < 1.0))
      throw std::invalid_argument("driver spec: alpha must be in (0,1)");
    if (!(spec.change.theta >= 0.0))
      throw std::invalid_argument("driver spec: theta must be >= 0");
  }
}

// Self-similarity index of the composed driver (H*alpha), used by the
// rescale surrogate.
inline double composed_index(const DriverSpec& spec) {
  const double alpha =
      spec.change.kind == TimeChangeKind::Identity ? 1.0 : spec.change.alpha;
  return spec.hurst * alpha;
}

namespace detail {

inline double outer_value(const DriverSpec& spec, double s) {
  switch (spec.family) {
    case Family::Constant: return spec.c;
    case Family::SqrtForward: return spec.c * std::sqrt(s);
    case Family::SqrtBackward:
      return spec.c * std::sqrt(std::max(1.0 - s, 0.0));
    case Family::Power: return spec.a * std::pow(s, spec.r);
    case Family::Weierstrass:
      return spec.c * weierstrass_value(s, spec.depth);
    case Family::Brownian: break;
  }
  throw std::logic_error("outer_value: brownian is sampled, not evaluated");
}

inline double expected_inverse_at(double alpha, double t) {
  // E[E_t] = t^alpha / Gamma(1+alpha)
  return std::pow(t, alpha) / std::tgamma(1.0 + alpha);
}

}  // namespace detail

// Realizes a DriverSpec as a sampled driver on the uniform grid.
// Time-changed variants draw the subordinator from substream 0 of the seed
// and (for Brownian outers) the outer path from substream 1. Deterministic
// outers are evaluated exactly at E(t_k); the clamped sqrt_backward outer
// reads c*sqrt((1-s)+) so composition stays defined past E = 1.
inline SampledDriver make_driver(const DriverSpec& spec) {
  validate_driver_spec(spec);
  const double T = spec.horizon;
  const std::size_t n = spec.grid_n;

  if (spec.change.kind == TimeChangeKind::Identity) {
    switch (spec.family) {
      case Family::Constant:
        return gen_deterministic(DetFamily::Constant, spec.c, 0, 0.5, T, n);
      case Family::SqrtForward:
        return gen_deterministic(DetFamily::SqrtForward, spec.c, 0, 0.5, T, n);
      case Family::SqrtBackward:
        return gen_deterministic(DetFamily::SqrtBackward, spec.c, 0, 0.5, T, n);
      case Family::Power:
        return gen_deterministic(DetFamily::Power, 0, spec.a, spec.r, T, n);
      case Family::Brownian:
        return gen_brownian(T, n, spec.kappa, spec.seed);
      case Family::Weierstrass:
        return gen_weierstrass(T, n, spec.c, spec.depth);
    }
    throw std::logic_error("make_driver: unknown family");
  }

  SubordinatorSpec sub{spec.change.alpha, spec.change.theta};
  const double delta = detail::expected_inverse_at(spec.change.alpha, T) /
                       spec.change.op_resolution;
  const SubordinatorPath path =
      gen_subordinator(sub, T, delta, splitmix64(spec.seed) + 0);
  const InversePath inverse =
      invert_subordinator(path, uniform_grid(T, n));

  SampledDriver out;
  out.times = inverse.t_grid;
  out.values.resize(inverse.values.size());

  if (spec.family == Family::Brownian) {
    // Outer Brownian path on the operational grid delta/4, evaluated at the
    // (delta-quantized) values of E, which land exactly on that grid.
    const double h = delta / 4.0;
    const double e_max = inverse.max_value();
    const std::size_t m = static_cast<std::size_t>(std::ceil(e_max / h)) + 1;
    std::vector<double> bm(m + 1);
    bm[0] = 0.0;
    Rng rng = Rng::substream(spec.seed, 1);
    const double sd = spec.kappa * std::sqrt(h);
    for (std::size_t i = 1; i <= m; ++i) bm[i] = bm[i - 1] + sd * rng.normal();
    for (std::size_t k = 0; k < inverse.values.size(); ++k) {
      const std::size_t idx = static_cast<std::size_t>(
          std::llround(inverse.values[k] / h));
      out.values[k] = bm[idx];
    }
    return out;
  }

  for (std::size_t k = 0; k < inverse.values.size(); ++k)
    out.values[k] = detail::outer_value(spec, inverse.values[k]);
  return out;
}

}  // namespace loewner
