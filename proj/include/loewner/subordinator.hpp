#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "loewner/rng.hpp"

namespace loewner {

// One-sided stable draw S with E[e^{-uS}] = e^{-scale * u^alpha}, by the
// standard trigonometric transform of two uniforms (Kanter's form): with
// theta ~ U(0,pi) and W ~ Exp(1),
//   a(theta) = sin(alpha*theta)^(alpha/(1-alpha)) * sin((1-alpha)*theta)
//              / sin(theta)^(1/(1-alpha)),
//   S = scale^(1/alpha) * (a(theta)/W)^((1-alpha)/alpha).
inline double gen_stable_increment(double alpha, double scale, Rng& rng) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("stable_increment: alpha must be in (0,1)");
  if (!(scale > 0.0))
    throw std::invalid_argument("stable_increment: scale must be > 0");
  const double pi = 3.14159265358979323846;
  const double theta = pi * rng.uniform01();
  const double w = rng.exponential();
  const double a = std::pow(std::sin(alpha * theta), alpha / (1.0 - alpha)) *
                   std::sin((1.0 - alpha) * theta) /
                   std::pow(std::sin(theta), 1.0 / (1.0 - alpha));
  return std::pow(scale, 1.0 / alpha) *
         std::pow(a / w, (1.0 - alpha) / alpha);
}

// Subordinator family: stable (theta = 0) with psi(u) = u^alpha, or tempered
// stable with psi(u) = (u+theta)^alpha - theta^alpha.
struct SubordinatorSpec {
  double alpha = 0.5;
  double theta = 0.0;

  double laplace_exponent(double u) const {
    if (theta == 0.0) return std::pow(u, alpha);
    return std::pow(u + theta, alpha) - std::pow(theta, alpha);
  }
};

inline void validate_subordinator_spec(const SubordinatorSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw std::invalid_argument("subordinator: alpha must be in (0,1)");
  if (!(spec.theta >= 0.0))
    throw std::invalid_argument("subordinator: theta must be >= 0");
}

// Sampled path of D on the operational-time grid {0, delta, 2*delta, ...}.
// Strictly increasing for these infinite-measure families.
struct SubordinatorPath {
  double delta = 0.0;               // operational time step
  std::vector<double> values;       // D at n*delta, values[0] = 0
  double tempering_acceptance = 1.0;  // observed rejection-sampler rate

  double op_horizon() const {
    return delta * static_cast<double>(values.size() - 1);
  }
};

namespace detail {

// Tempered increments by exponential tilting: propose a stable(alpha,
// scale=delta) increment x and accept with probability e^{-theta x}, exact
// in law for the increment of the tempered process over delta.
inline double tempered_increment(const SubordinatorSpec& spec, double delta,
                                 Rng& rng, std::uint64_t* proposals) {
  for (;;) {
    ++*proposals;
    const double x = gen_stable_increment(spec.alpha, delta, rng);
    if (spec.theta == 0.0) return x;
    if (rng.uniform01() < std::exp(-spec.theta * x)) return x;
  }
}

}  // namespace detail

// Generates D with i.i.d. increments per operational step delta until the
// path exceeds horizon_hint (so the inverse is defined on [0, horizon_hint]).
// The expected tempering acceptance rate e^{-delta*theta^alpha} must stay
// above 0.1; shrink delta otherwise.
inline SubordinatorPath gen_subordinator(const SubordinatorSpec& spec,
                                         double horizon_hint, double delta,
                                         std::uint64_t seed,
                                         std::size_t max_steps = 50000000) {
  validate_subordinator_spec(spec);
  if (!(horizon_hint > 0.0))
    throw std::invalid_argument("subordinator: horizon_hint must be > 0");
  if (!(delta > 0.0))
    throw std::invalid_argument("subordinator: delta must be > 0");
  const double expected_rate =
      std::exp(-delta * std::pow(spec.theta, spec.alpha));
  if (spec.theta > 0.0 && expected_rate < 0.1)
    throw std::invalid_argument(
        "subordinator: tempering acceptance rate below 0.1; reduce delta");

  Rng rng(seed);
  SubordinatorPath path;
  path.delta = delta;
  path.values.push_back(0.0);
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  while (path.values.back() <= horizon_hint) {
    if (path.values.size() > max_steps)
      throw std::runtime_error(
          "subordinator: horizon not reached within step budget");
    const double inc = detail::tempered_increment(spec, delta, rng, &proposals);
    ++accepted;
    path.values.push_back(path.values.back() + inc);
  }
  path.tempering_acceptance =
      proposals ? static_cast<double>(accepted) / static_cast<double>(proposals)
                : 1.0;
  return path;
}

inline void validate_subordinator_path(const SubordinatorPath& path) {
  if (path.values.empty() || path.values.front() != 0.0)
    throw std::invalid_argument("subordinator path: values[0] must be 0");
  for (std::size_t i = 1; i < path.values.size(); ++i)
    if (!(path.values[i] >= path.values[i - 1]))
      throw std::invalid_argument("subordinator path: not non-decreasing");
}

// Inverse E_t = inf{s : D_s > t} resolved on the operational grid:
// E(t) = delta * min{n : D_{n*delta} > t}. Accuracy is +-delta in E by
// construction; increments are non-negative integer multiples of delta.
struct InversePath {
  std::vector<double> t_grid;
  std::vector<double> values;
  double delta = 0.0;

  double max_value() const { return values.empty() ? 0.0 : values.back(); }
};

// Diagnostic estimate of the local Hoelder exponent of an inverse path:
// slope of log(max increment) against log(lag) over dyadic lags. The paths
// are locally weak alpha-Hoelder, so estimates concentrate near alpha; this
// is a reported statistic, not a sharp assertion.
inline double holder_exponent_estimate(const std::vector<double>& t_grid,
                                       const std::vector<double>& values,
                                       int n_scales = 6) {
  if (t_grid.size() != values.size() || t_grid.size() < (1u << n_scales) + 1)
    throw std::invalid_argument("holder_estimate: grid too short");
  std::vector<double> log_lag, log_max;
  for (int j = 0; j < n_scales; ++j) {
    const std::size_t lag = 1u << j;
    double m = 0.0;
    for (std::size_t k = 0; k + lag < values.size(); ++k)
      m = std::max(m, std::fabs(values[k + lag] - values[k]));
    if (m <= 0.0) continue;
    log_lag.push_back(std::log((t_grid[lag] - t_grid[0])));
    log_max.push_back(std::log(m));
  }
  if (log_lag.size() < 2)
    throw std::invalid_argument("holder_estimate: path has no increments");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < log_lag.size(); ++i) {
    mx += log_lag[i];
    my += log_max[i];
  }
  mx /= static_cast<double>(log_lag.size());
  my /= static_cast<double>(log_lag.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_lag.size(); ++i) {
    sxx += (log_lag[i] - mx) * (log_lag[i] - mx);
    sxy += (log_lag[i] - mx) * (log_max[i] - my);
  }
  return sxy / sxx;
}

inline InversePath invert_subordinator(const SubordinatorPath& path,
                                       const std::vector<double>& t_grid) {
  validate_subordinator_path(path);
  if (t_grid.empty())
    throw std::invalid_argument("invert_subordinator: empty grid");
  if (!(path.values.back() > t_grid.back()))
    throw std::invalid_argument(
        "invert_subordinator: path does not cover the time grid");
  InversePath inv;
  inv.t_grid = t_grid;
  inv.delta = path.delta;
  inv.values.resize(t_grid.size());
  std::size_t n = 0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (k > 0 && !(t_grid[k] >= t_grid[k - 1]))
      throw std::invalid_argument("invert_subordinator: grid not sorted");
    if (t_grid[k] == 0.0) {
      inv.values[k] = 0.0;  // E_0 = 0: D_s > 0 for all s > 0 a.s.
      continue;
    }
    while (n < path.values.size() && !(path.values[n] > t_grid[k])) ++n;
    inv.values[k] = path.delta * static_cast<double>(n);
  }
  return inv;
}

}  // namespace loewner
