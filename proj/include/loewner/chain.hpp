#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "loewner/driver.hpp"
#include "loewner/slit_map.hpp"

namespace loewner {

// Discretization of g_t as a composition of elementary vertical-slit maps.
// Step k consumes capacity dt and holds the drive constant at `drive`
// (right-endpoint rule), so hcap(K_t) = t is exact per step.
struct LoewnerChain {
  struct Step {
    double dt;
    double drive;
  };
  std::vector<Step> steps;
  double total_capacity = 0.0;
};

inline void validate_chain(const LoewnerChain& chain) {
  double sum = 0.0;
  for (const auto& s : chain.steps) {
    if (!(s.dt > 0.0))
      throw std::invalid_argument("chain: capacity increments must be > 0");
    sum += s.dt;
  }
  const double scale = std::max(std::fabs(chain.total_capacity), 1.0);
  if (std::fabs(sum - chain.total_capacity) > 1e-12 * scale)
    throw std::invalid_argument("chain: total_capacity out of tolerance");
}

inline LoewnerChain build_chain(const SampledDriver& driver) {
  validate_driver(driver);
  LoewnerChain chain;
  chain.steps.reserve(driver.size() - 1);
  for (std::size_t k = 1; k < driver.size(); ++k)
    chain.steps.push_back({driver.times[k] - driver.times[k - 1],
                           driver.values[k]});
  chain.total_capacity = driver.times.back();
  validate_chain(chain);
  return chain;
}

// Outcome of pushing a point through the chain. SWALLOWED is a valid result:
// the point entered the hull at `step` (0-based index of the offending step).
struct PointFate {
  bool swallowed = false;
  std::size_t step = 0;
  Complex value{0.0, 0.0};
};

namespace detail {

// Swallowing test for one forward step. A point is absorbed when the forward
// image collapses onto the drive (the ODE singularity g_t(z) -> lambda(t))
// or when it starts within 1e-9 of the slit segment itself.
inline bool near_slit_segment(Complex z, double drive, double dt) {
  const double height = 2.0 * std::sqrt(dt);
  const double dx = z.real() - drive;
  const double dy = z.imag() <= 0.0 ? -z.imag()
                    : (z.imag() >= height ? z.imag() - height : 0.0);
  return std::sqrt(dx * dx + dy * dy) < 1e-9;
}

}  // namespace detail

// Applies the chain's forward maps to z in order, reporting SWALLOWED at the
// first step where the point enters the slit.
inline PointFate point_evolution(Complex z, const LoewnerChain& chain) {
  if (z.imag() < -1e-12)
    throw std::invalid_argument("point_evolution: z below the real line");
  PointFate fate;
  fate.value = z;
  for (std::size_t k = 0; k < chain.steps.size(); ++k) {
    const auto& s = chain.steps[k];
    if (detail::near_slit_segment(fate.value, s.drive, s.dt)) {
      fate.swallowed = true;
      fate.step = k;
      return fate;
    }
    bool inside = false;
    const Complex w = detail::forward_branch(fate.value, s.drive, s.dt, &inside);
    if (inside ||
        (w.imag() < 1e-9 && std::fabs(w.real() - s.drive) < 1e-6)) {
      fate.swallowed = true;
      fate.step = k;
      fate.value = w;
      return fate;
    }
    fate.value = w;
  }
  return fate;
}

inline bool is_in_hull(Complex z, const LoewnerChain& chain) {
  return point_evolution(z, chain).swallowed;
}

}  // namespace loewner
