#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace loewner {

// A real-valued driving function sampled on a strictly increasing time grid
// in halfplane-capacity time, with times[0] = 0. The universal input to the
// Loewner solver.
struct SampledDriver {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  double horizon() const { return times.empty() ? 0.0 : times.back(); }
};

inline void validate_driver(const SampledDriver& d) {
  if (d.times.size() != d.values.size())
    throw std::invalid_argument("driver: times/values length mismatch");
  if (d.times.size() < 2)
    throw std::invalid_argument("driver: need at least 2 grid points");
  if (d.times.front() != 0.0)
    throw std::invalid_argument("driver: times[0] must be 0");
  for (std::size_t k = 1; k < d.times.size(); ++k)
    if (!(d.times[k] > d.times[k - 1]))
      throw std::invalid_argument("driver: times must be strictly increasing");
  for (double t : d.times)
    if (!std::isfinite(t))
      throw std::invalid_argument("driver: non-finite time");
  for (double v : d.values)
    if (!std::isfinite(v))
      throw std::invalid_argument("driver: non-finite value");
}

// Uniform grid {k*T/N : k = 0..N}; the endpoint is set to T exactly.
inline std::vector<double> uniform_grid(double horizon, std::size_t n_steps) {
  if (!(horizon > 0.0)) throw std::invalid_argument("grid: horizon must be > 0");
  if (n_steps < 1) throw std::invalid_argument("grid: need at least 1 step");
  std::vector<double> t(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k)
    t[k] = horizon * static_cast<double>(k) / static_cast<double>(n_steps);
  t[n_steps] = horizon;
  return t;
}

// Loewner scaling: the hull (1/r)K_{r^2 t} is generated by (1/r)lambda(r^2 t),
// so the scaled driver lives on grid times/r^2 with values/r.
inline SampledDriver scale_driver(const SampledDriver& d, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("scale_driver: r must be > 0");
  validate_driver(d);
  SampledDriver out;
  out.times.reserve(d.times.size());
  out.values.reserve(d.values.size());
  const double r2 = r * r;
  for (double t : d.times) out.times.push_back(t / r2);
  for (double v : d.values) out.values.push_back(v / r);
  return out;
}

}  // namespace loewner
