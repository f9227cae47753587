#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "loewner/chain.hpp"
#include "loewner/driver.hpp"
#include "loewner/parallel.hpp"
#include "loewner/slit_map.hpp"

namespace loewner {

// Thrown when a trace composition leaves the closed upper halfplane beyond
// tolerance. The trace need not exist for arbitrary continuous drivers; the
// tracer reports breakdown instead of asserting existence.
class NumericalBreakdownError : public std::runtime_error {
 public:
  explicit NumericalBreakdownError(const std::string& what)
      : std::runtime_error(what) {}
};

// The computed hull boundary gamma(t_k) in the closed upper halfplane.
struct HullTrace {
  std::vector<double> times;
  std::vector<Complex> points;

  std::size_t size() const { return times.size(); }
};

inline void validate_trace(const HullTrace& trace) {
  if (trace.times.size() != trace.points.size())
    throw std::invalid_argument("trace: times/points length mismatch");
  for (const auto& p : trace.points)
    if (p.imag() < -1e-12)
      throw std::invalid_argument("trace: point below the real line");
}

namespace detail {

// gamma(t_k) = f_1(f_2(...f_k(drive_k))) with f_j the inverse slit map of
// step j, evaluated right-to-left per point (no state reused across points,
// so rounding never compounds). O(N^2/stride) total; parallel across k.
inline HullTrace trace_impl(const LoewnerChain& chain, double t0, double v0,
                            std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("trace: stride must be >= 1");
  const std::size_t n = chain.steps.size();
  std::vector<std::size_t> ks;
  for (std::size_t k = stride; k <= n; k += stride) ks.push_back(k);
  if (!ks.empty() && ks.back() != n) ks.push_back(n);

  HullTrace trace;
  trace.times.resize(ks.size() + 1);
  trace.points.resize(ks.size() + 1);
  trace.times[0] = t0;
  trace.points[0] = Complex(v0, 0.0);

  std::vector<double> cumt(n + 1);
  cumt[0] = t0;
  for (std::size_t k = 0; k < n; ++k) cumt[k + 1] = cumt[k] + chain.steps[k].dt;

  parallel_for(ks.size(), [&](std::size_t idx) {
    const std::size_t k = ks[idx];
    Complex w(chain.steps[k - 1].drive, 0.0);
    for (std::size_t j = k; j-- > 0;) {
      w = slit_map_inverse(w, chain.steps[j].drive, chain.steps[j].dt);
      if (w.imag() < -1e-9)
        throw NumericalBreakdownError(
            "trace_hull: branch violation (negative imaginary part)");
    }
    trace.times[idx + 1] = cumt[k];
    trace.points[idx + 1] = w;
  });
  return trace;
}

}  // namespace detail

inline HullTrace trace_hull(const SampledDriver& driver,
                            std::size_t stride = 1) {
  const LoewnerChain chain = build_chain(driver);
  HullTrace t = detail::trace_impl(chain, driver.times.front(),
                                   driver.values.front(), stride);
  // Reuse the driver's own grid times to avoid re-accumulation error.
  if (stride == 1)
    for (std::size_t k = 0; k < driver.size(); ++k) t.times[k] = driver.times[k];
  return t;
}

// Trace directly from a chain (grid times reconstructed by accumulation).
// The initial drive value doubles as gamma(0).
inline HullTrace trace_from_chain(const LoewnerChain& chain,
                                  std::size_t stride = 1) {
  if (chain.steps.empty())
    throw std::invalid_argument("trace_from_chain: empty chain");
  const double v0 = chain.steps.front().drive;
  return detail::trace_impl(chain, 0.0, v0, stride);
}

// Self-convergence report for a driver family evaluable at any grid size:
// tip differences between consecutive grid doublings and the implied
// empirical order (positive = converging).
struct ConvergenceReport {
  std::vector<std::size_t> grid_sizes;
  std::vector<double> tip_deltas;  // |tip(N_{i+1}) - tip(N_i)|
  double estimated_order = 0.0;
};

inline ConvergenceReport trace_self_convergence(
    const std::function<SampledDriver(std::size_t)>& make_driver,
    const std::vector<std::size_t>& grid_sizes) {
  if (grid_sizes.size() < 3)
    throw std::invalid_argument("self_convergence: need >= 3 grid sizes");
  ConvergenceReport report;
  report.grid_sizes = grid_sizes;
  std::vector<Complex> tips;
  for (std::size_t n : grid_sizes) {
    const SampledDriver d = make_driver(n);
    const HullTrace t = trace_hull(d, n);  // tip only
    tips.push_back(t.points.back());
  }
  for (std::size_t i = 0; i + 1 < tips.size(); ++i)
    report.tip_deltas.push_back(std::abs(tips[i + 1] - tips[i]));
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < report.tip_deltas.size(); ++i) {
    const double ratio = report.tip_deltas[i] / report.tip_deltas[i + 1];
    const double gridratio = static_cast<double>(grid_sizes[i + 1]) /
                             static_cast<double>(grid_sizes[i]);
    orders.push_back(std::log(ratio) / std::log(gridratio));
  }
  double sum = 0.0;
  for (double o : orders) sum += o;
  report.estimated_order = sum / static_cast<double>(orders.size());
  return report;
}

}  // namespace loewner
