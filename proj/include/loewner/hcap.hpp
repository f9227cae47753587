#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "loewner/chain.hpp"
#include "loewner/parallel.hpp"
#include "loewner/rng.hpp"
#include "loewner/stats.hpp"
#include "loewner/trace.hpp"

namespace loewner {

struct HcapEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double launch_height = 0.0;
};

namespace detail {

struct HullGeometry {
  std::vector<Complex> polyline;  // trace points, starting on the real line
  double min_x = 0.0, max_x = 0.0, max_y = 0.0;
};

// First crossing of the segment a->b with the polyline, as a parameter
// t in [0,1] along a->b. Returns false when there is no crossing.
inline bool first_polyline_crossing(const HullGeometry& hull, Complex a,
                                    Complex b, double* t_hit) {
  const double lox = std::min(a.real(), b.real());
  const double hix = std::max(a.real(), b.real());
  const double loy = std::min(a.imag(), b.imag());
  if (hix < hull.min_x || lox > hull.max_x || loy > hull.max_y) return false;
  const double dx = b.real() - a.real();
  const double dy = b.imag() - a.imag();
  double best = 2.0;
  for (std::size_t i = 0; i + 1 < hull.polyline.size(); ++i) {
    const Complex p = hull.polyline[i];
    const Complex q = hull.polyline[i + 1];
    const double ex = q.real() - p.real();
    const double ey = q.imag() - p.imag();
    const double det = dx * ey - dy * ex;
    if (det == 0.0) continue;
    const double rx = p.real() - a.real();
    const double ry = p.imag() - a.imag();
    const double t = (rx * ey - ry * ex) / det;
    const double s = (rx * dy - ry * dx) / det;
    if (t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0) best = std::min(best, t);
  }
  if (best > 1.0) return false;
  *t_hit = best;
  return true;
}

inline double point_edge_distance(Complex p, Complex a, Complex b,
                                  Complex* nearest) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 == 0.0 ? 0.0
                         : ((p.real() - a.real()) * ab.real() +
                            (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  *nearest = a + t * ab;
  return std::abs(p - *nearest);
}

// Lower bound on dist(z, K) via the bounding box, replaced by the exact
// polyline distance once the walk is close. Keeps the step rule contracting
// toward the full absorbing set at O(polyline) cost only near the hull.
inline double hull_distance(const HullGeometry& hull, Complex z,
                            Complex* nearest) {
  const double dx = std::max({hull.min_x - z.real(), 0.0,
                              z.real() - hull.max_x});
  const double dy = std::max(z.imag() - hull.max_y, 0.0);
  const double bbox_dist = std::sqrt(dx * dx + dy * dy);
  const double reach = 0.25 * z.imag();
  if (bbox_dist > reach) return bbox_dist;  // lower bound suffices
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < hull.polyline.size(); ++i) {
    Complex cand;
    const double d =
        point_edge_distance(z, hull.polyline[i], hull.polyline[i + 1], &cand);
    if (d < best) {
      best = d;
      *nearest = cand;
    }
  }
  return best;
}

}  // namespace detail

// Monte Carlo halfplane capacity through the probabilistic interpretation
// hcap(K) = 1/2 lim_{y->inf} y E^{iy}[Im B_tau], tau the hitting time of
// R union K. Discrete isotropic walk with step
// min(0.2 * dist-to-(R union K), 0.05 * launch_height); contracting the step
// toward the whole absorbing set keeps the chord-crossing undercount (the
// Brownian bridge crosses a slit its chord misses) below the Monte Carlo
// error. A walk is absorbed on the hull when its step segment crosses the
// trace polyline or it contracts to within the floor of it (scored at the
// nearest hull point), and on R when it sinks below the step floor, scored
// as Im = 0. Returns the estimate and the standard error of the estimate.
inline HcapEstimate hcap_estimate_mc(const LoewnerChain& chain,
                                     double launch_height,
                                     std::size_t n_samples,
                                     std::uint64_t seed) {
  if (!(launch_height > 0.0))
    throw std::invalid_argument("hcap: launch_height must be > 0");
  if (n_samples == 0)
    throw std::invalid_argument("hcap: n_samples must be > 0");
  if (chain.steps.empty())
    return {0.0, 0.0, n_samples, launch_height};  // walk stops on R with Im=0

  const HullTrace trace = trace_from_chain(chain);
  detail::HullGeometry hull;
  hull.polyline = trace.points;
  hull.min_x = hull.max_x = hull.polyline.front().real();
  for (const auto& p : hull.polyline) {
    hull.min_x = std::min(hull.min_x, p.real());
    hull.max_x = std::max(hull.max_x, p.real());
    hull.max_y = std::max(hull.max_y, p.imag());
  }
  if (!(launch_height >= 50.0 * hull.max_y))
    throw std::invalid_argument(
        "hcap: launch_height below 50x the maximum trace height");

  const double floor = 1e-6 * launch_height;
  // Excursions far above the launch height a.s. return but with untenable
  // expected duration; they carry an O((launch/ceiling)^2) capacity
  // contribution, so they are truncated and scored as real-line absorption.
  const double ceiling = 100.0 * launch_height;
  std::vector<double> stops(n_samples, 0.0);
  parallel_for(n_samples, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    Complex z(0.0, launch_height);
    std::size_t steps_taken = 0;
    for (;;) {
      if (z.imag() < floor || z.imag() > ceiling ||
          ++steps_taken > 4000000) {
        stops[i] = 0.0;  // absorbed on the real line (or truncated escape)
        break;
      }
      Complex nearest{0.0, 0.0};
      const double d_hull = detail::hull_distance(hull, z, &nearest);
      if (d_hull < floor) {
        stops[i] = std::max(nearest.imag(), 0.0);  // contact absorption on K
        break;
      }
      const double step = std::min(0.2 * std::min(z.imag(), d_hull),
                                   0.05 * launch_height);
      const double angle = 6.283185307179586476925286766559 * rng.uniform01();
      const Complex next = z + step * Complex(std::cos(angle), std::sin(angle));
      double t_hit = 0.0;
      if (detail::first_polyline_crossing(hull, z, next, &t_hit)) {
        const Complex hit = z + t_hit * (next - z);
        stops[i] = std::max(hit.imag(), 0.0);
        break;
      }
      if (next.imag() >= floor && next.real() >= hull.min_x - step &&
          next.real() <= hull.max_x + step && next.imag() <= hull.max_y &&
          is_in_hull(next, chain)) {
        stops[i] = next.imag();
        break;
      }
      z = next;
    }
  });

  const MeanStderr ms = mean_stderr(stops);
  return {0.5 * launch_height * ms.mean, 0.5 * launch_height * ms.std_error,
          n_samples, launch_height};
}

}  // namespace loewner
