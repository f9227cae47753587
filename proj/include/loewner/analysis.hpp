#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "loewner/driver.hpp"
#include "loewner/parallel.hpp"
#include "loewner/processes.hpp"
#include "loewner/stats.hpp"
#include "loewner/trace.hpp"

namespace loewner {

// Witness that |lambda(T) - lambda(t)| >= 4*sqrt(T-t) holds at every grid
// point of a trailing window [T - eps, T], which forces the hull to be
// non-simple at time T. A discrete pass is strong evidence for the continuum
// inequality, not a proof.
struct NonSimpleCertificate {
  std::size_t t_index = 0;     // grid index of the certificate time T
  double time = 0.0;           // T itself
  double eps = 0.0;            // window length
  double margin = 0.0;         // min over the window of |dl| - 4*sqrt(dt)
  std::size_t window_points = 0;
};

// Largest trailing grid-aligned window at T = times[t_index] on which the
// inequality holds at every grid point; margin is taken over points strictly
// before T (at T itself both sides vanish). Windows under min_window points
// are rejected as vacuous.
inline std::optional<NonSimpleCertificate> certificate_at(
    const SampledDriver& d, std::size_t t_index, std::size_t min_window = 8) {
  validate_driver(d);
  if (t_index >= d.size())
    throw std::invalid_argument("certificate_at: index out of range");
  if (t_index < min_window) return std::nullopt;
  const double T = d.times[t_index];
  const double lam_T = d.values[t_index];
  double margin = std::numeric_limits<double>::infinity();
  std::size_t count = 1;  // the point t = T itself
  for (std::size_t i = t_index; i-- > 0;) {
    const double gap = std::fabs(lam_T - d.values[i]) -
                       4.0 * std::sqrt(T - d.times[i]);
    if (gap < 0.0) break;
    margin = std::min(margin, gap);
    ++count;
  }
  if (count < min_window) return std::nullopt;
  NonSimpleCertificate cert;
  cert.t_index = t_index;
  cert.time = T;
  cert.eps = T - d.times[t_index - (count - 1)];
  cert.margin = margin;
  cert.window_points = count;
  return cert;
}

enum class ScanMode {
  Extrema,     // one-sided extrema (ties included) plus the final index
  AllIndices,  // every index; same certificates, O(N^2) worst case
};

// Applies certificate_at across candidate times. The inequality forces T to
// be a one-sided extremum over its window, so candidates are the local
// extrema of the sampled driver (plateau starts count) plus the final index.
inline std::vector<NonSimpleCertificate> scan_certificates(
    const SampledDriver& d, ScanMode mode = ScanMode::Extrema,
    std::size_t min_window = 8) {
  validate_driver(d);
  const std::size_t n = d.size();
  std::vector<NonSimpleCertificate> hits;
  auto try_index = [&](std::size_t j) {
    if (auto cert = certificate_at(d, j, min_window)) hits.push_back(*cert);
  };
  for (std::size_t j = min_window; j + 1 < n; ++j) {
    if (mode == ScanMode::Extrema) {
      const double dl = d.values[j] - d.values[j - 1];
      const double dr = d.values[j + 1] - d.values[j];
      const bool rising = dl > 0.0 && dr > 0.0;
      const bool falling = dl < 0.0 && dr < 0.0;
      if (rising || falling || dl == 0.0) continue;
    } else if (d.values[j] == d.values[j - 1]) {
      continue;  // the window dies immediately at t_{j-1}
    }
    try_index(j);
  }
  if (n - 1 >= min_window) try_index(n - 1);
  return hits;
}

// Exact Lip(1/2) seminorm on the grid: max over pairs s < t of
// |lambda(s)-lambda(t)|/sqrt(t-s). O(N^2).
inline double lip_half_norm(const SampledDriver& d) {
  validate_driver(d);
  const std::size_t n = d.size();
  std::vector<double> best(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double b = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double q = std::fabs(d.values[i] - d.values[j]) /
                       std::sqrt(d.times[j] - d.times[i]);
      b = std::max(b, q);
    }
    best[i] = b;
  });
  return *std::max_element(best.begin(), best.end());
}

// Norm below 4 certifies a simple curve (quasi-slit halfplane regime).
inline bool lip_norm_certifies_simple(double norm) { return norm < 4.0; }

enum class HullPhase { Simple, NonSimple, Undetermined };

struct PhaseVerdict {
  HullPhase phase = HullPhase::Undetermined;
  // The non-simple branch additionally assumes the lower-bound hypothesis
  // |X_tau - X_t| >= c (tau - t)^beta with tau independent of D; that
  // assumption is recorded here rather than verified.
  bool assumes_lower_bound_hypothesis = false;
};

// Analytic phase classifier for X composed with an inverse subordinator whose
// Laplace exponent is regularly varying with index alpha: beta-Hoelder outer
// paths give simple curves when beta > 1/(2 alpha) and non-simple ones when
// beta < 1/(2 alpha); the boundary case is undetermined.
inline PhaseVerdict classify_timechanged(double beta, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("classify: alpha must be in (0,1)");
  if (!(beta > 0.0)) throw std::invalid_argument("classify: beta must be > 0");
  const double threshold = 1.0 / (2.0 * alpha);
  if (beta > threshold) return {HullPhase::Simple, false};
  if (beta < threshold) return {HullPhase::NonSimple, true};
  return {HullPhase::Undetermined, false};
}

// ---------------------------------------------------------------------------
// Tangential envelope: when lambda(0) = 0 and lambda(t) >= a t^r the small-
// time hull lies in {0 <= x, 0 < y < (26/a) x^(2-2r)}.

struct EnvelopeViolation {
  double time = 0.0;
  Complex point{0.0, 0.0};
  double bound = 0.0;
};

struct EnvelopeReport {
  double a = 0.0;
  double r = 0.0;
  double t_small = 0.0;             // requested time cutoff
  std::vector<EnvelopeViolation> violations;  // at times <= t_small
  double largest_passing_t = 0.0;   // largest grid time with no violation below
  double max_x_below_threshold = 0.0;
};

inline EnvelopeReport envelope_check(const HullTrace& trace, double a, double r,
                                     double t_small) {
  if (!(a > 0.0)) throw std::invalid_argument("envelope: a must be > 0");
  if (!(r > 0.0 && r <= 0.5))
    throw std::invalid_argument("envelope: r must be in (0, 1/2]");
  validate_trace(trace);
  EnvelopeReport report;
  report.a = a;
  report.r = r;
  report.t_small = t_small;
  const double exponent = 2.0 - 2.0 * r;
  bool passing = true;
  for (std::size_t k = 1; k < trace.size(); ++k) {  // base point gamma(0) exempt
    const double x = trace.points[k].real();
    const double y = trace.points[k].imag();
    const double bound = x >= 0.0 ? (26.0 / a) * std::pow(x, exponent) : 0.0;
    const bool inside = x >= 0.0 && y > 0.0 && y < bound;
    if (inside) {
      if (passing) {
        report.largest_passing_t = trace.times[k];
        report.max_x_below_threshold =
            std::max(report.max_x_below_threshold, x);
      }
    } else {
      passing = false;
      if (trace.times[k] <= t_small)
        report.violations.push_back({trace.times[k], trace.points[k], bound});
    }
  }
  if (passing) report.largest_passing_t = trace.times.back();
  return report;
}

// ---------------------------------------------------------------------------
// Occupation time and box avoidance (the deterministic width machinery).

// sum of dt_k * 1{lambda(t_k) in [lo, hi]} over grid points with t_k <= T
// (right-endpoint increments, matching the chain discretization).
inline double occupation_time(const SampledDriver& d, double lo, double hi,
                              double T) {
  validate_driver(d);
  if (T > d.times.back() + 1e-12)
    throw std::invalid_argument("occupation_time: T beyond the grid");
  double acc = 0.0;
  for (std::size_t k = 1; k < d.size(); ++k) {
    if (d.times[k] > T) break;
    if (d.values[k] >= lo && d.values[k] <= hi)
      acc += d.times[k] - d.times[k - 1];
  }
  return acc;
}

// Companion predicate: no trace point of time <= T lies in
// [lo, hi] x [4*sqrt(eps*T), infinity).
inline bool box_clear(const HullTrace& trace, double lo, double hi, double eps,
                      double T) {
  validate_trace(trace);
  const double height = 4.0 * std::sqrt(eps * T);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (trace.times[k] > T) break;
    const double x = trace.points[k].real();
    const double y = trace.points[k].imag();
    if (x >= lo && x <= hi && y >= height) return false;
  }
  return true;
}

inline double hull_width(const HullTrace& trace) {
  validate_trace(trace);
  if (trace.points.empty())
    throw std::invalid_argument("hull_width: empty trace");
  double lo = trace.points.front().real(), hi = lo;
  for (const auto& p : trace.points) {
    lo = std::min(lo, p.real());
    hi = std::max(hi, p.real());
  }
  return hi - lo;
}

namespace detail {

inline double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() +
              (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace detail

// Hausdorff distance between the trace polyline and the capacity-1 limit
// segment [0, 2i], sampled at 10^3 points per side.
inline double hausdorff_to_segment(const HullTrace& trace,
                                   std::size_t samples = 1000) {
  validate_trace(trace);
  if (trace.points.empty())
    throw std::invalid_argument("hausdorff: empty trace");
  const Complex seg_a(0.0, 0.0), seg_b(0.0, 2.0);
  double d1 = 0.0;
  for (const auto& p : trace.points)
    d1 = std::max(d1, detail::point_segment_distance(p, seg_a, seg_b));
  double d2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double y = 2.0 * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
    const Complex q(0.0, y);
    double best = std::abs(q - trace.points.front());
    for (std::size_t k = 0; k + 1 < trace.points.size(); ++k)
      best = std::min(best, detail::point_segment_distance(
                                q, trace.points[k], trace.points[k + 1]));
    d2 = std::max(d2, best);
  }
  return std::max(d1, d2);
}

// ---------------------------------------------------------------------------
// Rescaled-hull statistics.

struct RescaleStats {
  double r = 1.0;
  std::uint64_t seed = 0;
  double width = 0.0;
  double hausdorff = 0.0;
};

// For each (r, seed): generates the composed driver on [0,1], forms the
// distribution-equal surrogate r^(2*H*alpha - 1) * lambda(t) of the rescaled
// hull (1/r) K_{r^2}, traces its capacity-1 hull and records the width and
// the Hausdorff distance to the segment [0, 2i]. Results are ordered r-major,
// seed-minor regardless of the worker pool.
inline std::vector<RescaleStats> rescale_experiment(
    const DriverSpec& spec, const std::vector<double>& r_list,
    std::size_t n_seeds, std::size_t trace_stride = 1) {
  validate_driver_spec(spec);
  if (r_list.empty())
    throw std::invalid_argument("rescale: empty r list");
  for (double r : r_list)
    if (!(r > 0.0)) throw std::invalid_argument("rescale: r must be > 0");
  const double exponent = 2.0 * composed_index(spec) - 1.0;
  std::vector<RescaleStats> results(r_list.size() * n_seeds);
  parallel_for(n_seeds, [&](std::size_t s) {
    DriverSpec local = spec;
    local.seed = splitmix64(spec.seed) + s;
    const SampledDriver base = make_driver(local);
    for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
      const double factor = std::pow(r_list[ri], exponent);
      SampledDriver scaled = base;
      for (double& v : scaled.values) v *= factor;
      const HullTrace trace = trace_hull(scaled, trace_stride);
      RescaleStats& slot = results[ri * n_seeds + s];
      slot.r = r_list[ri];
      slot.seed = local.seed;
      slot.width = hull_width(trace);
      slot.hausdorff = hausdorff_to_segment(trace);
    }
  });
  return results;
}

}  // namespace loewner
