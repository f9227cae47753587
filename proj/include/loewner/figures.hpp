#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "loewner/analysis.hpp"
#include "loewner/csv.hpp"
#include "loewner/processes.hpp"
#include "loewner/svg.hpp"
#include "loewner/trace.hpp"

namespace loewner {

struct FigureRecipe {
  std::string id;
  std::map<std::string, double> overrides;  // n, stride, alpha, kappa, c, ...
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

struct FigureInfo {
  std::string id;
  std::string summary;
  std::string defaults;
};

inline std::vector<FigureInfo> list_figures() {
  return {
      {"fig1_sle_vs_timechanged",
       "trace driven by B_t next to one driven by B(E_t)",
       "kappa=1 alpha=0.7 n=16384 T=1"},
      {"fig2_subordinators", "stable subordinator sample paths",
       "alpha=0.7,0.9 op_resolution=10000"},
      {"fig3_inverse_and_bet",
       "inverse subordinator paths and the time-changed Brownian motion",
       "alpha=0.7,0.9 n=16384 T=1"},
      {"fig4_sqrt_comparison",
       "driver sqrt(1-E_t) against the certificate curve 4*sqrt(T-t)",
       "alpha=0.7 n=16384 T=1"},
      {"fig5_sqrt_under_bm",
       "driver B(E_t) against the certificate curve 4*sqrt(T-t)",
       "kappa=1 alpha=0.7 n=16384 T=1"},
      {"fig6_sqrt_et_hulls",
       "hulls driven by sqrt(E_t) for several alpha, sqrt(t) dashed",
       "alpha=0.9,0.7,0.4,0.3 n=16384 T=1"},
      {"fig7_weierstrass_hull", "hull driven by W(E_t)",
       "c=1 alpha=0.7 depth=60 n=16384 T=1"},
  };
}

namespace detail {

inline double figure_param(const FigureRecipe& r, const std::string& key,
                           double fallback) {
  const auto it = r.overrides.find(key);
  return it == r.overrides.end() ? fallback : it->second;
}

inline std::vector<std::pair<double, double>> driver_series(
    const SampledDriver& d) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(d.size());
  for (std::size_t k = 0; k < d.size(); ++k)
    pts.emplace_back(d.times[k], d.values[k]);
  return pts;
}

inline std::vector<std::pair<double, double>> trace_series(
    const HullTrace& t) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k)
    pts.emplace_back(t.points[k].real(), t.points[k].imag());
  return pts;
}

// Staircase rendering for pure-jump paths.
inline std::vector<std::pair<double, double>> staircase_series(
    const SubordinatorPath& p, std::size_t stride) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = 0; n + stride < p.values.size(); n += stride) {
    const double t0 = p.delta * static_cast<double>(n);
    const double t1 = p.delta * static_cast<double>(n + stride);
    pts.emplace_back(t0, p.values[n]);
    pts.emplace_back(t1, p.values[n]);
  }
  return pts;
}

inline DriverSpec composed_spec(Family family, double alpha, double param,
                                double horizon, std::size_t n,
                                std::uint64_t seed) {
  DriverSpec spec;
  spec.family = family;
  spec.change.kind = TimeChangeKind::InverseStable;
  spec.change.alpha = alpha;
  spec.horizon = horizon;
  spec.grid_n = n;
  spec.seed = seed;
  switch (family) {
    case Family::Brownian: spec.kappa = param; break;
    case Family::Power: spec.a = param; break;
    default: spec.c = param; break;
  }
  return spec;
}

// Comparison curve lambda(T) +- 4*sqrt(T-t) anchored at the certificate.
inline SvgSeries certificate_curve(const SampledDriver& d,
                                   const NonSimpleCertificate& cert) {
  SvgSeries s;
  s.color = "crimson";
  const double T = cert.time;
  const double lam_T = d.values[cert.t_index];
  const std::size_t start =
      cert.t_index > 3 * cert.window_points
          ? cert.t_index - 3 * cert.window_points
          : 0;
  double side = 0.0;
  for (std::size_t i = start; i < cert.t_index; ++i)
    side += d.values[i] - lam_T;
  side = side >= 0.0 ? 1.0 : -1.0;
  for (std::size_t i = start; i <= cert.t_index; ++i) {
    const double t = d.times[i];
    s.points.emplace_back(t, lam_T + side * 4.0 * std::sqrt(T - t));
  }
  return s;
}

inline std::string write_figure(const FigureRecipe& r, const SvgFigure& fig) {
  std::filesystem::create_directories(r.out_dir);
  const std::string path =
      (std::filesystem::path(r.out_dir) / (r.id + ".svg")).string();
  write_text_file(path, fig.render());
  return path;
}

}  // namespace detail

// Regenerates the named figure at desk scale. Returns the written file paths.
inline std::vector<std::string> figure(const FigureRecipe& r) {
  using detail::composed_spec;
  using detail::figure_param;
  const std::size_t n =
      static_cast<std::size_t>(figure_param(r, "n", 16384));
  const std::size_t stride =
      static_cast<std::size_t>(figure_param(r, "stride", 4));
  const double T = figure_param(r, "T", 1.0);
  const auto seed_note = "seed " + std::to_string(r.seed);

  if (r.id == "fig1_sle_vs_timechanged") {
    const double kappa = figure_param(r, "kappa", 1.0);
    const double alpha = figure_param(r, "alpha", 0.7);
    SampledDriver plain = gen_brownian(T, n, kappa, r.seed);
    SampledDriver changed =
        make_driver(composed_spec(Family::Brownian, alpha, kappa, T, n,
                                  splitmix64(r.seed) + 1));
    SvgFigure fig(2);
    auto& left = fig.add_panel("trace of B_t");
    left.equal_aspect = true;
    left.series.push_back({detail::trace_series(trace_hull(plain, stride)),
                           "steelblue", false, 1.0});
    auto& right = fig.add_panel("trace of B(E_t)");
    right.equal_aspect = true;
    right.series.push_back({detail::trace_series(trace_hull(changed, stride)),
                            "darkorange", false, 1.0});
    fig.add_caption_line("fig1_sle_vs_timechanged: kappa=" +
                         format_double(kappa) + " alpha=" +
                         format_double(alpha) + " n=" + std::to_string(n) +
                         " T=" + format_double(T) + " " + seed_note);
    return {detail::write_figure(r, fig)};
  }

  if (r.id == "fig2_subordinators") {
    SvgFigure fig(2);
    int panel = 0;
    for (double alpha : {figure_param(r, "alpha_left", 0.7),
                         figure_param(r, "alpha_right", 0.9)}) {
      SubordinatorSpec spec{alpha, 0.0};
      const double delta = std::pow(T, alpha) / std::tgamma(1.0 + alpha) / 2000;
      SubordinatorPath p =
          gen_subordinator(spec, T, delta, splitmix64(r.seed) + panel);
      auto& pan = fig.add_panel("stable subordinator, alpha=" +
                                format_double(alpha));
      pan.series.push_back({detail::staircase_series(p, 1), "steelblue",
                            false, 1.0});
      ++panel;
    }
    fig.add_caption_line("fig2_subordinators: alpha=0.7 (left), 0.9 (right); " +
                         seed_note);
    return {detail::write_figure(r, fig)};
  }

  if (r.id == "fig3_inverse_and_bet") {
    SvgFigure fig(2);
    const double alphas[2] = {figure_param(r, "alpha_left", 0.7),
                              figure_param(r, "alpha_right", 0.9)};
    std::vector<SampledDriver> drivers;
    for (int i = 0; i < 2; ++i) {
      DriverSpec spec = composed_spec(Family::Brownian, alphas[i], 1.0, T, n,
                                      splitmix64(r.seed) + i);
      drivers.push_back(make_driver(spec));
      // Rebuild E itself for the top row.
      SubordinatorSpec sub{alphas[i], 0.0};
      const double delta =
          std::pow(T, alphas[i]) / std::tgamma(1.0 + alphas[i]) /
          spec.change.op_resolution;
      SubordinatorPath p = gen_subordinator(sub, T, delta,
                                            splitmix64(spec.seed) + 0);
      InversePath inv = invert_subordinator(p, uniform_grid(T, n));
      auto& pan =
          fig.add_panel("inverse subordinator E_t, alpha=" +
                        format_double(alphas[i]));
      SvgSeries s;
      s.color = "seagreen";
      for (std::size_t k = 0; k < inv.t_grid.size(); k += 8)
        s.points.emplace_back(inv.t_grid[k], inv.values[k]);
      pan.series.push_back(std::move(s));
    }
    for (int i = 0; i < 2; ++i) {
      auto& pan = fig.add_panel("B(E_t), alpha=" + format_double(alphas[i]));
      SvgSeries s;
      s.color = "steelblue";
      const auto pts = detail::driver_series(drivers[i]);
      for (std::size_t k = 0; k < pts.size(); k += 8) s.points.push_back(pts[k]);
      pan.series.push_back(std::move(s));
    }
    fig.add_caption_line(
        "fig3_inverse_and_bet: E_t (top) and B(E_t) (bottom), alpha=0.7 "
        "(left), 0.9 (right); " + seed_note);
    return {detail::write_figure(r, fig)};
  }

  if (r.id == "fig4_sqrt_comparison" || r.id == "fig5_sqrt_under_bm") {
    const double alpha = figure_param(r, "alpha", 0.7);
    const bool brownian = r.id == "fig5_sqrt_under_bm";
    DriverSpec spec =
        brownian
            ? composed_spec(Family::Brownian, alpha,
                            figure_param(r, "kappa", 1.0), T, n, r.seed)
            : composed_spec(Family::SqrtBackward, alpha,
                            figure_param(r, "c", 1.0), T, n, r.seed);
    SampledDriver d = make_driver(spec);
    auto certs = scan_certificates(d);
    SvgFigure fig(1);
    auto& pan = fig.add_panel(brownian ? "B(E_t) vs 4*sqrt(T-t)"
                                       : "sqrt(1-E_t) vs 4*sqrt(T-t)");
    pan.series.push_back({detail::driver_series(d), "steelblue", false, 1.0});
    if (!certs.empty()) {
      // widest window makes the clearest picture
      const auto best = *std::max_element(
          certs.begin(), certs.end(),
          [](const auto& x, const auto& y) { return x.eps < y.eps; });
      pan.series.push_back(detail::certificate_curve(d, best));
      fig.add_caption_line(
          r.id + ": certificate at T=" + format_double(best.time) +
          " eps=" + format_double(best.eps) + " alpha=" +
          format_double(alpha) + " n=" + std::to_string(n) + " " + seed_note);
    } else {
      fig.add_caption_line(r.id + ": no certificate fired; alpha=" +
                           format_double(alpha) + " n=" + std::to_string(n) +
                           " " + seed_note);
    }
    return {detail::write_figure(r, fig)};
  }

  if (r.id == "fig6_sqrt_et_hulls") {
    SvgFigure fig(1);
    auto& pan = fig.add_panel("hulls of sqrt(E_t)");
    pan.equal_aspect = true;
    const double alphas[4] = {0.9, 0.7, 0.4, 0.3};
    const char* colors[4] = {"green", "red", "purple", "orange"};
    for (int i = 0; i < 4; ++i) {
      DriverSpec spec = composed_spec(Family::SqrtForward, alphas[i], 1.0, T,
                                      n, splitmix64(r.seed) + i);
      const HullTrace t = trace_hull(make_driver(spec), stride);
      pan.series.push_back({detail::trace_series(t), colors[i], false, 1.2});
    }
    SampledDriver plain =
        gen_deterministic(DetFamily::SqrtForward, 1.0, 0, 0.5, T, n);
    pan.series.push_back(
        {detail::trace_series(trace_hull(plain, stride)), "black", true, 1.0});
    fig.add_caption_line(
        "fig6_sqrt_et_hulls: alpha=0.9 green, 0.7 red, 0.4 purple, 0.3 "
        "orange; sqrt(t) hull dashed; n=" + std::to_string(n) + " " +
        seed_note);
    return {detail::write_figure(r, fig)};
  }

  if (r.id == "fig7_weierstrass_hull") {
    const double alpha = figure_param(r, "alpha", 0.7);
    DriverSpec spec = composed_spec(Family::Weierstrass, alpha,
                                    figure_param(r, "c", 1.0), T, n, r.seed);
    spec.depth = static_cast<int>(figure_param(r, "depth", 60));
    const HullTrace t = trace_hull(make_driver(spec), stride);
    SvgFigure fig(1);
    auto& pan = fig.add_panel("hull of W(E_t)");
    pan.equal_aspect = true;
    pan.series.push_back({detail::trace_series(t), "steelblue", false, 1.0});
    fig.add_caption_line("fig7_weierstrass_hull: c=" +
                         format_double(figure_param(r, "c", 1.0)) +
                         " alpha=" + format_double(alpha) + " depth=" +
                         std::to_string(spec.depth) + " n=" +
                         std::to_string(n) + " " + seed_note);
    return {detail::write_figure(r, fig)};
  }

  throw std::invalid_argument("figure: unknown id '" + r.id + "'");
}

}  // namespace loewner
