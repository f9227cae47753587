#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "loewner/analysis.hpp"
#include "loewner/chain.hpp"
#include "loewner/config.hpp"
#include "loewner/csv.hpp"
#include "loewner/figures.hpp"
#include "loewner/hcap.hpp"
#include "loewner/processes.hpp"
#include "loewner/stats.hpp"
#include "loewner/svg.hpp"
#include "loewner/trace.hpp"

namespace loewner {

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct ManifestEntry {
  std::string name;
  std::size_t bytes = 0;
  std::uint64_t hash = 0;
  bool complete = true;
};

namespace detail {

class OutputDir {
 public:
  OutputDir(const std::filesystem::path& dir) : dir_(dir) {
    std::filesystem::create_directories(dir_);
  }

  void emit(const std::string& name, const std::string& body, bool complete) {
    write_text_file((dir_ / name).string(), body);
    manifest_.push_back({name, body.size(), fnv1a64(body), complete});
  }

  void write_manifest() const {
    std::string out = "path,bytes,fnv1a64,status\n";
    for (const auto& e : manifest_) {
      char hash_hex[20];
      std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                    static_cast<unsigned long long>(e.hash));
      out += e.name + "," + std::to_string(e.bytes) + "," + hash_hex + "," +
             (e.complete ? "complete" : "incomplete") + "\n";
    }
    write_text_file((dir_ / "manifest.csv").string(), out);
  }

  const std::vector<ManifestEntry>& manifest() const { return manifest_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<ManifestEntry> manifest_;
};

inline std::string analysis_file_stem(std::size_t index,
                                      const AnalysisSpec& a) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "analysis_%02zu_", index + 1);
  return buf + a.label;
}

}  // namespace detail

// Executes every analysis in declaration order; writes one CSV per analysis
// (and one SVG per plot when requested), then a manifest listing every
// emitted file with a content hash. Exit 0 when all analyses completed,
// 2 on configuration errors, 3 on numerical breakdown (the log names the
// failing stage). Partial outputs are retained, marked incomplete.
inline int run_experiment_config(const ExperimentConfig& cfg,
                                 std::ostream& log) {
  detail::OutputDir out(cfg.output_dir);
  if (cfg.analyses.empty()) {
    out.write_manifest();
    log << "no analyses requested; manifest written\n";
    return 0;
  }

  std::string stage = "driver generation";
  try {
    const SampledDriver driver = make_driver(cfg.driver);
    out.emit("driver.csv", driver_csv(driver), true);

    bool need_trace = false;
    for (const auto& a : cfg.analyses)
      if (a.kind == AnalysisSpec::Kind::Envelope ||
          (a.kind == AnalysisSpec::Kind::Occupation && a.box_eps))
        need_trace = true;

    std::optional<HullTrace> trace;
    if (need_trace) {
      stage = "trace";
      trace = trace_hull(driver, cfg.trace_stride);
      out.emit("trace.csv", trace_csv(*trace), true);
    }

    for (std::size_t i = 0; i < cfg.analyses.size(); ++i) {
      const AnalysisSpec& a = cfg.analyses[i];
      stage = a.label;
      const std::string stem = detail::analysis_file_stem(i, a);
      using Kind = AnalysisSpec::Kind;
      switch (a.kind) {
        case Kind::Certificates: {
          const auto certs = scan_certificates(
              driver,
              a.scan_all_indices ? ScanMode::AllIndices : ScanMode::Extrema,
              a.min_window);
          out.emit(stem + ".csv", certificates_csv(certs), true);
          if (cfg.want_svg) {
            SvgFigure fig(1);
            auto& pan = fig.add_panel("driver and certificate window");
            pan.series.push_back({loewner::detail::driver_series(driver),
                                  "steelblue", false, 1.0});
            if (!certs.empty()) {
              const auto best = *std::max_element(
                  certs.begin(), certs.end(),
                  [](const auto& x, const auto& y) { return x.eps < y.eps; });
              pan.series.push_back(
                  loewner::detail::certificate_curve(driver, best));
            }
            fig.add_caption_line(cfg.name + ": certificates=" +
                                 std::to_string(certs.size()) + ", seed " +
                                 std::to_string(cfg.driver.seed));
            out.emit(stem + ".svg", fig.render(), true);
          }
          log << "[" << a.label << "] certificates found: " << "ok\n";
          break;
        }
        case Kind::LipNorm: {
          const double norm = lip_half_norm(driver);
          CsvWriter w("norm,certifies_simple");
          w.row({norm, lip_norm_certifies_simple(norm) ? 1.0 : 0.0});
          out.emit(stem + ".csv", w.str(), true);
          if (cfg.want_svg) {
            SvgFigure fig(1);
            auto& pan = fig.add_panel("driver");
            pan.series.push_back({loewner::detail::driver_series(driver),
                                  "steelblue", false, 1.0});
            fig.add_caption_line(cfg.name + ": lip_half_norm=" +
                                 format_double(norm));
            out.emit(stem + ".svg", fig.render(), true);
          }
          break;
        }
        case Kind::Envelope: {
          const EnvelopeReport rep =
              envelope_check(*trace, a.a, a.r, a.t_small);
          std::string body = envelope_csv(rep);
          out.emit(stem + ".csv", body, true);
          CsvWriter meta("a,r,t_small,violations,largest_passing_t,max_x");
          meta.row({rep.a, rep.r, rep.t_small,
                    static_cast<double>(rep.violations.size()),
                    rep.largest_passing_t, rep.max_x_below_threshold});
          out.emit(stem + "_summary.csv", meta.str(), true);
          if (cfg.want_svg) {
            SvgFigure fig(1);
            auto& pan = fig.add_panel("trace and envelope bound");
            pan.equal_aspect = true;
            pan.series.push_back({loewner::detail::trace_series(*trace),
                                  "steelblue", false, 1.0});
            SvgSeries bound;
            bound.color = "crimson";
            bound.dashed = true;
            double max_x = 0.0;
            for (const auto& p : trace->points)
              max_x = std::max(max_x, p.real());
            for (int s = 0; s <= 200; ++s) {
              const double x = max_x * s / 200.0;
              bound.points.emplace_back(
                  x, (26.0 / a.a) * std::pow(x, 2.0 - 2.0 * a.r));
            }
            pan.series.push_back(std::move(bound));
            fig.add_caption_line(cfg.name + ": envelope a=" +
                                 format_double(a.a) + " r=" +
                                 format_double(a.r));
            out.emit(stem + ".svg", fig.render(), true);
          }
          break;
        }
        case Kind::Occupation: {
          const double occ = occupation_time(driver, a.lo, a.hi, a.T);
          if (a.box_eps) {
            const bool clear = box_clear(*trace, a.lo, a.hi, *a.box_eps, a.T);
            CsvWriter w("lo,hi,T,occupation,box_eps,box_clear");
            w.row({a.lo, a.hi, a.T, occ, *a.box_eps, clear ? 1.0 : 0.0});
            out.emit(stem + ".csv", w.str(), true);
          } else {
            CsvWriter w("lo,hi,T,occupation");
            w.row({a.lo, a.hi, a.T, occ});
            out.emit(stem + ".csv", w.str(), true);
          }
          break;
        }
        case Kind::Rescale: {
          const auto stats =
              rescale_experiment(cfg.driver, a.r_list, a.n_seeds,
                                 cfg.trace_stride);
          out.emit(stem + ".csv", rescale_csv(stats), true);
          if (cfg.want_svg) {
            SvgFigure fig(1);
            auto& pan = fig.add_panel("median width and hausdorff vs r");
            SvgSeries widths, hds;
            widths.color = "steelblue";
            hds.color = "seagreen";
            for (std::size_t ri = 0; ri < a.r_list.size(); ++ri) {
              std::vector<double> ws, hs;
              for (std::size_t s = 0; s < a.n_seeds; ++s) {
                ws.push_back(stats[ri * a.n_seeds + s].width);
                hs.push_back(stats[ri * a.n_seeds + s].hausdorff);
              }
              widths.points.emplace_back(std::log2(a.r_list[ri]), median(ws));
              hds.points.emplace_back(std::log2(a.r_list[ri]), median(hs));
            }
            pan.series.push_back(std::move(widths));
            pan.series.push_back(std::move(hds));
            fig.add_caption_line(cfg.name +
                                 ": medians vs log2(r); width blue, "
                                 "hausdorff green");
            out.emit(stem + ".svg", fig.render(), true);
          }
          break;
        }
        case Kind::Hcap: {
          const LoewnerChain chain = build_chain(driver);
          const HcapEstimate est = hcap_estimate_mc(
              chain, a.launch_height, a.n_samples, cfg.driver.seed);
          CsvWriter w("estimate,std_error,n_samples,launch_height");
          w.row({est.estimate, est.std_error,
                 static_cast<double>(est.n_samples), est.launch_height});
          out.emit(stem + ".csv", w.str(), true);
          if (cfg.want_svg) {
            SvgFigure fig(1);
            auto& pan = fig.add_panel("hull used for the capacity estimate");
            pan.equal_aspect = true;
            pan.series.push_back(
                {loewner::detail::trace_series(trace_from_chain(chain, 4)),
                 "steelblue", false, 1.0});
            fig.add_caption_line(cfg.name + ": hcap=" +
                                 format_double(est.estimate) + " +- " +
                                 format_double(est.std_error));
            out.emit(stem + ".svg", fig.render(), true);
          }
          break;
        }
      }
    }
  } catch (const NumericalBreakdownError& e) {
    out.emit("error.txt",
             std::string("numerical breakdown in stage '") + stage + "': " +
                 e.what() + "\n",
             false);
    out.write_manifest();
    log << "numerical breakdown in stage '" << stage << "': " << e.what()
        << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    out.emit("error.txt",
             std::string("invalid parameters in stage '") + stage + "': " +
                 e.what() + "\n",
             false);
    out.write_manifest();
    log << "invalid parameters in stage '" << stage << "': " << e.what()
        << "\n";
    return 2;
  }

  out.write_manifest();
  log << "run '" << cfg.name << "' complete: " << out.manifest().size()
      << " files in " << out.dir().string() << "\n";
  return 0;
}

inline int run_experiment(const std::string& config_path, std::ostream& log) {
  std::string text;
  try {
    text = read_text_file(config_path);
  } catch (const std::exception& e) {
    log << e.what() << "\n";
    return 2;
  }
  ExperimentConfig cfg;
  try {
    cfg = parse_experiment_config(text);
  } catch (const ConfigError& e) {
    log << e.what() << "\n";
    return 2;
  }
  return run_experiment_config(cfg, log);
}

}  // namespace loewner
