// Acceptance suite: every criterion below runs at its stated size and
// tolerance and prints one pass/fail line. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "loewner/loewner.hpp"

using namespace loewner;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- C1 -------------------------------------------------------------------
bool c01_constant_drive(std::string& detail) {
  const SampledDriver d =
      gen_deterministic(DetFamily::Constant, 0.0, 0, 0.5, 1.0, 1024);
  const HullTrace t = trace_hull(d);
  double worst = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Complex expect{0.0, 2.0 * std::sqrt(t.times[k])};
    worst = std::max(worst, std::abs(t.points[k] - expect));
  }
  const double tip_err = std::abs(t.points.back() - Complex{0.0, 2.0});
  detail = "tip err " + fmt(tip_err) + ", max err " + fmt(worst);
  return tip_err < 1e-12 && worst < 1e-12;
}

// --- C2 -------------------------------------------------------------------
bool c02_hcap_monte_carlo(std::string& detail) {
  const LoewnerChain chain = build_chain(
      gen_deterministic(DetFamily::Constant, 0.0, 0, 0.5, 1.0, 1024));
  const HcapEstimate est = hcap_estimate_mc(chain, 100.0, 10000, 20240801);
  const bool within = std::fabs(est.estimate - 1.0) <= 3.0 * est.std_error;
  const bool tight = est.std_error < 0.05;
  detail = "estimate " + fmt(est.estimate) + ", se " + fmt(est.std_error) +
           " (|est-1|<=3se: " + (within ? "yes" : "no") +
           ", se<0.05: " + (tight ? "yes" : "no") + ")";
  return within && tight;
}

// --- C3 -------------------------------------------------------------------
bool c03_scaling(std::string& detail) {
  const SampledDriver base =
      gen_deterministic(DetFamily::SqrtForward, 1.0, 0, 0.5, 1.0, 1024);
  const HullTrace full = trace_hull(base);
  double worst = 0.0;
  for (double r : {0.5, 2.0, 3.0}) {
    const HullTrace st = trace_hull(scale_driver(base, r));
    for (std::size_t k = 0; k < full.size(); ++k)
      worst = std::max(worst, std::abs(st.points[k] - full.points[k] / r));
  }
  detail = "max pointwise err " + fmt(worst);
  return worst < 1e-10;
}

// --- C4 -------------------------------------------------------------------
bool c04_concatenation(std::string& detail) {
  const std::size_t n = 1024, m = 512;
  SampledDriver d;
  d.times = uniform_grid(1.0, n);
  for (double t : d.times) d.values.push_back(std::sin(t));
  const HullTrace full = trace_hull(d);

  SampledDriver tail;
  for (std::size_t k = m; k <= n; ++k) {
    tail.times.push_back(d.times[k] - d.times[m]);
    tail.values.push_back(d.values[k]);
  }
  const HullTrace tail_trace = trace_hull(tail);
  const LoewnerChain head = build_chain(
      SampledDriver{{d.times.begin(), d.times.begin() + m + 1},
                    {d.values.begin(), d.values.begin() + m + 1}});
  double worst = 0.0;
  for (std::size_t j = 0; j < tail_trace.size(); ++j) {
    Complex w = tail_trace.points[j];
    for (std::size_t i = head.steps.size(); i-- > 0;)
      w = slit_map_inverse(w, head.steps[i].drive, head.steps[i].dt);
    worst = std::max(worst, std::abs(w - full.points[m + j]));
  }
  detail = "max recombination err " + fmt(worst);
  return worst < 1e-10;
}

// --- C5 -------------------------------------------------------------------
bool c05_certificate_truth_table(std::string& detail) {
  const std::size_t n = 4096;
  bool ok = true;
  std::string cert_set, simple_set;
  for (double c : {2.0, 3.9, 4.0, 5.0}) {
    const SampledDriver d =
        gen_deterministic(DetFamily::SqrtBackward, c, 0, 0.5, 1.0, n);
    const bool fired = certificate_at(d, n).has_value();
    const bool simple = lip_norm_certifies_simple(lip_half_norm(d));
    if (fired) cert_set += " " + fmt(c);
    if (simple) simple_set += " " + fmt(c);
    ok &= fired == (c >= 4.0);
    ok &= simple == (c < 4.0);
  }
  detail = "certificates at{" + cert_set + " }, simple at{" + simple_set + " }";
  return ok;
}

// --- C6 -------------------------------------------------------------------
bool c06_laplace_oracle(std::string& detail) {
  struct Case { double alpha, theta; };
  const double delta = 0.1;
  const int n_paths = 100000, steps = 10;
  bool ok = true;
  double worst_z = 0.0;
  int cs = 0;
  for (const Case c : {Case{0.5, 0.0}, Case{0.7, 0.0}, Case{0.5, 1.0}}) {
    const SubordinatorSpec spec{c.alpha, c.theta};
    std::vector<double> d1(n_paths);
    parallel_for(n_paths, [&](std::size_t i) {
      Rng rng = Rng::substream(777000 + cs, i);
      double acc = 0.0;
      std::uint64_t proposals = 0;
      for (int s = 0; s < steps; ++s)
        acc += loewner::detail::tempered_increment(spec, delta, rng, &proposals);
      d1[i] = acc;
    });
    for (double u : {1.0, 2.0}) {
      std::vector<double> vals(n_paths);
      for (int i = 0; i < n_paths; ++i) vals[i] = std::exp(-u * d1[i]);
      const MeanStderr ms = mean_stderr(vals);
      const double target = std::exp(-spec.laplace_exponent(u));
      const double z = std::fabs(ms.mean - target) / ms.std_error;
      worst_z = std::max(worst_z, z);
      ok &= z <= 3.0;
    }
    ++cs;
  }
  detail = "worst |z|-score " + fmt(worst_z);
  return ok;
}

// --- C7 -------------------------------------------------------------------
bool c07_self_similarity_ks(std::string& detail) {
  const int n = 1000;
  bool ok = true;
  double worst_ratio = 0.0;  // statistic / critical value
  const double crit = ks_critical(0.01, n, n);

  for (double alpha : {0.5, 0.7}) {
    const SubordinatorSpec spec{alpha, 0.0};

    // stable D: D_2 vs 2^{1/alpha} D_1 over independent path groups
    std::vector<double> d2(n), d1s(n);
    parallel_for(n, [&](std::size_t i) {
      const double delta = 0.01;
      {
        Rng rng = Rng::substream(910000, i);
        double acc = 0;
        std::uint64_t prop = 0;
        for (int s = 0; s < 200; ++s)
          acc += loewner::detail::tempered_increment(spec, delta, rng, &prop);
        d2[i] = acc;
      }
      {
        Rng rng = Rng::substream(920000, i);
        double acc = 0;
        std::uint64_t prop = 0;
        for (int s = 0; s < 100; ++s)
          acc += loewner::detail::tempered_increment(spec, delta, rng, &prop);
        d1s[i] = std::pow(2.0, 1.0 / alpha) * acc;
      }
    });
    worst_ratio = std::max(worst_ratio, ks_two_sample(d2, d1s) / crit);

    // inverse E: E_2 vs 2^alpha E_1
    std::vector<double> e2(n), e1s(n);
    const double delta_e =
        std::pow(2.0, alpha) / std::tgamma(1.0 + alpha) / 1e4;
    parallel_for(n, [&](std::size_t i) {
      {
        const SubordinatorPath p = gen_subordinator(
            spec, 2.0, delta_e, splitmix64(930000) + i);
        e2[i] = invert_subordinator(p, {0.0, 2.0}).values.back();
      }
      {
        const SubordinatorPath p = gen_subordinator(
            spec, 1.0, delta_e, splitmix64(940000) + i);
        e1s[i] = std::pow(2.0, alpha) *
                 invert_subordinator(p, {0.0, 1.0}).values.back();
      }
    });
    worst_ratio = std::max(worst_ratio, ks_two_sample(e2, e1s) / crit);

    // composed B(E_t): value at 2 vs 2^{alpha/2} value at 1
    std::vector<double> b2(n), b1s(n);
    parallel_for(n, [&](std::size_t i) {
      DriverSpec ds;
      ds.family = Family::Brownian;
      ds.kappa = 1.0;
      ds.change.kind = TimeChangeKind::InverseStable;
      ds.change.alpha = alpha;
      ds.grid_n = 64;
      ds.horizon = 2.0;
      ds.seed = splitmix64(950000) + i;
      b2[i] = make_driver(ds).values.back();
      ds.horizon = 1.0;
      ds.seed = splitmix64(960000) + i;
      b1s[i] = std::pow(2.0, alpha / 2.0) * make_driver(ds).values.back();
    });
    worst_ratio = std::max(worst_ratio, ks_two_sample(b2, b1s) / crit);

    ok &= worst_ratio < 1.0;
  }
  detail = "worst KS/critical " + fmt(worst_ratio) + " over 6 tests";
  return ok;
}

// --- C8 -------------------------------------------------------------------
bool c08_envelope(std::string& detail) {
  const SampledDriver d =
      gen_deterministic(DetFamily::Power, 0, 1.0, 0.3, 1.0, 16384);
  const HullTrace t = trace_hull(d);
  const EnvelopeReport rep = envelope_check(t, 1.0, 0.3, 1.0);
  detail = "violations " + std::to_string(rep.violations.size()) +
           ", threshold t " + fmt(rep.largest_passing_t) + ", max x " +
           fmt(rep.max_x_below_threshold);
  return rep.violations.empty() && rep.max_x_below_threshold >= 0.01;
}

// --- C9 -------------------------------------------------------------------
bool c09_box_avoidance(std::string& detail) {
  bool ok = true;
  for (double k : {7.0, 20.0}) {
    const SampledDriver d =
        gen_deterministic(DetFamily::SqrtForward, k, 0, 0.5, 1.0, 4096);
    const HullTrace t = trace_hull(d);
    const double eps = (6.5 / k) * (6.5 / k);
    ok &= box_clear(t, 1.0, 2.0, eps, 1.0);
  }
  detail = "no trace point entered [1,2] x [26/k, inf) for k in {7, 20}";
  return ok;
}

// --- C10 ------------------------------------------------------------------
bool c10_rescale_degeneration(std::string& detail) {
  DriverSpec spec;
  spec.family = Family::Brownian;
  spec.kappa = 1.0;
  spec.change.kind = TimeChangeKind::InverseStable;
  spec.change.alpha = 0.7;
  spec.grid_n = 4096;
  spec.horizon = 1.0;
  spec.seed = 31415;
  const std::vector<double> rs{1.0, 4.0, 16.0, 64.0};
  const std::size_t seeds = 50;
  const auto stats = rescale_experiment(spec, rs, seeds);
  std::vector<double> med_w, med_h;
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    std::vector<double> ws, hs;
    for (std::size_t s = 0; s < seeds; ++s) {
      ws.push_back(stats[ri * seeds + s].width);
      hs.push_back(stats[ri * seeds + s].hausdorff);
    }
    med_w.push_back(median(ws));
    med_h.push_back(median(hs));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < med_w.size(); ++i)
    decreasing &= med_w[i] < med_w[i - 1];
  const bool halved = med_h.back() < 0.5 * med_h.front();
  detail = "median widths";
  for (double w : med_w) detail += " " + fmt(w);
  detail += "; hausdorff r=64 " + fmt(med_h.back()) + " vs r=1 " +
            fmt(med_h.front());
  return decreasing && halved;
}

// --- C11 ------------------------------------------------------------------
bool c11_timechanged_bm_certificates(std::string& detail) {
  const int seeds = 200;
  bool ok = true;
  detail = "firing rates:";
  for (double alpha : {0.5, 0.7}) {
    std::vector<int> fired(seeds, 0);
    parallel_for(seeds, [&](std::size_t s) {
      DriverSpec spec;
      spec.family = Family::Brownian;
      spec.kappa = 1.0;
      spec.change.kind = TimeChangeKind::InverseStable;
      spec.change.alpha = alpha;
      spec.grid_n = 16384;
      spec.horizon = 1.0;
      spec.seed = splitmix64(111000 + static_cast<int>(alpha * 10)) + s;
      const SampledDriver d = make_driver(spec);
      fired[s] = scan_certificates(d).empty() ? 0 : 1;
    });
    int total = 0;
    for (int f : fired) total += f;
    const double rate = static_cast<double>(total) / seeds;
    detail += " alpha=" + fmt(alpha) + ": " + fmt(rate);
    ok &= rate >= 0.90;
  }
  return ok;
}

// --- C12 ------------------------------------------------------------------
bool c12_sqrt_phase_check(std::string& detail) {
  const int seeds = 200;
  bool ok = true;
  detail = "firing rates:";
  for (double alpha : {0.3, 0.4}) {
    std::vector<int> fired(seeds, 0);
    parallel_for(seeds, [&](std::size_t s) {
      DriverSpec spec;
      spec.family = Family::SqrtForward;
      spec.c = 1.0;
      spec.change.kind = TimeChangeKind::InverseStable;
      spec.change.alpha = alpha;
      spec.change.op_resolution = 2e4;
      spec.grid_n = 1u << 20;  // certificate scan only; no tracing
      spec.horizon = 1.0;
      spec.seed = splitmix64(222000 + static_cast<int>(alpha * 10)) + s;
      const SampledDriver d = make_driver(spec);
      fired[s] = scan_certificates(d).empty() ? 0 : 1;
    });
    int total = 0;
    for (int f : fired) total += f;
    const double rate = static_cast<double>(total) / seeds;
    detail += " alpha=" + fmt(alpha) + ": " + fmt(rate);
    ok &= rate >= 0.95;
  }
  // analytic classifier: sqrt(E_t) has beta = 1 away from zero
  for (double alpha : {0.8, 0.9})
    ok &= classify_timechanged(1.0, alpha).phase == HullPhase::Simple;
  for (double alpha : {0.3, 0.4})
    ok &= classify_timechanged(1.0, alpha).phase == HullPhase::NonSimple;
  return ok;
}

// --- C13 ------------------------------------------------------------------
bool c13_weierstrass(std::string& detail) {
  const double w0 = weierstrass_value(0.0, 60);
  const bool value_ok = std::fabs(w0 - (2.0 + std::sqrt(2.0))) < 1e-8;

  FigureRecipe recipe;
  recipe.id = "fig7_weierstrass_hull";
  recipe.seed = 7;
  recipe.out_dir = "acceptance_out";
  const auto files = figure(recipe);
  const bool figure_ok = files.size() == 1;

  const int seeds = 100;
  std::vector<int> fired(seeds, 0);
  parallel_for(seeds, [&](std::size_t s) {
    DriverSpec spec;
    spec.family = Family::Weierstrass;
    spec.c = 1.0;
    spec.depth = 60;
    spec.change.kind = TimeChangeKind::InverseStable;
    spec.change.alpha = 0.7;
    spec.grid_n = 16384;
    spec.horizon = 1.0;
    spec.seed = splitmix64(333000) + s;
    fired[s] = scan_certificates(make_driver(spec)).empty() ? 0 : 1;
  });
  int total = 0;
  for (int f : fired) total += f;
  const double rate = static_cast<double>(total) / seeds;
  detail = "W(0) err " + fmt(std::fabs(w0 - (2.0 + std::sqrt(2.0)))) +
           ", figure files " + std::to_string(files.size()) +
           ", firing rate " + fmt(rate);
  return value_ok && figure_ok && rate >= 0.90;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C01", "constant-drive exactness", 1.0, c01_constant_drive},
      {"C02", "hcap Monte Carlo", 60.0, c02_hcap_monte_carlo},
      {"C03", "scaling commutation", 10.0, c03_scaling},
      {"C04", "concatenation", 10.0, c04_concatenation},
      {"C05", "certificate truth table", 5.0, c05_certificate_truth_table},
      {"C06", "Laplace transform oracle", 60.0, c06_laplace_oracle},
      {"C07", "self-similarity KS suite", 120.0, c07_self_similarity_ks},
      {"C08", "tangential envelope", 30.0, c08_envelope},
      {"C09", "box avoidance", 10.0, c09_box_avoidance},
      {"C10", "rescaled-hull degeneration", 600.0, c10_rescale_degeneration},
      {"C11", "time-changed BM certificate frequency", 600.0,
       c11_timechanged_bm_certificates},
      {"C12", "sqrt(E_t) phase check", 600.0, c12_sqrt_phase_check},
      {"C13", "Weierstrass pipeline", 300.0, c13_weierstrass},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      pass = false;
    }
    const double elapsed = seconds_since(t0);
    const bool in_budget = elapsed < c.budget_seconds;
    const bool ok = pass && in_budget;
    if (!ok) ++failures;
    std::printf("[%s] %s %s (%s; %.2f s of %.0f s budget)\n",
                ok ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                detail.c_str(), elapsed, c.budget_seconds);
    std::fflush(stdout);
  }
  if (failures)
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures;
}
