// Command-line front end: declarative experiment runs, figure regeneration
// and one-shot hull tracing. LOEWNER_THREADS caps worker parallelism.

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loewner/loewner.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  return loewner::run_experiment(config_path, std::cout);
}

int cmd_figure(const std::string& id, std::uint64_t seed,
               const std::string& out_dir,
               const std::vector<std::string>& sets) {
  loewner::FigureRecipe recipe;
  recipe.id = id;
  recipe.seed = seed;
  recipe.out_dir = out_dir;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--set expects key=value, got '" << kv << "'\n";
      return 2;
    }
    try {
      recipe.overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (...) {
      std::cerr << "--set '" << kv << "' has a non-numeric value\n";
      return 2;
    }
  }
  try {
    for (const auto& path : loewner::figure(recipe))
      std::cout << path << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const loewner::NumericalBreakdownError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}

int cmd_list_figures(bool as_csv) {
  const auto figs = loewner::list_figures();
  if (as_csv) {
    std::cout << "id,summary,defaults\n";
    for (const auto& f : figs)
      std::cout << f.id << ",\"" << f.summary << "\",\"" << f.defaults
                << "\"\n";
    return 0;
  }
  for (const auto& f : figs) {
    std::cout << f.id << "\n    " << f.summary << "\n    defaults: "
              << f.defaults << "\n";
  }
  return 0;
}

struct TraceArgs {
  std::string family;
  double c = 0.0, a = 1.0, r = 0.5, kappa = 1.0;
  int depth = 60;
  double horizon = 1.0;
  std::size_t n = 1024;
  std::size_t stride = 1;
  std::uint64_t seed = 0;
  std::string time_change = "identity";
  double alpha = 0.7, theta = 0.0;
  std::string out;
};

int cmd_trace(const TraceArgs& args) {
  loewner::DriverSpec spec;
  try {
    loewner::KeyTree dummy;  // reuse the config-level family names
    dummy.value = args.family;
    spec.family = loewner::detail::family_from_string(dummy.value, "--family");
    spec.c = args.c;
    spec.a = args.a;
    spec.r = args.r;
    spec.kappa = args.kappa;
    spec.depth = args.depth;
    spec.horizon = args.horizon;
    spec.grid_n = args.n;
    spec.seed = args.seed;
    if (args.time_change == "identity")
      spec.change.kind = loewner::TimeChangeKind::Identity;
    else if (args.time_change == "inverse_stable")
      spec.change.kind = loewner::TimeChangeKind::InverseStable;
    else if (args.time_change == "inverse_tempered_stable")
      spec.change.kind = loewner::TimeChangeKind::InverseTemperedStable;
    else {
      std::cerr << "unknown --time-change '" << args.time_change << "'\n";
      return 2;
    }
    spec.change.alpha = args.alpha;
    spec.change.theta = args.theta;

    const loewner::SampledDriver d = loewner::make_driver(spec);
    const loewner::HullTrace t = loewner::trace_hull(d, args.stride);
    loewner::write_text_file(args.out, loewner::trace_csv(t));
    std::cout << args.out << "\n";
  } catch (const loewner::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const loewner::NumericalBreakdownError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewner evolution toolkit: hull tracing, stochastic drivers "
               "and geometric hull criteria"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "execute a declarative experiment");
  run->add_option("config", config_path, "experiment config file")
      ->required();

  std::string fig_id, fig_out = ".";
  std::uint64_t fig_seed = 1;
  std::vector<std::string> fig_sets;
  auto* fig = app.add_subcommand("figure", "regenerate a named figure");
  fig->add_option("id", fig_id, "figure id (see list-figures)")->required();
  fig->add_option("--seed", fig_seed, "master seed");
  fig->add_option("--out", fig_out, "output directory");
  fig->add_option("--set", fig_sets, "override, e.g. --set alpha=0.4");

  bool list_csv = false;
  auto* lf = app.add_subcommand("list-figures", "list figure ids");
  lf->add_flag("--csv", list_csv, "machine-readable output");

  TraceArgs targs;
  auto* tr = app.add_subcommand("trace", "one-shot hull trace to CSV");
  tr->add_option("--family", targs.family,
                 "constant|sqrt_forward|sqrt_backward|power|brownian|"
                 "weierstrass")
      ->required();
  tr->add_option("--c", targs.c, "constant / sqrt / weierstrass multiplier");
  tr->add_option("--a", targs.a, "power prefactor");
  tr->add_option("--r", targs.r, "power exponent in (0, 1/2]");
  tr->add_option("--kappa", targs.kappa, "Brownian multiplier");
  tr->add_option("--depth", targs.depth, "Weierstrass depth");
  tr->add_option("--T", targs.horizon, "capacity horizon");
  tr->add_option("--N", targs.n, "grid size")->required();
  tr->add_option("--stride", targs.stride, "trace stride");
  tr->add_option("--seed", targs.seed, "master seed");
  tr->add_option("--time-change", targs.time_change,
                 "identity|inverse_stable|inverse_tempered_stable");
  tr->add_option("--alpha", targs.alpha, "time-change index");
  tr->add_option("--theta", targs.theta, "tempering factor");
  tr->add_option("--out", targs.out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path);
  if (fig->parsed()) return cmd_figure(fig_id, fig_seed, fig_out, fig_sets);
  if (lf->parsed()) return cmd_list_figures(list_csv);
  if (tr->parsed()) return cmd_trace(targs);
  return 2;
}
