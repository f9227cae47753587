#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "loewner/config.hpp"
#include "loewner/csv.hpp"
#include "loewner/rng.hpp"

using namespace loewner;

namespace {

const char* kCanonical = R"(# canonical experiment config
name demo_run
driver {
  family brownian
  kappa 1
  hurst 0.5
  horizon 1
  seed 7
  time_change {
    kind inverse_stable
    alpha 0.7
    op_resolution 10000
  }
}
solver {
  n 1024
  stride 1
}
analyses {
  certificates {
    min_window 8
  }
  lip_norm {
  }
  hcap {
    n_samples 1000
    launch_height 100
  }
}
output {
  dir out_demo
  formats csv,svg
}
)";

}  // namespace

TEST_CASE("canonical config parses with every field") {
  const ExperimentConfig cfg = parse_experiment_config(kCanonical);
  REQUIRE(cfg.name == "demo_run");
  REQUIRE(cfg.driver.family == Family::Brownian);
  REQUIRE(cfg.driver.kappa == 1.0);
  REQUIRE(cfg.driver.seed == 7);
  REQUIRE(cfg.driver.change.kind == TimeChangeKind::InverseStable);
  REQUIRE(cfg.driver.change.alpha == 0.7);
  REQUIRE(cfg.solver_n == 1024);
  REQUIRE(cfg.driver.grid_n == 1024);
  REQUIRE(cfg.analyses.size() == 3);
  REQUIRE(cfg.analyses[0].kind == AnalysisSpec::Kind::Certificates);
  REQUIRE(cfg.analyses[1].kind == AnalysisSpec::Kind::LipNorm);
  REQUIRE(cfg.analyses[2].kind == AnalysisSpec::Kind::Hcap);
  REQUIRE(cfg.analyses[2].n_samples == 1000);
  REQUIRE(cfg.output_dir == "out_demo");
  REQUIRE(cfg.want_csv);
  REQUIRE(cfg.want_svg);
}

TEST_CASE("analyses keep declaration order, including duplicates") {
  const std::string text = R"(name order
driver {
  family constant
  c 0
}
solver {
  n 64
}
analyses {
  lip_norm {
  }
  occupation {
    lo -1
    hi 1
    T 1
  }
  lip_norm {
  }
}
)";
  const ExperimentConfig cfg = parse_experiment_config(text);
  REQUIRE(cfg.analyses.size() == 3);
  REQUIRE(cfg.analyses[0].kind == AnalysisSpec::Kind::LipNorm);
  REQUIRE(cfg.analyses[1].kind == AnalysisSpec::Kind::Occupation);
  REQUIRE(cfg.analyses[2].kind == AnalysisSpec::Kind::LipNorm);
}

TEST_CASE("config round trip is idempotent") {
  const ExperimentConfig cfg = parse_experiment_config(kCanonical);
  const std::string once = serialize_experiment_config(cfg);
  const ExperimentConfig cfg2 = parse_experiment_config(once);
  const std::string twice = serialize_experiment_config(cfg2);
  REQUIRE(once == twice);
}

TEST_CASE("parse errors name the offending key") {
  const std::string bad = R"(name x
driver {
  family constant
  c 0
  wavelength 5
}
solver {
  n 64
}
)";
  try {
    parse_experiment_config(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(std::string(e.what()).find("driver.wavelength") !=
            std::string::npos);
  }
}

TEST_CASE("missing name and bad values are rejected") {
  REQUIRE_THROWS_AS(parse_experiment_config("driver {\n  family constant\n}\n"),
                    ConfigError);
  const std::string bad_n = R"(name x
driver {
  family constant
}
solver {
  n 8
}
)";
  REQUIRE_THROWS_AS(parse_experiment_config(bad_n), ConfigError);
  const std::string bad_rlist = R"(name x
driver {
  family constant
}
analyses {
  rescale {
    r_list 4,2
    n_seeds 3
  }
}
)";
  REQUIRE_THROWS_AS(parse_experiment_config(bad_rlist), ConfigError);
  const std::string bad_number = R"(name x
driver {
  family constant
  c zero
}
)";
  REQUIRE_THROWS_AS(parse_experiment_config(bad_number), ConfigError);
  const std::string unterminated = "name x\ndriver {\n  family constant\n";
  REQUIRE_THROWS_AS(parse_experiment_config(unterminated), ConfigError);
}

TEST_CASE("key tree serialization round trip") {
  const KeyTree tree = parse_key_tree("a 1\nblock {\n  b two words\n}\n");
  REQUIRE(tree.find("a") != nullptr);
  REQUIRE(tree.find("a")->value == "1");
  REQUIRE(tree.find("block")->find("b")->value == "two words");
  const std::string text = serialize_key_tree(tree);
  const std::string text2 = serialize_key_tree(parse_key_tree(text));
  REQUIRE(text == text2);
}

TEST_CASE("doubles round trip through 17 significant digits") {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    double x;
    if (i == 0) x = 0.0;
    else if (i == 1) x = -0.0;
    else if (i == 2) x = 1e-300;
    else if (i == 3) x = -1e300;
    else x = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-12, 12));
    const double back = std::stod(format_double(x));
    REQUIRE(back == x);
  }
}

TEST_CASE("driver and trace CSV round trip bit-exactly") {
  SampledDriver d;
  d.times = {0.0, 0.25, 1.0};
  d.values = {0.0, -1.0 / 3.0, std::sqrt(2.0)};
  const SampledDriver d2 = read_driver_csv(driver_csv(d));
  REQUIRE(d2.times == d.times);
  REQUIRE(d2.values == d.values);

  HullTrace t;
  t.times = {0.0, 0.5};
  t.points = {{0.0, 0.0}, {1.0 / 7.0, 2.0 / 3.0}};
  const HullTrace t2 = read_trace_csv(trace_csv(t));
  REQUIRE(t2.times == t.times);
  REQUIRE(t2.points == t.points);
}

TEST_CASE("csv headers follow the file conventions") {
  SampledDriver d;
  d.times = {0.0, 1.0};
  d.values = {0.0, 0.0};
  REQUIRE(driver_csv(d).rfind("t,lambda\n", 0) == 0);
  HullTrace t;
  t.times = {0.0};
  t.points = {{0.0, 0.0}};
  REQUIRE(trace_csv(t).rfind("t,re,im\n", 0) == 0);
  REQUIRE(driver_csv(d).find("\r") == std::string::npos);
}
