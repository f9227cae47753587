#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "loewner/rng.hpp"
#include "loewner/stats.hpp"

using namespace loewner;

TEST_CASE("rng streams are deterministic and substreams differ") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

  Rng s0 = Rng::substream(7, 0);
  Rng s1 = Rng::substream(7, 1);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) any_diff |= s0.next_u64() != s1.next_u64();
  REQUIRE(any_diff);
}

TEST_CASE("uniform01 stays inside the open unit interval") {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  Rng rng(3);
  const int n = 200000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  REQUIRE(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  REQUIRE(std::fabs(var - 1.0) < 0.02);
}

TEST_CASE("exponential mean") {
  Rng rng(5);
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += rng.exponential();
  REQUIRE(std::fabs(sum / n - 1.0) < 0.02);
}

TEST_CASE("mean_stderr basics") {
  const MeanStderr ms = mean_stderr({1.0, 2.0, 3.0, 4.0});
  REQUIRE(ms.mean == Catch::Approx(2.5));
  // sample sd = sqrt(5/3), stderr = sd/2
  REQUIRE(ms.std_error == Catch::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("ks statistic separates distinct laws and accepts equal ones") {
  Rng rng(11);
  std::vector<double> a, b, c;
  for (int i = 0; i < 1000; ++i) {
    a.push_back(rng.normal());
    b.push_back(rng.normal());
    c.push_back(rng.normal() + 1.0);
  }
  const double crit = ks_critical(0.01, a.size(), b.size());
  REQUIRE(ks_two_sample(a, b) < crit);
  REQUIRE(ks_two_sample(a, c) > crit);
}

TEST_CASE("median and regression slope") {
  REQUIRE(median({3.0, 1.0, 2.0}) == Catch::Approx(2.0));
  REQUIRE(median({4.0, 1.0, 2.0, 3.0}) == Catch::Approx(2.5));
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  REQUIRE(regression_slope(x, y) == Catch::Approx(2.0));
}
