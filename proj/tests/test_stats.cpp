#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fluidq/rng.hpp"
#include "fluidq/stats.hpp"

using namespace fluidq;
using Catch::Approx;

TEST_CASE("ks_two_sample hand-enumerated cases", "[stats]") {
  const EmpiricalSample a({1.0, 2.0, 3.0});
  REQUIRE(ks_two_sample(a, a) == 0.0);
  REQUIRE(ks_two_sample(EmpiricalSample({1.0, 2.0}), EmpiricalSample({1.5, 2.5})) == 0.5);
  REQUIRE(ks_two_sample(EmpiricalSample({1.0}), EmpiricalSample({2.0})) == 1.0);
  REQUIRE_THROWS_AS(ks_two_sample(EmpiricalSample(std::vector<double>{}), a), std::invalid_argument);
}

TEST_CASE("ks_two_sample ties are swept together", "[stats]") {
  // Right-continuous ECDFs: F_a(1) = 1, F_b(1) = 1/2, gap 1/2 (not 1).
  REQUIRE(ks_two_sample(EmpiricalSample({1.0, 1.0}), EmpiricalSample({1.0, 2.0})) == 0.5);
  REQUIRE(ks_two_sample(EmpiricalSample({0.0, 0.0, 0.0}), EmpiricalSample({0.0})) == 0.0);
}

TEST_CASE("ks_two_sample symmetry, range and duplication invariance", "[stats][property]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CounterRng rng(seed, 7);
    const auto na = 1 + static_cast<std::size_t>(rng.uniform() * 40);
    const auto nb = 1 + static_cast<std::size_t>(rng.uniform() * 40);
    std::vector<double> va(na), vb(nb);
    // Rounded values force ties.
    for (double& v : va) v = std::round(rng.normal() * 4.0) / 4.0;
    for (double& v : vb) v = std::round(rng.normal() * 4.0 + 0.3) / 4.0;
    const EmpiricalSample a(va), b(vb);
    const double d = ks_two_sample(a, b);
    REQUIRE(d == ks_two_sample(b, a));
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 1.0);
    auto doubled = va;
    doubled.insert(doubled.end(), va.begin(), va.end());
    REQUIRE(ks_two_sample(a, EmpiricalSample(doubled)) == 0.0);
  }
}

TEST_CASE("ks_one_sample_exponential", "[stats]") {
  SECTION("exact quantiles give at most half a step") {
    const std::size_t n = 100;
    std::vector<double> q(n);
    for (std::size_t k = 1; k <= n; ++k) q[k - 1] = -std::log(1.0 - (k - 0.5) / n) / 2.0;
    REQUIRE(ks_one_sample_exponential(EmpiricalSample(q), 2.0) <= 0.5 / n + 1e-12);
  }
  SECTION("rate mismatch by a factor 4") {
    // sup |e^{-2x} - e^{-8x}| = 0.4725; a plug-in sample of Exp(2) seen
    // through Exp(8) lands near it.
    const std::size_t n = 50;
    std::vector<double> q(n);
    for (std::size_t k = 1; k <= n; ++k) q[k - 1] = -std::log(1.0 - (k - 0.5) / n) / 2.0;
    REQUIRE(ks_one_sample_exponential(EmpiricalSample(q), 8.0) >= 0.3);
  }
  SECTION("single observation at the median") {
    const double rate = 3.0;
    REQUIRE(ks_one_sample_exponential(EmpiricalSample({std::log(2.0) / rate}), rate) == Approx(0.5).margin(1e-15));
  }
  SECTION("negative values rejected") {
    REQUIRE_THROWS_AS(ks_one_sample_exponential(EmpiricalSample({0.1, -0.2}), 1.0), std::invalid_argument);
  }
}

TEST_CASE("dkw_threshold", "[stats]") {
  REQUIRE(dkw_threshold(2000, 2000, 0.01) == Approx(0.0514699784658398).epsilon(1e-12));
  REQUIRE(dkw_threshold(3000, 2000, 0.01) < dkw_threshold(2000, 2000, 0.01));
  REQUIRE(dkw_threshold(300, 700, 0.05) == dkw_threshold(700, 300, 0.05));
  REQUIRE_THROWS(dkw_threshold(0, 5, 0.01));
}

TEST_CASE("KS against DKW threshold is calibrated under the null", "[stats][property]") {
  const std::size_t trials = 1000, n = 400;
  const double thr = dkw_threshold(n, n, 0.01);
  std::size_t exceed = 0;
  std::vector<double> a(n), b(n);
  for (std::uint32_t t = 0; t < trials; ++t) {
    CounterRng ra(99, derive_stream(0, t)), rb(99, derive_stream(1, t));
    ra.fill_normal(a);
    rb.fill_normal(b);
    if (ks_two_sample(EmpiricalSample(a), EmpiricalSample(b)) > thr) ++exceed;
  }
  INFO("exceedances: " << exceed);
  REQUIRE(exceed <= 30);
}

TEST_CASE("loglog_slope", "[stats]") {
  const std::vector<double> xs{0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<double> sq, cst, pw;
  for (double x : xs) {
    sq.push_back(x * x);
    cst.push_back(7.0);
    pw.push_back(3.0 * std::pow(x, -5.0 / 3.0));
  }
  REQUIRE(loglog_slope(xs, sq) == Approx(2.0).margin(1e-12));
  REQUIRE(loglog_slope(xs, cst) == Approx(0.0).margin(1e-12));
  REQUIRE(loglog_slope(xs, pw) == Approx(-5.0 / 3.0).margin(1e-12));
  REQUIRE_THROWS(loglog_slope(xs, std::vector<double>{1, 2, 3}));
  REQUIRE_THROWS(loglog_slope(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}));
  REQUIRE_THROWS(loglog_slope(std::vector<double>{1, 2, 3, -4}, std::vector<double>{1, 2, 3, 4}));
}

TEST_CASE("EmpiricalSample summaries", "[stats]") {
  const EmpiricalSample s({3.0, 1.0, 2.0, 4.0});
  REQUIRE(s.sorted() == std::vector<double>{1.0, 2.0, 3.0, 4.0});
  REQUIRE(s.mean() == 2.5);
  REQUIRE(s.variance() == Approx(5.0 / 3.0));
  REQUIRE(s.quantile(0.5) == 2.5);
  REQUIRE(s.ecdf(2.0) == 0.5);
  REQUIRE(s.ecdf(0.0) == 0.0);
}
