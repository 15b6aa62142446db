#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fluidq/scaling.hpp"
#include "test_models.hpp"

using namespace fluidq;
using Catch::Approx;

TEST_CASE("solve_delta fBm closed form", "[scaling]") {
  const auto bm = VarianceModel::fbm(0.5);
  REQUIRE(solve_delta(bm, 4.0).delta == Approx(1.0 / 16.0).epsilon(1e-10));
  REQUIRE(solve_delta(bm, 0.25).delta == Approx(16.0).epsilon(1e-10));
  REQUIRE(solve_delta(VarianceModel::fbm(0.7), 10.0).delta == Approx(4.6415888336127842e-4).epsilon(1e-9));

  for (double H : {0.3, 0.5, 0.7, 0.9}) {
    for (double c : {0.01, 1.0, 100.0}) {
      const auto s = solve_delta(VarianceModel::fbm(H), c);
      INFO("H=" << H << " c=" << c);
      REQUIRE(std::abs(s.delta / std::pow(c, 1.0 / (H - 1.0)) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("solve_delta PowerSum", "[scaling]") {
  const auto ps = VarianceModel::power_sum(0.4, 0.7);
  const auto s = solve_delta(ps, 2.0);
  REQUIRE(s.delta == Approx(0.47577929494715845).epsilon(1e-9));
  REQUIRE(s.delta / std::sqrt(std::pow(s.delta, 0.8) + std::pow(s.delta, 1.4)) == Approx(0.5).epsilon(1e-10));
  REQUIRE(s.bracket_lo <= s.delta);
  REQUIRE(s.delta <= s.bracket_hi);
  REQUIRE(std::abs(s.residual) <= 1e-10);
  // c = 1: delta^{0.6} is the golden ratio.
  REQUIRE(solve_delta(ps, 1.0).delta == Approx(2.2300404145684532).epsilon(1e-9));

  // Independent fine log-grid scan for the sign change.
  const auto f = [&](double x) { return 2.0 * x / ps.sigma(x) - 1.0; };
  double lo = 0.0, hi = 0.0;
  const int per_decade = 2000;
  for (int i = -3 * per_decade; i < 3 * per_decade; ++i) {
    const double a = std::pow(10.0, double(i) / per_decade), b = std::pow(10.0, double(i + 1) / per_decade);
    if (f(a) < 0.0 && f(b) >= 0.0) {
      lo = a;
      hi = b;
    }
  }
  REQUIRE(lo <= s.delta);
  REQUIRE(s.delta <= hi);
}

TEST_CASE("solve_delta defining identity and monotonicity", "[scaling][property]") {
  const std::vector<double> cs{1e-4, 1e-3, 0.01, 0.1, 1.0, 10.0, 100.0, 1e3, 1e4};
  for (const auto& m : testing::builtin_models()) {
    double prev = std::numeric_limits<double>::infinity();
    for (double c : cs) {
      const auto s = solve_delta(m, c);
      INFO(m.describe() << " c=" << c);
      REQUIRE(std::abs(c * s.delta / m.sigma(s.delta) - 1.0) <= 1e-10);
      REQUIRE(s.delta < prev);
      prev = s.delta;
    }
  }
  REQUIRE_THROWS_AS(solve_delta(VarianceModel::fbm(0.5), 0.0), std::invalid_argument);
}

TEST_CASE("delta_exponent_audit", "[scaling]") {
  const auto bm = VarianceModel::fbm(0.5);
  for (Regime r : {Regime::Heavy, Regime::Light}) {
    const auto a = delta_exponent_audit(bm, r, default_audit_grid(r));
    REQUIRE(a.expected == -2.0);
    REQUIRE(a.slope == Approx(-2.0).margin(1e-9));
    REQUIRE(a.passed);
  }
  const auto ps = VarianceModel::power_sum(0.4, 0.7);
  const auto heavy = delta_exponent_audit(ps, Regime::Heavy, log_space(1e-4, 1e-2, 9));
  REQUIRE(heavy.expected == Approx(-10.0 / 3.0));
  REQUIRE(heavy.passed);
  const auto light = delta_exponent_audit(ps, Regime::Light, log_space(1e2, 1e4, 9));
  REQUIRE(light.expected == Approx(-5.0 / 3.0));
  REQUIRE(light.passed);
  // The wrong regime's index is not recovered.
  REQUIRE_FALSE(delta_exponent_audit(ps, Regime::Light, log_space(1e-4, 1e-2, 9)).passed);
}

TEST_CASE("regime helpers", "[scaling]") {
  const auto pr = VarianceModel::power_ratio(0.7, 0.4);
  REQUIRE(limit_hurst(pr, Regime::Heavy) == 0.4);
  REQUIRE(limit_hurst(pr, Regime::Light) == 0.7);
  REQUIRE(regime_from_string("light") == Regime::Light);
  REQUIRE(to_string(Regime::Heavy) == "heavy");
  REQUIRE_THROWS(regime_from_string("medium"));
}
