#include "fluidq/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fluidq/stats.hpp"

namespace fluidq {

std::string to_string(Regime regime) { return regime == Regime::Heavy ? "heavy" : "light"; }

Regime regime_from_string(const std::string& name) {
  if (name == "heavy") return Regime::Heavy;
  if (name == "light") return Regime::Light;
  throw std::invalid_argument("unknown regime '" + name + "' (expected heavy|light)");
}

double limit_hurst(const VarianceModel& model, Regime regime) {
  return regime == Regime::Heavy ? model.alpha_inf() : model.lambda0();
}

namespace {

constexpr int kMaxDoublings = 200;
constexpr int kMaxBisections = 400;

}  // namespace

DeltaSolution solve_delta(const VarianceModel& model, double c, double tol) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("solve_delta: c must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_delta: tol must be positive");

  // g is increasing for every built-in family since sigma has log-slope < 1.
  auto g = [&](double x) { return c * x / model.sigma(x) - 1.0; };

  // Expand from x = 1 toward the root.
  std::vector<double> xs{1.0};
  const bool upward = g(1.0) < 0.0;
  for (int i = 0;; ++i) {
    if (i >= kMaxDoublings) {
      std::ostringstream os;
      os << "solve_delta: no bracket within " << kMaxDoublings << " doublings for c=" << c
         << ", model " << model.describe();
      throw std::runtime_error(os.str());
    }
    const double next = upward ? xs.back() * 2.0 : xs.back() * 0.5;
    xs.push_back(next);
    if ((g(next) >= 0.0) == upward) break;
  }
  // Scan a few extra points past the bracket on both sides, left to right.
  for (int i = 0; i < 4; ++i) xs.push_back(upward ? xs.back() * 2.0 : xs.back() * 0.5);
  for (int i = 0; i < 4; ++i) xs.insert(xs.begin(), upward ? xs.front() * 0.5 : xs.front() * 2.0);
  std::sort(xs.begin(), xs.end());

  int changes = 0;
  std::size_t first = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if ((g(xs[i - 1]) >= 0.0) != (g(xs[i]) >= 0.0)) {
      if (changes == 0) first = i;
      ++changes;
    }
  }
  if (changes != 1) {
    std::ostringstream os;
    os << "solve_delta: " << changes << " sign changes of x/sigma(x) - 1/c for c=" << c
       << "; non-monotone variance functions are unsupported";
    throw std::runtime_error(os.str());
  }

  DeltaSolution sol;
  sol.c = c;
  double lo = xs[first - 1], hi = xs[first];
  sol.bracket_lo = lo;
  sol.bracket_hi = hi;

  // Bisect to full precision; tol only validates the outcome.
  int it = 0;
  for (; it < kMaxBisections; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    if (g(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  const double glo = g(lo), ghi = g(hi);
  sol.delta = std::abs(glo) <= std::abs(ghi) ? lo : hi;
  sol.residual = std::abs(glo) <= std::abs(ghi) ? glo : ghi;
  sol.iterations = it;
  if (!(std::abs(sol.residual) <= tol)) {
    std::ostringstream os;
    os << "solve_delta: residual " << sol.residual << " exceeds tol " << tol << " for c=" << c;
    throw std::runtime_error(os.str());
  }
  return sol;
}

std::vector<double> default_audit_grid(Regime regime) {
  return regime == Regime::Heavy ? log_space(1e-5, 1e-2, 13) : log_space(1e2, 1e5, 13);
}

DeltaAudit delta_exponent_audit(const VarianceModel& model, Regime regime,
                                std::span<const double> c_grid) {
  DeltaAudit audit;
  audit.regime = regime;
  audit.c_grid.assign(c_grid.begin(), c_grid.end());
  for (double c : c_grid) {
    const auto sol = solve_delta(model, c);
    audit.deltas.push_back(sol.delta);
    audit.max_residual = std::max(audit.max_residual, std::abs(sol.residual));
  }
  audit.slope = loglog_slope(audit.c_grid, audit.deltas);
  audit.expected = 1.0 / (limit_hurst(model, regime) - 1.0);
  audit.passed = std::abs(audit.slope - audit.expected) <= 0.05 * std::abs(audit.expected);
  return audit;
}

}  // namespace fluidq
