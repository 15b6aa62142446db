#pragma once

#include <span>
#include <string>
#include <vector>

#include "fluidq/variance_model.hpp"

namespace fluidq {

enum class Regime { Heavy, Light };

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& name);

/// Index of the limiting fBm for the regime: alpha (heavy) or lambda (light).
double limit_hurst(const VarianceModel& model, Regime regime);

/// Root of c x / sigma(x) = 1.
struct DeltaSolution {
  double c = 0.0;
  double delta = 0.0;
  double residual = 0.0;  // c delta / sigma(delta) - 1
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

/// Smallest positive root of x / sigma(x) = 1/c: geometric bracket expansion
/// from x = 1 by factors of 2, a sign-change scan over the expansion points,
/// then bisection in log space.
///
/// Throws std::runtime_error if no bracket is found within 200 doublings, if
/// the scan sees more than one sign change (x / sigma(x) not monotone), or if
/// the final residual exceeds tol.
DeltaSolution solve_delta(const VarianceModel& model, double c, double tol = 1e-10);

struct DeltaAudit {
  Regime regime = Regime::Heavy;
  std::vector<double> c_grid;
  std::vector<double> deltas;
  double max_residual = 0.0;
  double slope = 0.0;
  double expected = 0.0;  // 1/(alpha - 1) heavy, 1/(lambda - 1) light
  bool passed = false;
};

/// Log-log slope of delta(c) over c_grid compared against the expected index;
/// passed iff |slope - expected| <= 0.05 |expected|.
DeltaAudit delta_exponent_audit(const VarianceModel& model, Regime regime,
                                std::span<const double> c_grid);

/// Three decades toward the regime limit: 1e-5..1e-2 (heavy), 1e2..1e5 (light).
std::vector<double> default_audit_grid(Regime regime);

}  // namespace fluidq
