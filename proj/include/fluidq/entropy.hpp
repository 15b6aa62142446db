#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fluidq/variance_model.hpp"

namespace fluidq {

// Metric entropy of an interval [0, L] under d(s, t) = sigma(|t - s|).

/// x with sigma(x) = theta (relative precision 1e-10 or better).
double sigma_inverse(const VarianceModel& model, double theta);

/// Size of the translation-invariant net with centers every 2 sigma^{-1}(theta):
/// ceil(L / (2 r)) + 1 when r = sigma^{-1}(theta) < L/2, else 1.
std::size_t covering_number(const VarianceModel& model, double L, double theta);

struct QuadratureOptions {
  int nodes_per_decade = 64;
  double decades = 6.0;  // nodes span [upper * 10^-decades, upper]
};

struct DudleyEstimate {
  double value = 0.0;          // at the requested node density
  double refined_value = 0.0;  // at twice the node density
  double tail_fraction = 0.0;  // share of the value from [0, upper * 10^-decades]
  bool converged = false;      // refinement change < 0.5% and tail < 0.1%
};

/// Integral of sqrt(log N(theta)) over (0, upper] by the trapezoidal rule on
/// log-spaced nodes, plus a rectangle for the innermost piece.
DudleyEstimate dudley_integral(const VarianceModel& model, double L, double upper,
                               const QuadratureOptions& q = {});

/// dudley_integral with upper = sigma(L)/2, i.e. the diameter bound.
DudleyEstimate dudley_integral(const VarianceModel& model, double L);

struct EntropyProfile {
  double interval_length = 0.0;
  std::vector<double> theta_grid;      // decreasing
  std::vector<double> entropy_values;  // log N(theta)
  double dudley_value = 0.0;
  bool dudley_converged = false;
};

EntropyProfile entropy_profile(const VarianceModel& model, double L, std::size_t points = 25);

/// Integral of sqrt(log N(theta)) over (0, zeta]. Requires 0 < zeta <= sigma(L).
double modulus_bound(const VarianceModel& model, double L, double zeta);

struct SupRatioReport {
  std::vector<double> L_grid;
  std::vector<double> mc_expected_sup;
  std::vector<double> mc_standard_error;
  std::vector<double> dudley;
  std::vector<double> ratios;
};

/// Monte Carlo E sup_{[0,L]} X (grid h = L/2048) divided by the Dudley
/// integral at upper = sigma(L)/2, for each L.
SupRatioReport expected_sup_ratio(const VarianceModel& model, std::span<const double> L_grid,
                                  std::size_t replications, std::uint64_t seed);

/// Monte Carlo E sup over pairs |t - s| <= window in [0, L] of |X(t) - X(s)|
/// on a grid of `steps` intervals.
double mc_expected_modulus(const VarianceModel& model, double L, double window,
                           std::size_t replications, std::uint64_t seed, std::size_t steps = 2048);

/// sup over pairs |i - j| <= w of |x_i - x_j|, O(n) via monotone deques.
double windowed_oscillation(std::span<const double> x, std::size_t w);

}  // namespace fluidq
