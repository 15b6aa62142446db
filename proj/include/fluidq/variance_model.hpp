#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fluidq {

enum class ModelKind { FBM, PowerSum, PowerRatio };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Variance function sigma^2(t) of a centered Gaussian process with
/// stationary increments.
///
///   FBM         sigma^2(t) = |t|^{2H}
///   PowerSum    sigma^2(t) = a |t|^{2 lambda} + b |t|^{2 alpha},   lambda <= alpha
///   PowerRatio  sigma^2(t) = a |t|^{2 lambda} / (1 + |t|^{2(lambda - alpha)}),   lambda > alpha
///
/// lambda is the regular-variation index of sigma at zero, alpha the index at
/// infinity. Construction validates ranges and the ordering constraint; the
/// evaluation methods assume a valid model.
class VarianceModel {
 public:
  static VarianceModel fbm(double hurst);
  static VarianceModel power_sum(double lambda0, double alpha_inf, double a = 1.0,
                                 double b = 1.0);
  static VarianceModel power_ratio(double lambda0, double alpha_inf, double a = 1.0);

  ModelKind kind() const { return kind_; }
  /// Hurst parameter; equals lambda0 == alpha_inf for FBM, NaN otherwise.
  double hurst() const;
  double lambda0() const { return lambda0_; }
  double alpha_inf() const { return alpha_inf_; }
  double a() const { return a_; }
  double b() const { return b_; }

  /// sigma^2(|t|).
  double sigma2(double t) const;
  /// sigma(|t|).
  double sigma(double t) const;

  std::string describe() const;

  friend bool operator==(const VarianceModel&, const VarianceModel&) = default;

 private:
  VarianceModel(ModelKind kind, double lambda0, double alpha_inf, double a, double b)
      : kind_(kind), lambda0_(lambda0), alpha_inf_(alpha_inf), a_(a), b_(b) {}

  ModelKind kind_;
  double lambda0_;
  double alpha_inf_;
  double a_;
  double b_;
};

/// Cov(X(s), X(t)) = (sigma^2(|s|) + sigma^2(|t|) - sigma^2(|t - s|)) / 2.
double covariance(const VarianceModel& model, double s, double t);

/// Autocovariance at lag k of the increment sequence X((j+1)h) - X(jh).
double increment_autocovariance(const VarianceModel& model, double h, long long k);

/// gamma(0..max_lag) in one vector.
std::vector<double> increment_autocovariances(const VarianceModel& model, double h,
                                              std::size_t max_lag);

// ---- regularity-condition diagnostics ----------------------------------------

/// Any sigma^2 evaluator. Lets the validators run on functions outside the
/// built-in families (used by tests for counterexamples).
using VarianceFunction = std::function<double(double)>;

VarianceFunction variance_function(const VarianceModel& model);

struct ConditionCReport {
  std::vector<double> t_grid;
  std::vector<double> values;  // sigma^2(t) |log t|^{1+eps}
  double limit_estimate = 0.0;
  double tail_variation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Default grid for condition C: 4 points per decade from 1e-1 down to 1e-12.
std::vector<double> default_condition_c_grid();

ConditionCReport check_condition_C(const VarianceFunction& sigma2, double epsilon,
                                   std::span<const double> t_grid);
ConditionCReport check_condition_C(const VarianceModel& model, double epsilon,
                                   std::span<const double> t_grid);

enum class RvEnd { Zero, Infinity };

/// Log-spaced grid spanning three decades toward the requested end
/// (1e-6..1e-3 or 1e3..1e6), 16 points.
std::vector<double> default_rv_grid(RvEnd end);

/// Least-squares slope of log sigma(x) against log x.
/// Throws std::invalid_argument for grids with fewer than 4 points.
double estimate_rv_index(const VarianceModel& model, RvEnd end, std::span<const double> x_grid);

struct PotterReport {
  double lower_exponent = 0.0;  // l = min(lambda - eps, alpha + eps)
  double upper_exponent = 0.0;  // u = max(alpha + eps, lambda + eps)
  double coarse_sup = 0.0;
  double max_ratio_excess = 0.0;  // relative growth of the sup under refinement/extension
  double C_fitted = 0.0;
  bool passed = false;
};

/// Grid check of sigma(t x) / sigma(x) <= C * max(t^l, t^u) for x in (0, a].
/// The sup is recomputed on a doubled-density grid and on grids extended by a
/// decade; passed iff every sup is finite and grows by at most 5%.
PotterReport potter_check(const VarianceModel& model, double epsilon, double a,
                          std::span<const double> t_grid, std::span<const double> x_grid);

/// Convenience overload with 10^-4..10^4 for t and a*10^-6..a for x.
PotterReport potter_check(const VarianceModel& model, double epsilon, double a = 1.0);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t n);

}  // namespace fluidq
