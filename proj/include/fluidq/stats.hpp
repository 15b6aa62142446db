#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fluidq {

/// A sample with its ascending order statistics cached.
class EmpiricalSample {
 public:
  EmpiricalSample() = default;
  explicit EmpiricalSample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& sorted() const { return sorted_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Right-continuous ECDF.
  double ecdf(double x) const;
  double mean() const;
  /// Unbiased sample variance (0 for fewer than two values).
  double variance() const;
  /// Type-7 (linear interpolation) quantile, p in [0, 1].
  double quantile(double p) const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

/// sup_x |F_a(x) - F_b(x)|, exact merged sweep. Throws on an empty sample.
double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);

/// sup_x |F_a(x) - F(x)| for a continuous reference CDF.
double ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf);

/// KS distance against Exponential(rate). Throws if any value is negative.
double ks_one_sample_exponential(const EmpiricalSample& a, double rate);

/// sqrt(-ln(alpha_level/2) (n + m) / (2 n m)).
double dkw_threshold(std::size_t n, std::size_t m, double alpha_level);

/// OLS slope of log ys on log xs. Requires equal sizes >= 4 and positive entries.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

/// OLS slope of ys on xs (no transform).
double ols_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace fluidq
