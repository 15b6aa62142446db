#include "fluidq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fluidq {

EmpiricalSample::EmpiricalSample(std::vector<double> values)
    : values_(std::move(values)), sorted_(values_) {
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalSample::ecdf(double x) const {
  if (sorted_.empty()) return 0.0;
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalSample::mean() const {
  if (values_.empty()) throw std::invalid_argument("mean of empty sample");
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double EmpiricalSample::variance() const {
  if (values_.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : values_) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values_.size() - 1);
}

double EmpiricalSample::quantile(double p) const {
  if (sorted_.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level must be in [0,1]");
  const double pos = p * static_cast<double>(sorted_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted_.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return sorted_[lo] + w * (sorted_[hi] - sorted_[lo]);
}

double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  const auto& x = a.sorted();
  const auto& y = b.sorted();
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    // Advance past every copy of the smallest remaining value in both samples
    // before comparing, so ties never open a spurious gap.
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  // Once one sample is exhausted the gap only shrinks toward 0.
  return d;
}

double ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf) {
  if (a.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  const auto& x = a.sorted();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    const double v = x[i];
    const double below = static_cast<double>(i) / n;
    while (i < x.size() && x[i] == v) ++i;
    const double at = static_cast<double>(i) / n;
    const double f = cdf(v);
    d = std::max({d, std::abs(at - f), std::abs(f - below)});
  }
  return d;
}

double ks_one_sample_exponential(const EmpiricalSample& a, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
  if (!a.empty() && a.sorted().front() < 0.0)
    throw std::invalid_argument("ks_one_sample_exponential: negative values present");
  return ks_one_sample(a, [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); });
}

double dkw_threshold(std::size_t n, std::size_t m, double alpha_level) {
  if (n == 0 || m == 0) throw std::invalid_argument("dkw_threshold: sample sizes must be >= 1");
  if (!(alpha_level > 0.0 && alpha_level < 1.0))
    throw std::invalid_argument("dkw_threshold: alpha_level must be in (0,1)");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return std::sqrt(-std::log(alpha_level / 2.0) * (nn + mm) / (2.0 * nn * mm));
}

double ols_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("ols_slope: size mismatch");
  if (xs.size() < 2) throw std::invalid_argument("ols_slope: need at least two points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_slope: degenerate abscissae");
  return sxy / sxx;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  if (xs.size() < 4) throw std::invalid_argument("loglog_slope: need at least 4 points");
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("loglog_slope: entries must be positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  return ols_slope(lx, ly);
}

}  // namespace fluidq
