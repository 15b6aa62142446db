#include "fluidq/variance_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fluidq/stats.hpp"

namespace fluidq {

namespace {

void require_unit_open(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in (0,1), got " +
                                std::to_string(v));
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be positive and finite, got " +
                                std::to_string(v));
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::FBM: return "fbm";
    case ModelKind::PowerSum: return "power_sum";
    case ModelKind::PowerRatio: return "power_ratio";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "fbm") return ModelKind::FBM;
  if (name == "power_sum") return ModelKind::PowerSum;
  if (name == "power_ratio") return ModelKind::PowerRatio;
  throw std::invalid_argument("unknown model kind '" + name + "'");
}

VarianceModel VarianceModel::fbm(double hurst) {
  require_unit_open(hurst, "hurst");
  return VarianceModel(ModelKind::FBM, hurst, hurst, 1.0, 0.0);
}

VarianceModel VarianceModel::power_sum(double lambda0, double alpha_inf, double a, double b) {
  require_unit_open(lambda0, "lambda0");
  require_unit_open(alpha_inf, "alpha_inf");
  require_positive(a, "a");
  require_positive(b, "b");
  // With lambda > alpha the small-t behavior would be governed by alpha.
  if (lambda0 > alpha_inf)
    throw std::invalid_argument("power_sum requires lambda0 <= alpha_inf (use power_ratio)");
  return VarianceModel(ModelKind::PowerSum, lambda0, alpha_inf, a, b);
}

VarianceModel VarianceModel::power_ratio(double lambda0, double alpha_inf, double a) {
  require_unit_open(lambda0, "lambda0");
  require_unit_open(alpha_inf, "alpha_inf");
  require_positive(a, "a");
  if (!(lambda0 > alpha_inf))
    throw std::invalid_argument("power_ratio requires lambda0 > alpha_inf (use power_sum)");
  return VarianceModel(ModelKind::PowerRatio, lambda0, alpha_inf, a, 0.0);
}

double VarianceModel::hurst() const {
  return kind_ == ModelKind::FBM ? lambda0_ : std::numeric_limits<double>::quiet_NaN();
}

double VarianceModel::sigma2(double t) const {
  t = std::abs(t);
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case ModelKind::FBM:
      return std::pow(t, 2.0 * lambda0_);
    case ModelKind::PowerSum:
      return a_ * std::pow(t, 2.0 * lambda0_) + b_ * std::pow(t, 2.0 * alpha_inf_);
    case ModelKind::PowerRatio: {
      // a t^{2l} / (1 + t^{2(l-a)}) rewritten to stay finite for huge t.
      const double p = 2.0 * (lambda0_ - alpha_inf_);
      const double lt = std::log(t);
      if (lt * p > 0.0) {
        // t > 1: divide through by t^p.
        return a_ * std::exp(2.0 * alpha_inf_ * lt) / (1.0 + std::exp(-p * lt));
      }
      return a_ * std::exp(2.0 * lambda0_ * lt) / (1.0 + std::exp(p * lt));
    }
  }
  return 0.0;
}

double VarianceModel::sigma(double t) const { return std::sqrt(sigma2(t)); }

std::string VarianceModel::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case ModelKind::FBM: os << "(H=" << lambda0_ << ")"; break;
    case ModelKind::PowerSum:
      os << "(lambda0=" << lambda0_ << ", alpha_inf=" << alpha_inf_ << ", a=" << a_ << ", b=" << b_
         << ")";
      break;
    case ModelKind::PowerRatio:
      os << "(lambda0=" << lambda0_ << ", alpha_inf=" << alpha_inf_ << ", a=" << a_ << ")";
      break;
  }
  return os.str();
}

double covariance(const VarianceModel& model, double s, double t) {
  return 0.5 * (model.sigma2(s) + model.sigma2(t) - model.sigma2(t - s));
}

double increment_autocovariance(const VarianceModel& model, double h, long long k) {
  if (!(h > 0.0)) throw std::invalid_argument("increment_autocovariance: h must be positive");
  k = k < 0 ? -k : k;
  const double kd = static_cast<double>(k);
  // sigma2 is even, so the k = 0 case reads sigma^2(-h) as sigma^2(h).
  return 0.5 * (model.sigma2((kd + 1.0) * h) - 2.0 * model.sigma2(kd * h) +
                model.sigma2((kd - 1.0) * h));
}

std::vector<double> increment_autocovariances(const VarianceModel& model, double h,
                                              std::size_t max_lag) {
  std::vector<double> s2(max_lag + 2);
  for (std::size_t k = 0; k < s2.size(); ++k) s2[k] = model.sigma2(static_cast<double>(k) * h);
  std::vector<double> gamma(max_lag + 1);
  gamma[0] = s2[1];
  for (std::size_t k = 1; k <= max_lag; ++k) gamma[k] = 0.5 * (s2[k + 1] - 2.0 * s2[k] + s2[k - 1]);
  return gamma;
}

VarianceFunction variance_function(const VarianceModel& model) {
  return [model](double t) { return model.sigma2(t); };
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("log_space: bounds must be positive");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_condition_c_grid() { return log_space(1e-1, 1e-12, 45); }

ConditionCReport check_condition_C(const VarianceFunction& sigma2, double epsilon,
                                   std::span<const double> t_grid) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("check_condition_C: epsilon must be positive");
  if (t_grid.size() < 4) throw std::invalid_argument("check_condition_C: grid too short");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] < 1.0))
      throw std::invalid_argument("check_condition_C: grid points must lie in (0,1)");
    if (i > 0 && !(t_grid[i] < t_grid[i - 1]))
      throw std::invalid_argument("check_condition_C: grid must decrease toward 0");
  }

  ConditionCReport rep;
  rep.t_grid.assign(t_grid.begin(), t_grid.end());
  rep.values.reserve(t_grid.size());
  bool finite = true;
  for (double t : t_grid) {
    const double v = sigma2(t) * std::pow(std::abs(std::log(t)), 1.0 + epsilon);
    finite = finite && std::isfinite(v);
    rep.values.push_back(v);
  }
  const std::size_t tail = std::max<std::size_t>(2, (rep.values.size() + 3) / 4);
  const auto tail_begin = rep.values.end() - static_cast<std::ptrdiff_t>(tail);
  const auto [tmin, tmax] = std::minmax_element(tail_begin, rep.values.end());
  const double gmax = *std::max_element(rep.values.begin(), rep.values.end());
  rep.limit_estimate = rep.values.back();
  rep.tail_variation = *tmax - *tmin;
  rep.tolerance = 0.05 * (1.0 + gmax);
  rep.passed = finite && rep.tail_variation < rep.tolerance;
  return rep;
}

ConditionCReport check_condition_C(const VarianceModel& model, double epsilon,
                                   std::span<const double> t_grid) {
  return check_condition_C(variance_function(model), epsilon, t_grid);
}

std::vector<double> default_rv_grid(RvEnd end) {
  return end == RvEnd::Zero ? log_space(1e-6, 1e-3, 16) : log_space(1e3, 1e6, 16);
}

double estimate_rv_index(const VarianceModel& model, RvEnd end, std::span<const double> x_grid) {
  if (x_grid.size() < 4) throw std::invalid_argument("estimate_rv_index: grid needs >= 4 points");
  (void)end;  // the grid itself selects the end; kept for call-site clarity
  std::vector<double> sig(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) sig[i] = model.sigma(x_grid[i]);
  return loglog_slope(x_grid, sig);
}

namespace {

double potter_sup(const VarianceModel& model, double l, double u, std::span<const double> ts,
                  std::span<const double> xs) {
  double sup = 0.0;
  for (double x : xs) {
    const double sx = model.sigma(x);
    for (double t : ts) {
      const double envelope = t <= 1.0 ? std::pow(t, l) : std::pow(t, u);
      const double r = model.sigma(t * x) / (sx * envelope);
      if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
      sup = std::max(sup, r);
    }
  }
  return sup;
}

std::vector<double> densify(std::span<const double> g) {
  std::vector<double> sorted(g.begin(), g.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(2 * sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back(sorted[i]);
    if (i + 1 < sorted.size()) out.push_back(std::sqrt(sorted[i] * sorted[i + 1]));
  }
  return out;
}

std::vector<double> extend(std::span<const double> g, double below, double above) {
  std::vector<double> out(g.begin(), g.end());
  const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
  const double l = *lo, h = *hi;
  auto lower = log_space(l * below, l, 9);
  auto upper = log_space(h, h * above, 9);
  out.insert(out.end(), lower.begin(), lower.end());
  out.insert(out.end(), upper.begin(), upper.end());
  return out;
}

}  // namespace

PotterReport potter_check(const VarianceModel& model, double epsilon, double a,
                          std::span<const double> t_grid, std::span<const double> x_grid) {
  const double lam = model.lambda0();
  const double alp = model.alpha_inf();
  if (!(epsilon > 0.0 && epsilon < lam))
    throw std::invalid_argument("potter_check: epsilon must lie in (0, lambda0)");
  if (!(a > 0.0)) throw std::invalid_argument("potter_check: a must be positive");
  if (t_grid.empty() || x_grid.empty()) throw std::invalid_argument("potter_check: empty grid");
  for (double x : x_grid)
    if (!(x > 0.0 && x <= a)) throw std::invalid_argument("potter_check: x grid must lie in (0,a]");
  for (double t : t_grid)
    if (!(t > 0.0)) throw std::invalid_argument("potter_check: t grid must be positive");

  PotterReport rep;
  rep.lower_exponent = std::min(lam - epsilon, alp + epsilon);
  rep.upper_exponent = std::max(alp + epsilon, lam + epsilon);
  const double l = rep.lower_exponent, u = rep.upper_exponent;

  rep.coarse_sup = potter_sup(model, l, u, t_grid, x_grid);
  const auto t_fine = densify(t_grid);
  const auto x_fine = densify(x_grid);
  const double fine_sup = potter_sup(model, l, u, t_fine, x_fine);
  const auto t_wide = extend(t_grid, 0.1, 10.0);
  auto x_wide = extend(x_grid, 0.1, 1.0);
  const double wide_sup = potter_sup(model, l, u, t_wide, x_wide);

  rep.C_fitted = std::max({rep.coarse_sup, fine_sup, wide_sup});
  const bool finite = std::isfinite(rep.C_fitted) && rep.coarse_sup > 0.0;
  rep.max_ratio_excess = finite ? rep.C_fitted / rep.coarse_sup - 1.0
                                : std::numeric_limits<double>::infinity();
  rep.passed = finite && rep.max_ratio_excess <= 0.05;
  return rep;
}

PotterReport potter_check(const VarianceModel& model, double epsilon, double a) {
  const auto ts = log_space(1e-4, 1e4, 81);
  const auto xs = log_space(a * 1e-6, a, 61);
  return potter_check(model, epsilon, a, ts, xs);
}

}  // namespace fluidq
