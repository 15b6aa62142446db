#include "fluidq/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "fluidq/gaussian_path.hpp"
#include "fluidq/rng.hpp"

namespace fluidq {

double sigma_inverse(const VarianceModel& model, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("sigma_inverse: theta out of range (must be positive and finite)");
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (model.sigma(lo) >= theta) {
    lo *= 0.5;
    if (++guard > 2000 || lo == 0.0) throw std::invalid_argument("sigma_inverse: theta out of range");
  }
  while (model.sigma(hi) < theta) {
    hi *= 2.0;
    if (++guard > 2000 || !std::isfinite(hi)) throw std::invalid_argument("sigma_inverse: theta out of range");
  }
  // Invariant: sigma(lo) < theta <= sigma(hi).
  for (int i = 0; i < 400; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    if (model.sigma(mid) >= theta)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::size_t covering_number(const VarianceModel& model, double L, double theta) {
  if (!(L > 0.0) || !(theta > 0.0)) throw std::invalid_argument("covering_number: L and theta must be positive");
  const double r = sigma_inverse(model, theta);
  if (!(r < L / 2.0)) return 1;
  const double q = L / (2.0 * r);
  // Slack absorbs the root finder's last-bit error when q is an integer.
  return static_cast<std::size_t>(std::ceil(q * (1.0 - 1e-12))) + 1;
}

namespace {

double integrand(const VarianceModel& model, double L, double theta) {
  return std::sqrt(std::log(static_cast<double>(covering_number(model, L, theta))));
}

struct Quadrature {
  double value = 0.0;
  double tail = 0.0;
};

Quadrature trapezoid_log_nodes(const VarianceModel& model, double L, double upper, int per_decade,
                               double decades) {
  const auto n = static_cast<std::size_t>(std::llround(decades * per_decade));
  const double lo = upper * std::pow(10.0, -decades);
  const auto nodes = log_space(lo, upper, n + 1);
  double prev_f = integrand(model, L, nodes[0]);
  Quadrature q;
  q.tail = nodes[0] * prev_f;
  q.value = q.tail;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double f = integrand(model, L, nodes[i]);
    q.value += 0.5 * (f + prev_f) * (nodes[i] - nodes[i - 1]);
    prev_f = f;
  }
  return q;
}

}  // namespace

DudleyEstimate dudley_integral(const VarianceModel& model, double L, double upper,
                               const QuadratureOptions& q) {
  if (!(L > 0.0)) throw std::invalid_argument("dudley_integral: L must be positive");
  if (!(upper > 0.0)) throw std::invalid_argument("dudley_integral: upper must be positive");
  if (upper > model.sigma(L) * (1.0 + 1e-12))
    throw std::invalid_argument("dudley_integral: upper must not exceed sigma(L)");
  if (q.nodes_per_decade < 1 || !(q.decades > 0.0))
    throw std::invalid_argument("dudley_integral: bad quadrature options");

  const auto coarse = trapezoid_log_nodes(model, L, upper, q.nodes_per_decade, q.decades);
  const auto fine = trapezoid_log_nodes(model, L, upper, 2 * q.nodes_per_decade, q.decades);
  DudleyEstimate est;
  est.value = coarse.value;
  est.refined_value = fine.value;
  est.tail_fraction = coarse.value > 0.0 ? coarse.tail / coarse.value : 0.0;
  const double change = fine.value > 0.0 ? std::abs(fine.value - coarse.value) / fine.value : 0.0;
  est.converged = change < 0.005 && est.tail_fraction < 0.001;
  return est;
}

DudleyEstimate dudley_integral(const VarianceModel& model, double L) {
  return dudley_integral(model, L, model.sigma(L) / 2.0);
}

EntropyProfile entropy_profile(const VarianceModel& model, double L, std::size_t points) {
  if (points < 2) throw std::invalid_argument("entropy_profile: need at least two points");
  EntropyProfile p;
  p.interval_length = L;
  const double upper = model.sigma(L) / 2.0;
  p.theta_grid = log_space(upper, upper * 1e-6, points);
  for (double th : p.theta_grid)
    p.entropy_values.push_back(std::log(static_cast<double>(covering_number(model, L, th))));
  const auto d = dudley_integral(model, L, upper);
  p.dudley_value = d.value;
  p.dudley_converged = d.converged;
  return p;
}

double modulus_bound(const VarianceModel& model, double L, double zeta) {
  if (!(zeta > 0.0)) throw std::invalid_argument("modulus_bound: zeta must be positive");
  if (zeta > model.sigma(L) * (1.0 + 1e-12))
    throw std::invalid_argument("modulus_bound: zeta must not exceed sigma(L)");
  return dudley_integral(model, L, zeta).value;
}

double windowed_oscillation(std::span<const double> x, std::size_t w) {
  std::deque<std::size_t> mins, maxs;
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (!mins.empty() && mins.front() + w < i) mins.pop_front();
    while (!maxs.empty() && maxs.front() + w < i) maxs.pop_front();
    while (!mins.empty() && x[mins.back()] >= x[i]) mins.pop_back();
    while (!maxs.empty() && x[maxs.back()] <= x[i]) maxs.pop_back();
    mins.push_back(i);
    maxs.push_back(i);
    best = std::max({best, x[i] - x[mins.front()], x[maxs.front()] - x[i]});
  }
  return best;
}

SupRatioReport expected_sup_ratio(const VarianceModel& model, std::span<const double> L_grid,
                                  std::size_t replications, std::uint64_t seed) {
  if (replications < 1000)
    throw std::invalid_argument("expected_sup_ratio: need at least 1000 replications");
  constexpr std::size_t kSteps = 2048;
  SupRatioReport rep;
  rep.L_grid.assign(L_grid.begin(), L_grid.end());
  std::vector<double> values, scratch;
  for (std::size_t li = 0; li < L_grid.size(); ++li) {
    const double L = L_grid[li];
    const PathSampler sampler(model, GridSpec{L / static_cast<double>(kSteps), 0, kSteps});
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      sampler.draw_into(seed, derive_stream(static_cast<std::uint32_t>(li), static_cast<std::uint32_t>(r)),
                        values, scratch);
      const double sup = *std::max_element(values.begin(), values.end());
      sum += sup;
      sum_sq += sup * sup;
    }
    const double n = static_cast<double>(replications);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    const double dudley = dudley_integral(model, L).value;
    rep.mc_expected_sup.push_back(mean);
    rep.mc_standard_error.push_back(std::sqrt(var / n));
    rep.dudley.push_back(dudley);
    rep.ratios.push_back(mean / dudley);
  }
  return rep;
}

double mc_expected_modulus(const VarianceModel& model, double L, double window,
                           std::size_t replications, std::uint64_t seed, std::size_t steps) {
  if (replications == 0) throw std::invalid_argument("mc_expected_modulus: replications must be >= 1");
  const double h = L / static_cast<double>(steps);
  const auto w = static_cast<std::size_t>(std::floor(window / h + 1e-9));
  const PathSampler sampler(model, GridSpec{h, 0, steps});
  std::vector<double> values, scratch;
  double sum = 0.0;
  for (std::size_t r = 0; r < replications; ++r) {
    sampler.draw_into(seed, derive_stream(0, static_cast<std::uint32_t>(r)), values, scratch);
    sum += windowed_oscillation(values, w);
  }
  return sum / static_cast<double>(replications);
}

}  // namespace fluidq
