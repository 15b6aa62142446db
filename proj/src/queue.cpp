#include "fluidq/queue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fluidq {

void QueueConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("drain rate c must be positive");
  if (!(truncation_S > 0.0) || !std::isfinite(truncation_S))
    throw std::invalid_argument("truncation_S must be positive");
}

std::size_t steps_for(double length, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (!(length >= 0.0)) throw std::invalid_argument("length must be nonnegative");
  const double q = length / h;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, r))
    throw std::invalid_argument("length " + std::to_string(length) +
                                " is not an integer multiple of h=" + std::to_string(h));
  return static_cast<std::size_t>(r);
}

ReichResult reich_q0(const PathSample& path, double c) {
  const auto& g = path.grid;
  ReichResult best{0.0, 0.0};
  bool have = false;
  for (std::size_t k = 0; k <= g.anchor(); ++k) {
    const double s = g.time(k);
    const double v = -path.values[k] + c * s;
    if (!have || v > best.q0) {
      best = {v, s};
      have = true;
    }
  }
  // s = 0 contributes exactly 0, so best.q0 >= 0.
  return best;
}

WorkloadPath forward_workload(const PathSample& path, double c, double q0) {
  if (q0 < 0.0) throw std::invalid_argument("forward_workload: q0 must be nonnegative");
  const auto& g = path.grid;
  WorkloadPath w;
  w.h = g.h;
  w.q_zero = q0;
  w.q_values.reserve(g.n_right + 1);
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t k = g.anchor(); k < g.size(); ++k) {
    const double t = g.time(k);
    const double y = path.values[k] - c * t;
    if (k > g.anchor()) running = std::max(running, -q0 - y);
    w.q_values.push_back((q0 + y) + std::max(0.0, running));
  }
  return w;
}

WorkloadPath workload_from_path(const PathSample& path, double c) {
  const auto r = reich_q0(path, c);
  auto w = forward_workload(path, c, r.q0);
  w.argmax_location = r.argmax_location;
  const double S = static_cast<double>(path.grid.n_left) * path.grid.h;
  w.truncation_flag = r.argmax_location < -0.9 * S;
  return w;
}

WorkloadSimulator::WorkloadSimulator(const VarianceModel& model, const QueueConfig& cfg, double T,
                                     double h, const SamplerOptions& options)
    : c_((cfg.validate(), cfg.c)),
      sampler_(model, GridSpec{h, steps_for(cfg.truncation_S, h), steps_for(T, h)}, options) {}

WorkloadPath WorkloadSimulator::draw(std::uint64_t seed, std::uint64_t stream) const {
  return workload_from_path(sampler_.draw(seed, stream), c_);
}

WorkloadPath stationary_workload(const VarianceModel& model, const QueueConfig& cfg, double T,
                                 double h, std::uint64_t seed, const SamplerOptions& options) {
  return WorkloadSimulator(model, cfg, T, h, options).draw(seed, 0);
}

double one_sided_sup_q0(const VarianceModel& model, double c, double horizon, double h,
                        std::uint64_t seed, const SamplerOptions& options) {
  if (!(c > 0.0)) throw std::invalid_argument("drain rate c must be positive");
  const GridSpec grid{h, 0, steps_for(horizon, h)};
  const auto path = PathSampler(model, grid, options).draw(seed, 0);
  double best = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    best = std::max(best, path.values[k] - c * grid.time(k));
  return best;
}

}  // namespace fluidq
