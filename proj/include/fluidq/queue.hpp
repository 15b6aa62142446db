#pragma once

#include <cstdint>
#include <vector>

#include "fluidq/gaussian_path.hpp"
#include "fluidq/variance_model.hpp"

namespace fluidq {

struct QueueConfig {
  double c = 1.0;             // drain rate
  double truncation_S = 1.0;  // lookback horizon for the initial supremum

  void validate() const;
};

/// Workload on the nonnegative part of a sampling grid: q_values[k] = Q(k h).
struct WorkloadPath {
  double h = 1.0;
  std::vector<double> q_values;
  double q_zero = 0.0;
  double argmax_location = 0.0;
  bool truncation_flag = false;

  double time(std::size_t k) const { return static_cast<double>(k) * h; }
};

struct ReichResult {
  double q0 = 0.0;
  double argmax_location = 0.0;
};

/// Q(0) = max over grid points s <= 0 of (-X(s) + c s). Ties go to the
/// earliest s.
ReichResult reich_q0(const PathSample& path, double c);

/// Workload on the grid points t >= 0 from the running-maximum form
///   Q(t) = q0 + Y(t) + max(0, max_{0<s<=t} (-q0 - Y(s))),  Y(t) = X(t) - c t.
WorkloadPath forward_workload(const PathSample& path, double c, double q0);

/// Both steps on an existing path; argmax_location and truncation_flag filled
/// (flag set when the maximizer sits below -0.9 S, S = lookback of the grid).
WorkloadPath workload_from_path(const PathSample& path, double c);

/// One stationary workload sample on [0, T]. S and T must be integer
/// multiples of h.
WorkloadPath stationary_workload(const VarianceModel& model, const QueueConfig& cfg, double T,
                                 double h, std::uint64_t seed,
                                 const SamplerOptions& options = {});

/// max over grid t in [0, horizon] of (X(t) - c t); equal in law to Q(0) by
/// time reversal.
double one_sided_sup_q0(const VarianceModel& model, double c, double horizon, double h,
                        std::uint64_t seed, const SamplerOptions& options = {});

/// Number of grid steps covering `length` with step h; throws if length is
/// not an integer multiple of h (relative tolerance 1e-9).
std::size_t steps_for(double length, double h);

/// Repeated workload draws on one fixed grid; the sampler is built once.
class WorkloadSimulator {
 public:
  WorkloadSimulator(const VarianceModel& model, const QueueConfig& cfg, double T, double h,
                    const SamplerOptions& options = {});

  const GridSpec& grid() const { return sampler_.grid(); }
  const EmbeddingReport& report() const { return sampler_.report(); }
  double c() const { return c_; }

  WorkloadPath draw(std::uint64_t seed, std::uint64_t stream) const;

 private:
  double c_;
  PathSampler sampler_;
};

}  // namespace fluidq
