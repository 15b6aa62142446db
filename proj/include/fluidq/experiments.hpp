#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fluidq/gaussian_path.hpp"
#include "fluidq/scaling.hpp"
#include "fluidq/variance_model.hpp"

namespace fluidq {

/// Stream cell reserved for the simulated limit-queue reference.
inline constexpr std::uint32_t kReferenceCell = 0xFFFF0000u;

struct ExperimentConfig {
  VarianceModel model = VarianceModel::fbm(0.5);
  Regime regime = Regime::Heavy;
  std::vector<double> c_values;     // ordered toward the regime limit
  std::vector<double> time_points;  // rescaled time, must contain 0
  std::size_t replications = 2000;
  std::size_t points_per_unit = 16;  // h = delta(c) / points_per_unit
  double kappa = 30.0;               // lookback S = kappa delta (1 + max t)
  double gamma = 0.8;
  std::uint64_t master_seed = 1;

  double alpha_level = 0.01;
  double asymptotic_inflation = 1.5;  // threshold factor for non-exact comparisons
  double monotone_slack = 0.02;
  double max_truncation_rate = 0.05;

  void validate() const;
};

/// Samples of Q^{(c)}(delta t_j) / sigma(delta) for each time point.
struct RescaledSamples {
  DeltaSolution delta;
  std::vector<std::vector<double>> by_time;
  double truncation_rate = 0.0;
  EmbeddingReport embedding;
};

/// Rescaled stationary workload at the given time points. The grid is
/// h = delta/points_per_unit with lookback kappa delta (1 + max t), so every
/// c sees the same number of grid points per rescaled time unit. Replication r
/// uses stream (cell, r) under master_seed.
RescaledSamples rescaled_workload_samples(const VarianceModel& model, double c,
                                          const std::vector<double>& time_points,
                                          std::size_t replications, std::size_t points_per_unit,
                                          double kappa, std::uint64_t master_seed,
                                          std::uint32_t cell);

/// Rescaled input X(delta t_j) / sigma(delta) at the given time points.
RescaledSamples rescaled_input_samples(const VarianceModel& model, double c,
                                       const std::vector<double>& time_points,
                                       std::size_t replications, std::size_t points_per_unit,
                                       std::uint64_t master_seed, std::uint32_t cell);

/// Simulated Q^{(1)}_{B_H} at the time points (c = 1, h = 1/points_per_unit,
/// S = kappa (1 + max t)).
RescaledSamples reference_fbm_queue_samples(double H, const std::vector<double>& time_points,
                                            std::size_t replications,
                                            std::size_t points_per_unit, double kappa,
                                            std::uint64_t seed);

struct CellResult {
  double c = 0.0;
  double delta = 0.0;
  double residual = 0.0;
  double drift_coefficient = 0.0;  // c delta / sigma(delta)
  std::vector<double> ks_by_timepoint;
  std::vector<double> increment_ks;
  double threshold = 0.0;
  double truncation_rate = 0.0;
  double embedding_truncated_mass = 0.0;
  std::vector<double> sample_mean;
  std::vector<double> sample_variance;
  std::vector<double> model_variance;  // input runs: sigma^2(delta t)/sigma^2(delta)
  bool passed = false;
};

struct ReferenceSummary {
  double H_used = 0.0;
  std::vector<double> sample_mean;
  std::vector<double> sample_variance;
  double truncation_rate = 0.0;
};

struct ConvergenceReport {
  std::string experiment;  // "flt-input" or "flt-workload"
  Regime regime = Regime::Heavy;
  std::string model;
  std::vector<double> time_points;
  std::vector<std::pair<double, double>> increment_pairs;
  std::vector<CellResult> per_c;
  ReferenceSummary reference_summary;
  bool exact_comparison = false;
  bool verdict = false;
};

/// Input-process limit check: marginals and consecutive increments of
/// X(delta t)/sigma(delta) against B_H, H the regime's limit index.
ConvergenceReport run_input_flt(const ExperimentConfig& config);

/// Workload limit check: marginals of Q(delta t)/sigma(delta) and the pair
/// increment Q(t_max) - Q(0) against the simulated Q^{(1)}_{B_H}.
/// Throws std::runtime_error when a cell's truncation rate exceeds
/// max_truncation_rate.
ConvergenceReport run_workload_flt(const ExperimentConfig& config);

/// Verdict rule shared by both runs: the last cell passes and each KS
/// sequence is nonincreasing up to `slack`.
bool ks_sequence_ok(const std::vector<std::vector<double>>& sequences, double slack);

struct OmegaDecayOptions {
  double eta = 1.0;
  std::size_t points_per_unit = 16;
  double window_factor = 8.0;  // window [-T_max, T_max], T_max = window_factor * max T
};

struct OmegaDecayReport {
  double c = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double eta = 0.0;
  double T_max = 0.0;
  bool gamma_admissible = false;  // gamma > max(lambda, alpha)
  std::vector<double> T_grid;
  std::vector<double> p_T;
  bool nonincreasing = false;
};

/// p_T = P(sup_{T <= |t| <= T_max} |X^{(c)}(t)| / (1 + |t|^gamma) >= eta).
OmegaDecayReport run_omega_gamma_decay(const VarianceModel& model, Regime regime, double c,
                                       double gamma, const std::vector<double>& T_grid,
                                       std::size_t replications, std::uint64_t seed,
                                       const OmegaDecayOptions& options = {});

struct ModulusOptions {
  double horizon = 1.0;     // T, rescaled
  std::size_t steps = 2048;
};

struct ModulusReport {
  double c = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double horizon = 0.0;
  std::vector<double> zeta_grid;
  std::vector<double> probabilities;
  std::vector<double> entropy_bound;  // modulus_bound(model, T, 2 zeta^lambda)
  bool nonincreasing = false;
};

/// P(sup_{|t-s| <= zeta, s,t in [0,T]} |X^{(c)}(t) - X^{(c)}(s)| >= eta) per zeta.
ModulusReport run_modulus_diagnostic(const VarianceModel& model, double c,
                                     const std::vector<double>& zeta_grid, double eta,
                                     std::size_t replications, std::uint64_t seed,
                                     const ModulusOptions& options = {});

}  // namespace fluidq
