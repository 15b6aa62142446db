#include "fluidq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fluidq/entropy.hpp"
#include "fluidq/queue.hpp"
#include "fluidq/stats.hpp"

namespace fluidq {

namespace {

std::size_t grid_index(double t, std::size_t points_per_unit) {
  const double q = t * static_cast<double>(points_per_unit);
  const double r = std::round(q);
  if (!(t >= 0.0) || std::abs(q - r) > 1e-9 * std::max(1.0, r)) {
    std::ostringstream os;
    os << "time point " << t << " is not a nonnegative multiple of 1/" << points_per_unit;
    throw std::invalid_argument(os.str());
  }
  return static_cast<std::size_t>(r);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

void summarize(const std::vector<std::vector<double>>& by_time, std::vector<double>& mean,
               std::vector<double>& var) {
  mean.clear();
  var.clear();
  for (const auto& s : by_time) {
    const EmpiricalSample e(s);
    mean.push_back(e.mean());
    var.push_back(e.variance());
  }
}

std::vector<double> differences(const std::vector<double>& hi, const std::vector<double>& lo) {
  std::vector<double> d(hi.size());
  for (std::size_t i = 0; i < hi.size(); ++i) d[i] = hi[i] - lo[i];
  return d;
}

double ks(const std::vector<double>& a, const std::vector<double>& b) {
  return ks_two_sample(EmpiricalSample(a), EmpiricalSample(b));
}

double threshold_for(const ExperimentConfig& cfg, bool exact) {
  const double base = dkw_threshold(cfg.replications, cfg.replications, cfg.alpha_level);
  return exact ? base : base * cfg.asymptotic_inflation;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (c_values.empty()) throw std::invalid_argument("experiment needs at least one c value");
  for (std::size_t i = 0; i < c_values.size(); ++i) {
    if (!(c_values[i] > 0.0)) throw std::invalid_argument("c values must be positive");
    if (i > 0) {
      const bool toward = regime == Regime::Heavy ? c_values[i] < c_values[i - 1]
                                                  : c_values[i] > c_values[i - 1];
      if (!toward)
        throw std::invalid_argument("c values must move toward the regime limit (" +
                                    std::string(regime == Regime::Heavy ? "decreasing" : "increasing") +
                                    " for " + to_string(regime) + " traffic)");
    }
  }
  if (time_points.empty() || std::find(time_points.begin(), time_points.end(), 0.0) == time_points.end())
    throw std::invalid_argument("time points must include 0");
  if (points_per_unit < 16) throw std::invalid_argument("points_per_unit must be >= 16");
  if (replications < 2) throw std::invalid_argument("replications must be >= 2");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(alpha_level > 0.0 && alpha_level < 1.0)) throw std::invalid_argument("alpha_level must be in (0,1)");
  for (double t : time_points) (void)grid_index(t, points_per_unit);
}

RescaledSamples rescaled_workload_samples(const VarianceModel& model, double c,
                                          const std::vector<double>& time_points,
                                          std::size_t replications, std::size_t points_per_unit,
                                          double kappa, std::uint64_t master_seed,
                                          std::uint32_t cell) {
  if (time_points.empty()) throw std::invalid_argument("no time points");
  RescaledSamples out;
  out.delta = solve_delta(model, c);
  if (!(std::abs(out.delta.residual) <= 1e-10))
    throw std::runtime_error("normalization identity c delta / sigma(delta) = 1 violated");
  const double delta = out.delta.delta;
  const double scale = model.sigma(delta);
  const double h = delta / static_cast<double>(points_per_unit);
  const double t_max = max_of(time_points);

  std::vector<std::size_t> idx;
  for (double t : time_points) idx.push_back(grid_index(t, points_per_unit));
  const auto lookback_steps = static_cast<std::size_t>(
      std::ceil(kappa * (1.0 + t_max) * static_cast<double>(points_per_unit) - 1e-9));
  const GridSpec grid{h, lookback_steps, grid_index(t_max, points_per_unit)};
  const PathSampler sampler(model, grid);
  out.embedding = sampler.report();

  out.by_time.assign(time_points.size(), std::vector<double>(replications));
  std::size_t truncated = 0;
  PathSample path{grid, {}, {}};
  std::vector<double> scratch;
  for (std::size_t r = 0; r < replications; ++r) {
    path.seed_trace = sampler.draw_into(master_seed, derive_stream(cell, static_cast<std::uint32_t>(r)),
                                        path.values, scratch);
    const auto w = workload_from_path(path, c);
    if (w.truncation_flag) ++truncated;
    for (std::size_t j = 0; j < idx.size(); ++j) out.by_time[j][r] = w.q_values[idx[j]] / scale;
  }
  out.truncation_rate = static_cast<double>(truncated) / static_cast<double>(replications);
  return out;
}

RescaledSamples rescaled_input_samples(const VarianceModel& model, double c,
                                       const std::vector<double>& time_points,
                                       std::size_t replications, std::size_t points_per_unit,
                                       std::uint64_t master_seed, std::uint32_t cell) {
  if (time_points.empty()) throw std::invalid_argument("no time points");
  RescaledSamples out;
  out.delta = solve_delta(model, c);
  const double delta = out.delta.delta;
  const double scale = model.sigma(delta);
  const double h = delta / static_cast<double>(points_per_unit);

  std::vector<std::size_t> idx;
  for (double t : time_points) idx.push_back(grid_index(t, points_per_unit));
  const std::size_t last = *std::max_element(idx.begin(), idx.end());
  if (last == 0) throw std::invalid_argument("input samples need a positive time point");
  const PathSampler sampler(model, GridSpec{h, 0, last});
  out.embedding = sampler.report();

  out.by_time.assign(time_points.size(), std::vector<double>(replications));
  std::vector<double> values, scratch;
  for (std::size_t r = 0; r < replications; ++r) {
    sampler.draw_into(master_seed, derive_stream(cell, static_cast<std::uint32_t>(r)), values, scratch);
    for (std::size_t j = 0; j < idx.size(); ++j) out.by_time[j][r] = values[idx[j]] / scale;
  }
  return out;
}

RescaledSamples reference_fbm_queue_samples(double H, const std::vector<double>& time_points,
                                            std::size_t replications,
                                            std::size_t points_per_unit, double kappa,
                                            std::uint64_t seed) {
  // delta(1) = 1 and sigma(1) = 1 for fBm, so this is Q^{(1)}_{B_H} itself.
  return rescaled_workload_samples(VarianceModel::fbm(H), 1.0, time_points, replications,
                                   points_per_unit, kappa, seed, kReferenceCell);
}

bool ks_sequence_ok(const std::vector<std::vector<double>>& sequences, double slack) {
  for (const auto& seq : sequences)
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] > seq[i - 1] + slack) return false;
  return true;
}

namespace {

// Per time point (and per increment) KS sequences across the c values.
bool verdict_for(const ConvergenceReport& rep, double slack) {
  if (rep.per_c.empty() || !rep.per_c.back().passed) return false;
  std::vector<std::vector<double>> seqs(rep.time_points.size() + rep.increment_pairs.size());
  for (const auto& cell : rep.per_c) {
    std::size_t k = 0;
    for (double v : cell.ks_by_timepoint) seqs[k++].push_back(v);
    for (double v : cell.increment_ks) seqs[k++].push_back(v);
  }
  return ks_sequence_ok(seqs, slack);
}

}  // namespace

ConvergenceReport run_input_flt(const ExperimentConfig& config) {
  config.validate();
  ConvergenceReport rep;
  rep.experiment = "flt-input";
  rep.regime = config.regime;
  rep.model = config.model.describe();
  rep.time_points = config.time_points;
  rep.exact_comparison = config.model.kind() == ModelKind::FBM;

  std::vector<double> sorted = config.time_points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<std::size_t, std::size_t>> pair_idx;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto a = static_cast<std::size_t>(
        std::find(config.time_points.begin(), config.time_points.end(), sorted[i - 1]) -
        config.time_points.begin());
    const auto b = static_cast<std::size_t>(
        std::find(config.time_points.begin(), config.time_points.end(), sorted[i]) -
        config.time_points.begin());
    if (sorted[i] == sorted[i - 1]) continue;
    pair_idx.emplace_back(a, b);
    rep.increment_pairs.emplace_back(sorted[i - 1], sorted[i]);
  }

  const double H = limit_hurst(config.model, config.regime);
  const auto ref = rescaled_input_samples(VarianceModel::fbm(H), 1.0, config.time_points,
                                          config.replications, config.points_per_unit,
                                          config.master_seed, kReferenceCell);
  rep.reference_summary.H_used = H;
  summarize(ref.by_time, rep.reference_summary.sample_mean, rep.reference_summary.sample_variance);

  const double threshold = threshold_for(config, rep.exact_comparison);
  for (std::size_t i = 0; i < config.c_values.size(); ++i) {
    const double c = config.c_values[i];
    const auto s = rescaled_input_samples(config.model, c, config.time_points, config.replications,
                                          config.points_per_unit, config.master_seed,
                                          static_cast<std::uint32_t>(i));
    CellResult cell;
    cell.c = c;
    cell.delta = s.delta.delta;
    cell.residual = s.delta.residual;
    cell.drift_coefficient = c * cell.delta / config.model.sigma(cell.delta);
    cell.threshold = threshold;
    cell.embedding_truncated_mass = s.embedding.truncated_mass;
    summarize(s.by_time, cell.sample_mean, cell.sample_variance);
    const double s2d = config.model.sigma2(cell.delta);
    for (double t : config.time_points) cell.model_variance.push_back(config.model.sigma2(cell.delta * t) / s2d);
    bool ok = true;
    for (std::size_t j = 0; j < config.time_points.size(); ++j) {
      cell.ks_by_timepoint.push_back(ks(s.by_time[j], ref.by_time[j]));
      ok = ok && cell.ks_by_timepoint.back() <= threshold;
    }
    for (const auto& [a, b] : pair_idx) {
      cell.increment_ks.push_back(ks(differences(s.by_time[b], s.by_time[a]),
                                     differences(ref.by_time[b], ref.by_time[a])));
      ok = ok && cell.increment_ks.back() <= threshold;
    }
    cell.passed = ok;
    rep.per_c.push_back(std::move(cell));
  }
  rep.verdict = verdict_for(rep, config.monotone_slack);
  return rep;
}

ConvergenceReport run_workload_flt(const ExperimentConfig& config) {
  config.validate();
  ConvergenceReport rep;
  rep.experiment = "flt-workload";
  rep.regime = config.regime;
  rep.model = config.model.describe();
  rep.time_points = config.time_points;
  rep.exact_comparison = config.model.kind() == ModelKind::FBM;

  const auto zero = static_cast<std::size_t>(
      std::find(config.time_points.begin(), config.time_points.end(), 0.0) - config.time_points.begin());
  const auto last = static_cast<std::size_t>(
      std::max_element(config.time_points.begin(), config.time_points.end()) - config.time_points.begin());
  const bool has_pair = config.time_points[last] > 0.0;
  if (has_pair) rep.increment_pairs.emplace_back(0.0, config.time_points[last]);

  const double H = limit_hurst(config.model, config.regime);
  const auto ref = reference_fbm_queue_samples(H, config.time_points, config.replications,
                                               config.points_per_unit, config.kappa, config.master_seed);
  rep.reference_summary.H_used = H;
  rep.reference_summary.truncation_rate = ref.truncation_rate;
  summarize(ref.by_time, rep.reference_summary.sample_mean, rep.reference_summary.sample_variance);

  const double threshold = threshold_for(config, rep.exact_comparison);
  for (std::size_t i = 0; i < config.c_values.size(); ++i) {
    const double c = config.c_values[i];
    const auto s = rescaled_workload_samples(config.model, c, config.time_points, config.replications,
                                             config.points_per_unit, config.kappa, config.master_seed,
                                             static_cast<std::uint32_t>(i));
    if (s.truncation_rate > config.max_truncation_rate) {
      std::ostringstream os;
      os << "truncation rate " << s.truncation_rate << " at c=" << c << " exceeds "
         << config.max_truncation_rate << "; the lookback is too short, increase kappa (now "
         << config.kappa << ")";
      throw std::runtime_error(os.str());
    }
    CellResult cell;
    cell.c = c;
    cell.delta = s.delta.delta;
    cell.residual = s.delta.residual;
    cell.drift_coefficient = c * cell.delta / config.model.sigma(cell.delta);
    cell.threshold = threshold;
    cell.truncation_rate = s.truncation_rate;
    cell.embedding_truncated_mass = s.embedding.truncated_mass;
    summarize(s.by_time, cell.sample_mean, cell.sample_variance);
    bool ok = true;
    for (std::size_t j = 0; j < config.time_points.size(); ++j) {
      cell.ks_by_timepoint.push_back(ks(s.by_time[j], ref.by_time[j]));
      ok = ok && cell.ks_by_timepoint.back() <= threshold;
    }
    if (has_pair) {
      cell.increment_ks.push_back(ks(differences(s.by_time[last], s.by_time[zero]),
                                     differences(ref.by_time[last], ref.by_time[zero])));
      ok = ok && cell.increment_ks.back() <= threshold;
    }
    cell.passed = ok;
    rep.per_c.push_back(std::move(cell));
  }
  rep.verdict = verdict_for(rep, config.monotone_slack);
  return rep;
}

OmegaDecayReport run_omega_gamma_decay(const VarianceModel& model, Regime regime, double c,
                                       double gamma, const std::vector<double>& T_grid,
                                       std::size_t replications, std::uint64_t seed,
                                       const OmegaDecayOptions& options) {
  (void)regime;  // the regime only fixes which limit index gamma is compared with below
  if (T_grid.empty()) throw std::invalid_argument("omega decay needs a T grid");
  if (replications == 0) throw std::invalid_argument("replications must be >= 1");
  OmegaDecayReport rep;
  rep.c = c;
  rep.gamma = gamma;
  rep.eta = options.eta;
  rep.T_grid = T_grid;
  rep.gamma_admissible = gamma > std::max(model.lambda0(), model.alpha_inf());

  const auto sol = solve_delta(model, c);
  rep.delta = sol.delta;
  const double scale = model.sigma(sol.delta);
  const std::size_t ppu = options.points_per_unit;
  rep.T_max = options.window_factor * max_of(T_grid);
  const auto n = static_cast<std::size_t>(std::ceil(rep.T_max * static_cast<double>(ppu) - 1e-9));
  std::vector<std::size_t> idx;
  for (double T : T_grid) {
    idx.push_back(grid_index(T, ppu));
    if (idx.back() == 0 || idx.back() > n) throw std::invalid_argument("T grid values must lie in (0, T_max]");
  }

  const GridSpec grid{sol.delta / static_cast<double>(ppu), n, n};
  const PathSampler sampler(model, grid);
  std::vector<double> envelope(n + 1);
  for (std::size_t k = 1; k <= n; ++k)
    envelope[k] = 1.0 + std::pow(static_cast<double>(k) / static_cast<double>(ppu), gamma);

  std::vector<std::size_t> hits(T_grid.size(), 0);
  std::vector<double> values, scratch, suffix(n + 2);
  for (std::size_t r = 0; r < replications; ++r) {
    sampler.draw_into(seed, derive_stream(0, static_cast<std::uint32_t>(r)), values, scratch);
    suffix[n + 1] = 0.0;
    for (std::size_t k = n; k >= 1; --k) {
      const double v = std::max(std::abs(values[n + k]), std::abs(values[n - k])) / scale / envelope[k];
      suffix[k] = std::max(suffix[k + 1], v);
    }
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (suffix[idx[j]] >= options.eta) ++hits[j];
  }
  for (std::size_t h : hits) rep.p_T.push_back(static_cast<double>(h) / static_cast<double>(replications));

  std::vector<std::pair<double, double>> by_T;
  for (std::size_t j = 0; j < T_grid.size(); ++j) by_T.emplace_back(T_grid[j], rep.p_T[j]);
  std::sort(by_T.begin(), by_T.end());
  rep.nonincreasing = true;
  for (std::size_t j = 1; j < by_T.size(); ++j)
    rep.nonincreasing = rep.nonincreasing && by_T[j].second <= by_T[j - 1].second;
  return rep;
}

ModulusReport run_modulus_diagnostic(const VarianceModel& model, double c,
                                     const std::vector<double>& zeta_grid, double eta,
                                     std::size_t replications, std::uint64_t seed,
                                     const ModulusOptions& options) {
  if (zeta_grid.empty()) throw std::invalid_argument("modulus diagnostic needs a zeta grid");
  for (std::size_t i = 1; i < zeta_grid.size(); ++i)
    if (!(zeta_grid[i] < zeta_grid[i - 1])) throw std::invalid_argument("zeta grid must be decreasing");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (replications == 0) throw std::invalid_argument("replications must be >= 1");

  ModulusReport rep;
  rep.c = c;
  rep.eta = eta;
  rep.horizon = options.horizon;
  rep.zeta_grid = zeta_grid;
  const auto sol = solve_delta(model, c);
  rep.delta = sol.delta;
  const double scale = model.sigma(sol.delta);
  const double rescaled_h = options.horizon / static_cast<double>(options.steps);
  const PathSampler sampler(model, GridSpec{sol.delta * rescaled_h, 0, options.steps});

  std::vector<std::size_t> windows;
  for (double z : zeta_grid) windows.push_back(static_cast<std::size_t>(std::floor(z / rescaled_h + 1e-9)));

  std::vector<std::size_t> hits(zeta_grid.size(), 0);
  std::vector<double> values, scratch;
  for (std::size_t r = 0; r < replications; ++r) {
    sampler.draw_into(seed, derive_stream(0, static_cast<std::uint32_t>(r)), values, scratch);
    for (double& v : values) v /= scale;
    for (std::size_t j = 0; j < windows.size(); ++j)
      if (windowed_oscillation(values, windows[j]) >= eta) ++hits[j];
  }
  rep.nonincreasing = true;
  for (std::size_t j = 0; j < hits.size(); ++j) {
    rep.probabilities.push_back(static_cast<double>(hits[j]) / static_cast<double>(replications));
    if (j > 0) rep.nonincreasing = rep.nonincreasing && rep.probabilities[j] <= rep.probabilities[j - 1];
    const double radius = std::min(2.0 * std::pow(zeta_grid[j], model.lambda0()), model.sigma(options.horizon));
    rep.entropy_bound.push_back(modulus_bound(model, options.horizon, radius));
  }
  return rep;
}

}  // namespace fluidq
