// fluidq command-line driver.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fluidq/entropy.hpp"
#include "fluidq/experiments.hpp"
#include "fluidq/io.hpp"
#include "fluidq/queue.hpp"
#include "fluidq/scaling.hpp"
#include "fluidq/variance_model.hpp"

namespace fs = std::filesystem;
using fluidq::VarianceModel;
using nlohmann::json;

namespace {

struct Globals {
  std::string config_path;
  std::string model_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

json config_doc(const Globals& g) {
  return g.config_path.empty() ? json::object() : fluidq::load_json(g.config_path);
}

VarianceModel resolve_model(const Globals& g) {
  if (!g.model_path.empty()) return fluidq::load_model(g.model_path);
  const auto doc = config_doc(g);
  if (doc.contains("model")) return fluidq::model_from_json(doc.at("model"));
  throw std::invalid_argument("no model given (use --model <file> or a config with a \"model\" entry)");
}

std::uint64_t resolve_seed(const Globals& g, std::uint64_t fallback) { return g.seed.value_or(fallback); }

// "lo:hi:n" for n log-spaced values, or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::istringstream is(spec);
    std::string a, b, n;
    std::getline(is, a, ':');
    std::getline(is, b, ':');
    std::getline(is, n);
    return fluidq::log_space(std::stod(a), std::stod(b), std::stoul(n));
  }
  std::istringstream is(spec);
  for (std::string tok; std::getline(is, tok, ',');)
    if (!tok.empty()) out.push_back(std::stod(tok));
  if (out.empty()) throw std::invalid_argument("empty grid '" + spec + "'");
  return out;
}

fs::path out_path(const Globals& g, const std::string& name) {
  const fs::path dir = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);
  fs::create_directories(dir);
  return dir / name;
}

void emit_json(const Globals& g, const std::string& name, const json& j) {
  if (!g.out_dir.empty()) {
    std::ofstream(out_path(g, name)) << j.dump(2) << '\n';
  }
  std::cout << j.dump(2) << '\n';
}

int cmd_model_info(const Globals& g, bool as_json) {
  const auto m = resolve_model(g);
  const double eps_c = 0.5;
  const double eps_p = std::min(0.05, m.lambda0() / 2.0);
  const auto cond_c = fluidq::check_condition_C(m, eps_c, fluidq::default_condition_c_grid());
  const auto potter = fluidq::potter_check(m, eps_p);
  const double lam = fluidq::estimate_rv_index(m, fluidq::RvEnd::Zero, fluidq::default_rv_grid(fluidq::RvEnd::Zero));
  const double alp =
      fluidq::estimate_rv_index(m, fluidq::RvEnd::Infinity, fluidq::default_rv_grid(fluidq::RvEnd::Infinity));
  const bool rv_ok = std::abs(lam - m.lambda0()) <= 0.02 && std::abs(alp - m.alpha_inf()) <= 0.02;
  const bool ok = cond_c.passed && potter.passed && rv_ok;

  json j{{"model", fluidq::to_json(m)},
         {"description", m.describe()},
         {"rv_index_zero", lam},
         {"rv_index_infinity", alp},
         {"rv_indices_match", rv_ok},
         {"condition_C", fluidq::to_json(cond_c)},
         {"potter", fluidq::to_json(potter)},
         {"passed", ok}};
  if (!g.out_dir.empty()) std::ofstream(out_path(g, "model_info.json")) << j.dump(2) << '\n';
  if (as_json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << m.describe() << '\n'
              << "  lambda (declared / estimated): " << m.lambda0() << " / " << lam << '\n'
              << "  alpha  (declared / estimated): " << m.alpha_inf() << " / " << alp << '\n'
              << "  condition C (eps=" << eps_c << "): " << (cond_c.passed ? "ok" : "FAILED")
              << "  tail variation " << cond_c.tail_variation << " tol " << cond_c.tolerance << '\n'
              << "  Potter bound (eps=" << eps_p << "): " << (potter.passed ? "ok" : "FAILED") << "  C="
              << potter.C_fitted << " excess " << potter.max_ratio_excess << '\n'
              << "verdict: " << (ok ? "passed" : "failed") << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_delta(const Globals& g, double c) {
  const auto m = resolve_model(g);
  emit_json(g, "delta.json", fluidq::to_json(fluidq::solve_delta(m, c)));
  return 0;
}

int cmd_delta_audit(const Globals& g, const std::string& regime, const std::string& grid) {
  const auto m = resolve_model(g);
  const auto r = fluidq::regime_from_string(regime);
  const auto cs = grid.empty() ? fluidq::default_audit_grid(r) : parse_grid(grid);
  const auto a = fluidq::delta_exponent_audit(m, r, cs);
  emit_json(g, "delta_audit.json", fluidq::to_json(a));
  return a.passed ? 0 : 1;
}

int cmd_simulate_path(const Globals& g, double h, std::size_t n_left, std::size_t n_right, bool report) {
  const auto m = resolve_model(g);
  const fluidq::PathSampler sampler(m, fluidq::GridSpec{h, n_left, n_right});
  const auto p = sampler.draw(resolve_seed(g, 1), 0);
  if (g.out_dir.empty()) {
    fluidq::write_path_csv(std::cout, p);
  } else {
    std::ofstream os(out_path(g, "path.csv"));
    fluidq::write_path_csv(os, p);
  }
  if (report) std::cerr << fluidq::to_json(sampler.report()).dump() << '\n';
  return 0;
}

int cmd_simulate_queue(const Globals& g, double c, double S, double T, double h) {
  const auto m = resolve_model(g);
  const fluidq::WorkloadSimulator sim(m, fluidq::QueueConfig{c, S}, T, h);
  const auto w = sim.draw(resolve_seed(g, 1), 0);
  const json side{{"q0", w.q_zero},
                  {"argmax_location", w.argmax_location},
                  {"truncation_flag", w.truncation_flag},
                  {"embedding", fluidq::to_json(sim.report())}};
  if (g.out_dir.empty()) {
    fluidq::write_workload_csv(std::cout, w);
    std::cerr << side.dump() << '\n';
  } else {
    std::ofstream os(out_path(g, "workload.csv"));
    fluidq::write_workload_csv(os, w);
    std::ofstream(out_path(g, "workload.json")) << side.dump(2) << '\n';
  }
  return 0;
}

int cmd_entropy(const Globals& g, double L, std::optional<double> zeta) {
  const auto m = resolve_model(g);
  auto j = fluidq::to_json(fluidq::entropy_profile(m, L));
  if (zeta) {
    j["zeta"] = *zeta;
    j["modulus_bound"] = fluidq::modulus_bound(m, L, *zeta);
  }
  emit_json(g, "entropy.json", j);
  return 0;
}

int cmd_flt(const Globals& g, bool workload) {
  auto doc = config_doc(g);
  std::optional<VarianceModel> override_model;
  if (!g.model_path.empty()) override_model = fluidq::load_model(g.model_path);
  if (override_model) doc.erase("model");
  auto cfg = fluidq::config_from_json(doc, override_model ? &*override_model : nullptr);
  if (g.seed) cfg.master_seed = *g.seed;
  const auto rep = workload ? fluidq::run_workload_flt(cfg) : fluidq::run_input_flt(cfg);

  const std::string stem = rep.experiment;
  {
    std::ofstream os(out_path(g, stem + ".csv"));
    fluidq::write_convergence_csv(os, rep);
  }
  std::ofstream(out_path(g, stem + ".json")) << fluidq::to_json(rep).dump(2) << '\n';
  for (const auto& cell : rep.per_c) {
    std::cout << "c=" << cell.c << " delta=" << cell.delta << " ks=[";
    for (std::size_t j = 0; j < cell.ks_by_timepoint.size(); ++j)
      std::cout << (j ? " " : "") << cell.ks_by_timepoint[j];
    for (double v : cell.increment_ks) std::cout << " inc:" << v;
    std::cout << "] threshold=" << cell.threshold << (cell.passed ? " pass" : " fail") << '\n';
  }
  std::cout << "verdict: " << (rep.verdict ? "pass" : "fail") << '\n';
  return rep.verdict ? 0 : 1;
}

int cmd_omega(const Globals& g, const std::string& regime, double c, double gamma, const std::string& T_grid,
              std::size_t reps, double eta) {
  const auto m = resolve_model(g);
  fluidq::OmegaDecayOptions opt;
  opt.eta = eta;
  const auto rep = fluidq::run_omega_gamma_decay(m, fluidq::regime_from_string(regime), c, gamma,
                                                 parse_grid(T_grid), reps, resolve_seed(g, 1), opt);
  emit_json(g, "omega_decay.json", fluidq::to_json(rep));
  return rep.nonincreasing ? 0 : 1;
}

int cmd_modulus(const Globals& g, double c, const std::string& zeta_grid, double eta, std::size_t reps,
                double horizon) {
  const auto m = resolve_model(g);
  fluidq::ModulusOptions opt;
  opt.horizon = horizon;
  const auto rep =
      fluidq::run_modulus_diagnostic(m, c, parse_grid(zeta_grid), eta, reps, resolve_seed(g, 1), opt);
  emit_json(g, "modulus.json", fluidq::to_json(rep));
  return rep.nonincreasing ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary fluid queues fed by Gaussian inputs: scaling limits and diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "JSON config (experiment settings and/or model)");
  app.add_option("--model", g.model_path, "JSON model file");
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out", g.out_dir, "Output directory");

  int rc = 0;

  bool as_json = false;
  auto* info = app.add_subcommand("model-info", "Validate a variance model");
  info->add_flag("--json", as_json, "Print the JSON verdict instead of the text report");
  info->callback([&] { rc = cmd_model_info(g, as_json); });

  double c = 1.0;
  auto* delta = app.add_subcommand("delta", "Solve c delta / sigma(delta) = 1");
  delta->add_option("--c", c, "Drain rate")->required();
  delta->callback([&] { rc = cmd_delta(g, c); });

  std::string regime = "heavy", c_grid;
  auto* audit = app.add_subcommand("delta-audit", "Regular-variation exponent of delta(c)");
  audit->add_option("--regime", regime, "heavy|light");
  audit->add_option("--c-grid", c_grid, "lo:hi:n (log-spaced) or comma list");
  audit->callback([&] { rc = cmd_delta_audit(g, regime, c_grid); });

  double h = 0.01;
  std::size_t n_left = 0, n_right = 100;
  bool report = false;
  auto* sp = app.add_subcommand("simulate-path", "Sample X on a uniform grid");
  sp->set_help_flag("--help", "Print this help message and exit");
  sp->add_option("--h", h, "Grid step");
  sp->add_option("--n-left", n_left, "Steps below 0");
  sp->add_option("--n-right", n_right, "Steps above 0");
  sp->add_flag("--report", report, "Print the embedding report as JSON on stderr");
  sp->callback([&] { rc = cmd_simulate_path(g, h, n_left, n_right, report); });

  double S = 10.0, T = 1.0;
  auto* sq = app.add_subcommand("simulate-queue", "Sample a stationary workload path");
  sq->set_help_flag("--help", "Print this help message and exit");
  sq->add_option("--c", c, "Drain rate");
  sq->add_option("--S", S, "Lookback horizon");
  sq->add_option("--T", T, "Horizon");
  sq->add_option("--h", h, "Grid step");
  sq->callback([&] { rc = cmd_simulate_queue(g, c, S, T, h); });

  double L = 1.0;
  std::optional<double> zeta;
  auto* ent = app.add_subcommand("entropy", "Metric entropy profile and Dudley integral");
  ent->add_option("--L", L, "Interval length");
  ent->add_option("--zeta", zeta, "Also report the modulus bound at this radius");
  ent->callback([&] { rc = cmd_entropy(g, L, zeta); });

  auto* fi = app.add_subcommand("flt-input", "Input-process limit experiment (needs --config)");
  fi->callback([&] { rc = cmd_flt(g, false); });
  auto* fw = app.add_subcommand("flt-workload", "Workload limit experiment (needs --config)");
  fw->callback([&] { rc = cmd_flt(g, true); });

  double gamma = 0.8, eta = 1.0;
  std::string T_grid = "1,2,4,8";
  std::size_t reps = 1000;
  auto* om = app.add_subcommand("omega-decay", "Tail probabilities of the Omega^gamma envelope");
  om->add_option("--regime", regime, "heavy|light");
  om->add_option("--c", c, "Drain rate");
  om->add_option("--gamma", gamma, "Envelope exponent");
  om->add_option("--T-grid", T_grid, "Comma list of T values");
  om->add_option("--reps", reps, "Replications");
  om->add_option("--eta", eta, "Level");
  om->callback([&] { rc = cmd_omega(g, regime, c, gamma, T_grid, reps, eta); });

  std::string zeta_grid = "0.5,0.2,0.1,0.05,0.01";
  double horizon = 1.0;
  auto* mod = app.add_subcommand("modulus", "Modulus-of-continuity probabilities");
  mod->add_option("--c", c, "Drain rate");
  mod->add_option("--zeta-grid", zeta_grid, "Decreasing comma list");
  mod->add_option("--eta", eta, "Level");
  mod->add_option("--reps", reps, "Replications");
  mod->add_option("--horizon", horizon, "Rescaled horizon T");
  mod->callback([&] { rc = cmd_modulus(g, c, zeta_grid, eta, reps, horizon); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "fluidq: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
