#include "fluidq/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace fluidq {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double get_or(const json& doc, const char* key, double fallback) {
  return doc.contains(key) ? doc.at(key).get<double>() : fallback;
}

}  // namespace

VarianceModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("model document must be a JSON object");
  const auto kind = model_kind_from_string(doc.at("kind").get<std::string>());
  switch (kind) {
    case ModelKind::FBM:
      return VarianceModel::fbm(doc.at("hurst").get<double>());
    case ModelKind::PowerSum:
      return VarianceModel::power_sum(doc.at("lambda0").get<double>(), doc.at("alpha_inf").get<double>(),
                                      get_or(doc, "a", 1.0), get_or(doc, "b", 1.0));
    case ModelKind::PowerRatio:
      return VarianceModel::power_ratio(doc.at("lambda0").get<double>(), doc.at("alpha_inf").get<double>(),
                                        get_or(doc, "a", 1.0));
  }
  throw std::invalid_argument("unsupported model kind");
}

json to_json(const VarianceModel& m) {
  json j{{"kind", to_string(m.kind())}, {"lambda0", m.lambda0()}, {"alpha_inf", m.alpha_inf()}};
  switch (m.kind()) {
    case ModelKind::FBM: j["hurst"] = m.hurst(); break;
    case ModelKind::PowerSum: j["a"] = m.a(); j["b"] = m.b(); break;
    case ModelKind::PowerRatio: j["a"] = m.a(); break;
  }
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
}

VarianceModel load_model(const std::string& path) { return model_from_json(load_json(path)); }

ExperimentConfig config_from_json(const json& doc, const VarianceModel* fallback_model) {
  ExperimentConfig cfg;
  if (doc.contains("model"))
    cfg.model = model_from_json(doc.at("model"));
  else if (fallback_model != nullptr)
    cfg.model = *fallback_model;
  else
    throw std::invalid_argument("experiment config needs a model");
  if (doc.contains("regime")) cfg.regime = regime_from_string(doc.at("regime").get<std::string>());
  if (doc.contains("c_values")) cfg.c_values = doc.at("c_values").get<std::vector<double>>();
  if (doc.contains("time_points")) cfg.time_points = doc.at("time_points").get<std::vector<double>>();
  if (doc.contains("replications")) cfg.replications = doc.at("replications").get<std::size_t>();
  if (doc.contains("points_per_unit")) cfg.points_per_unit = doc.at("points_per_unit").get<std::size_t>();
  if (doc.contains("kappa")) cfg.kappa = doc.at("kappa").get<double>();
  if (doc.contains("gamma")) cfg.gamma = doc.at("gamma").get<double>();
  if (doc.contains("master_seed")) cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
  if (doc.contains("alpha_level")) cfg.alpha_level = doc.at("alpha_level").get<double>();
  return cfg;
}

json to_json(const EmbeddingReport& r) {
  return {{"embedding_size", r.embedding_size},
          {"min_eigenvalue", r.min_eigenvalue},
          {"truncated_mass", r.truncated_mass},
          {"method", to_string(r.method)}};
}

json to_json(const DeltaSolution& s) {
  return {{"c", s.c},
          {"delta", s.delta},
          {"residual", s.residual},
          {"bracket", {s.bracket_lo, s.bracket_hi}},
          {"iterations", s.iterations}};
}

json to_json(const DeltaAudit& a) {
  return {{"regime", to_string(a.regime)}, {"c_grid", a.c_grid},     {"deltas", a.deltas},
          {"max_residual", a.max_residual}, {"slope", a.slope},       {"expected", a.expected},
          {"passed", a.passed}};
}

json to_json(const ConditionCReport& r) {
  return {{"t_grid", r.t_grid},
          {"values", r.values},
          {"limit_estimate", r.limit_estimate},
          {"tail_variation", r.tail_variation},
          {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

json to_json(const PotterReport& r) {
  return {{"lower_exponent", r.lower_exponent}, {"upper_exponent", r.upper_exponent},
          {"coarse_sup", r.coarse_sup},         {"max_ratio_excess", r.max_ratio_excess},
          {"C_fitted", r.C_fitted},             {"passed", r.passed}};
}

json to_json(const EntropyProfile& p) {
  return {{"interval_length", p.interval_length},
          {"theta_grid", p.theta_grid},
          {"entropy_values", p.entropy_values},
          {"dudley_value", p.dudley_value},
          {"dudley_converged", p.dudley_converged}};
}

json to_json(const ConvergenceReport& r) {
  json cells = json::array();
  for (const auto& c : r.per_c) {
    cells.push_back({{"c", c.c},
                     {"delta", c.delta},
                     {"residual", c.residual},
                     {"drift_coefficient", c.drift_coefficient},
                     {"ks_by_timepoint", c.ks_by_timepoint},
                     {"increment_ks", c.increment_ks},
                     {"threshold", c.threshold},
                     {"truncation_rate", c.truncation_rate},
                     {"embedding_truncated_mass", c.embedding_truncated_mass},
                     {"sample_mean", c.sample_mean},
                     {"sample_variance", c.sample_variance},
                     {"model_variance", c.model_variance},
                     {"passed", c.passed}});
  }
  json pairs = json::array();
  for (const auto& [a, b] : r.increment_pairs) pairs.push_back({a, b});
  return {{"experiment", r.experiment},
          {"regime", to_string(r.regime)},
          {"model", r.model},
          {"time_points", r.time_points},
          {"increment_pairs", pairs},
          {"exact_comparison", r.exact_comparison},
          {"per_c", cells},
          {"reference_summary",
           {{"H_used", r.reference_summary.H_used},
            {"sample_mean", r.reference_summary.sample_mean},
            {"sample_variance", r.reference_summary.sample_variance},
            {"truncation_rate", r.reference_summary.truncation_rate}}},
          {"verdict", r.verdict}};
}

json to_json(const OmegaDecayReport& r) {
  return {{"c", r.c},         {"delta", r.delta},       {"gamma", r.gamma},
          {"eta", r.eta},     {"T_max", r.T_max},       {"gamma_admissible", r.gamma_admissible},
          {"T_grid", r.T_grid}, {"p_T", r.p_T},         {"nonincreasing", r.nonincreasing}};
}

json to_json(const ModulusReport& r) {
  return {{"c", r.c},
          {"delta", r.delta},
          {"eta", r.eta},
          {"horizon", r.horizon},
          {"zeta_grid", r.zeta_grid},
          {"probabilities", r.probabilities},
          {"entropy_bound", r.entropy_bound},
          {"nonincreasing", r.nonincreasing}};
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& r) {
  os << "c,delta,t,ks,threshold,pass\n";
  for (const auto& cell : r.per_c) {
    for (std::size_t j = 0; j < cell.ks_by_timepoint.size(); ++j) {
      const double ks = cell.ks_by_timepoint[j];
      os << num(cell.c) << ',' << num(cell.delta) << ',' << num(r.time_points[j]) << ',' << num(ks) << ','
         << num(cell.threshold) << ',' << (ks <= cell.threshold ? "true" : "false") << '\n';
    }
    for (std::size_t j = 0; j < cell.increment_ks.size(); ++j) {
      const double ks = cell.increment_ks[j];
      const auto& [a, b] = r.increment_pairs[j];
      os << num(cell.c) << ',' << num(cell.delta) << ',' << num(a) << "->" << num(b) << ',' << num(ks) << ','
         << num(cell.threshold) << ',' << (ks <= cell.threshold ? "true" : "false") << '\n';
    }
  }
}

void write_path_csv(std::ostream& os, const PathSample& p) {
  os << "t,x\n";
  for (std::size_t k = 0; k < p.values.size(); ++k)
    os << num(p.grid.time(k)) << ',' << num(p.values[k]) << '\n';
}

void write_workload_csv(std::ostream& os, const WorkloadPath& w) {
  os << "t,q\n";
  for (std::size_t k = 0; k < w.q_values.size(); ++k) os << num(w.time(k)) << ',' << num(w.q_values[k]) << '\n';
}

}  // namespace fluidq
