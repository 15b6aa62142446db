#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "fluidq/entropy.hpp"
#include "fluidq/experiments.hpp"
#include "fluidq/gaussian_path.hpp"
#include "fluidq/queue.hpp"
#include "fluidq/scaling.hpp"
#include "fluidq/variance_model.hpp"

namespace fluidq {

// Model documents:
//   {"kind": "fbm"|"power_sum"|"power_ratio", "hurst": .., "lambda0": .., "alpha_inf": .., "a": .., "b": ..}

VarianceModel model_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const VarianceModel& model);

VarianceModel load_model(const std::string& path);
nlohmann::json load_json(const std::string& path);

/// Experiment config document; "model" may be inline or omitted when
/// `fallback_model` is supplied.
ExperimentConfig config_from_json(const nlohmann::json& doc, const VarianceModel* fallback_model = nullptr);

nlohmann::json to_json(const EmbeddingReport& r);
nlohmann::json to_json(const DeltaSolution& s);
nlohmann::json to_json(const DeltaAudit& a);
nlohmann::json to_json(const ConditionCReport& r);
nlohmann::json to_json(const PotterReport& r);
nlohmann::json to_json(const EntropyProfile& p);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const OmegaDecayReport& r);
nlohmann::json to_json(const ModulusReport& r);

/// Rows `c,delta,t,ks,threshold,pass`; increment comparisons use
/// t = "t0->t1".
void write_convergence_csv(std::ostream& os, const ConvergenceReport& r);

void write_path_csv(std::ostream& os, const PathSample& p);
void write_workload_csv(std::ostream& os, const WorkloadPath& w);

}  // namespace fluidq
