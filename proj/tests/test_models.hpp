#pragma once

#include <vector>

#include "fluidq/variance_model.hpp"

namespace fluidq::testing {

inline std::vector<VarianceModel> builtin_models() {
  return {VarianceModel::fbm(0.3),           VarianceModel::fbm(0.5),
          VarianceModel::fbm(0.7),           VarianceModel::power_sum(0.4, 0.7),
          VarianceModel::power_sum(0.6, 0.8, 2.0, 0.5), VarianceModel::power_ratio(0.7, 0.4),
          VarianceModel::power_ratio(0.9, 0.6, 1.5)};
}

}  // namespace fluidq::testing
