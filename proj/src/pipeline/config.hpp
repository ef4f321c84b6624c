// Copyright 2026 The AmineScreen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "generate/mmp.hpp"

namespace amine::pipeline {

inline constexpr const char* kCapacity = "absorption_capacity";
inline constexpr const char* kRate = "observed_initial_rate";

struct PipelineConfig {
  std::uint64_t seed = 0;
  int fingerprint_radius = 2;
  double pca_variance = 0.95;
  double rate_threshold = 0.0868;
  double capacity_ratio_threshold = 0.8;
  // Grid file: {"absorption_capacity": {kind: {param: [..]}}, "observed_initial_rate": ...}
  // or one kind map used for both. Empty: every kind at its defaults.
  std::string grid_file;
  std::string calibration_file;
  int folds = 10;
  unsigned threads = 0;
  // Soft-voting members per property, by kind name.
  std::map<std::string, std::vector<std::string>> ensembles{
      {kCapacity, {"DecisionTree", "GaussianProcess", "ExtraTrees"}},
      {kRate,
       {"DecisionTree", "GaussianProcess", "AdaBoost", "MLP", "ExtraTrees", "LogisticRegression",
        "SupportVector"}},
  };
  // Model used by predict/rank per property: "best", "ensemble" or a kind.
  std::map<std::string, std::string> predict_model{{kCapacity, "best"}, {kRate, "best"}};
  // Dataset column renames: schema name -> header in the file.
  std::map<std::string, std::string> columns;
  // Used when the dataset has no validate rows.
  double validation_fraction = 0.1;
  int env_radius = gen::kDefaultEnvRadius;
  gen::FilterThresholds filter;
};

// Relative paths inside the file are resolved against its directory.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig config_from_json(const std::string& text, const std::filesystem::path& base = {});
std::string config_to_json(const PipelineConfig& config);

// Sets one key from a JSON value, e.g. ("seed", "7") or ("folds", "5").
void set_config_value(PipelineConfig& config, const std::string& key, const std::string& json_value);

// Throws InvalidArgument on out-of-range values (folds < 2, ...).
void validate_config(const PipelineConfig& config);

}  // namespace amine::pipeline
