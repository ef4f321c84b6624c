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

#include "pipeline/config.hpp"

#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "json.hpp"
#include "learn/classifier.hpp"

namespace amine::pipeline {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "aminescreen.config";
constexpr int kVersion = 1;

std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

void apply(PipelineConfig& c, const std::string& key, const Json& v,
           const std::filesystem::path& base) {
  try {
    if (key == "format" || key == "version") {
      return;
    } else if (key == "seed") {
      c.seed = v.get<std::uint64_t>();
    } else if (key == "fingerprint_radius") {
      c.fingerprint_radius = v.get<int>();
    } else if (key == "pca_variance") {
      c.pca_variance = v.get<double>();
    } else if (key == "rate_threshold") {
      c.rate_threshold = v.get<double>();
    } else if (key == "capacity_ratio_threshold") {
      c.capacity_ratio_threshold = v.get<double>();
    } else if (key == "grid_file") {
      c.grid_file = resolve(base, v.get<std::string>());
    } else if (key == "calibration_file") {
      c.calibration_file = resolve(base, v.get<std::string>());
    } else if (key == "folds") {
      c.folds = v.get<int>();
    } else if (key == "threads") {
      c.threads = v.get<unsigned>();
    } else if (key == "ensembles") {
      c.ensembles = v.get<std::map<std::string, std::vector<std::string>>>();
    } else if (key == "predict_model") {
      for (const auto& [p, m] : v.items()) c.predict_model[p] = m.get<std::string>();
    } else if (key == "columns") {
      c.columns = v.get<std::map<std::string, std::string>>();
    } else if (key == "validation_fraction") {
      c.validation_fraction = v.get<double>();
    } else if (key == "env_radius") {
      c.env_radius = v.get<int>();
    } else if (key == "filter") {
      for (const auto& [k, x] : v.items()) {
        if (k == "min_water_solubility") {
          c.filter.min_water_solubility = x.get<double>();
        } else if (k == "max_pkb") {
          c.filter.max_pkb = x.get<double>();
        } else if (k == "min_ld50") {
          c.filter.min_ld50 = x.get<double>();
        } else if (k == "strict") {
          c.filter.strict = x.get<bool>();
        } else {
          throw Error(ErrorCode::kInvalidArgument, "unknown filter key '" + k + "'");
        }
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("config key '{}': {}", key, e.what()));
  }
}

}  // namespace

PipelineConfig config_from_json(const std::string& text, const std::filesystem::path& base) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "config must be a JSON object");
  if (j.contains("format") && j["format"] != kFormat) {
    throw Error(ErrorCode::kFormat, "not an aminescreen config file");
  }
  if (j.contains("version") && j["version"] != kVersion) {
    throw Error(ErrorCode::kFormat, "unsupported config version");
  }
  PipelineConfig c;
  for (const auto& [k, v] : j.items()) apply(c, k, v, base);
  validate_config(c);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  return config_from_json(csv::read_text(path), path.parent_path());
}

std::string config_to_json(const PipelineConfig& c) {
  Json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["seed"] = c.seed;
  j["fingerprint_radius"] = c.fingerprint_radius;
  j["pca_variance"] = c.pca_variance;
  j["rate_threshold"] = c.rate_threshold;
  j["capacity_ratio_threshold"] = c.capacity_ratio_threshold;
  j["grid_file"] = c.grid_file;
  j["calibration_file"] = c.calibration_file;
  j["folds"] = c.folds;
  j["threads"] = c.threads;
  j["ensembles"] = c.ensembles;
  j["predict_model"] = c.predict_model;
  j["columns"] = c.columns;
  j["validation_fraction"] = c.validation_fraction;
  j["env_radius"] = c.env_radius;
  j["filter"] = {{"min_water_solubility", c.filter.min_water_solubility},
                 {"max_pkb", c.filter.max_pkb},
                 {"min_ld50", c.filter.min_ld50},
                 {"strict", c.filter.strict}};
  return j.dump(2) + "\n";
}

void set_config_value(PipelineConfig& c, const std::string& key, const std::string& json_value) {
  Json v;
  try {
    v = Json::parse(json_value);
  } catch (const Json::exception&) {
    v = json_value;  // bare string
  }
  apply(c, key, v, {});
  validate_config(c);
}

void validate_config(const PipelineConfig& c) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (c.folds < 2) bad(fmt::format("folds must be >= 2 (got {})", c.folds));
  if (c.fingerprint_radius < 0 || c.fingerprint_radius > 4) bad("fingerprint_radius outside [0, 4]");
  if (!(c.pca_variance > 0.0 && c.pca_variance <= 1.0)) bad("pca_variance must be in (0, 1]");
  if (!(c.rate_threshold >= 0.0)) bad("rate_threshold must be >= 0");
  if (!(c.capacity_ratio_threshold > 0.0)) bad("capacity_ratio_threshold must be > 0");
  if (!(c.validation_fraction > 0.0 && c.validation_fraction < 1.0)) {
    bad("validation_fraction must be in (0, 1)");
  }
  if (c.env_radius < 0 || c.env_radius > gen::kMaxEnvRadius) bad("env_radius outside [0, 3]");
  for (const auto& [p, members] : c.ensembles) {
    if (p != kCapacity && p != kRate) bad("unknown property '" + p + "' in ensembles");
    for (const auto& m : members) learn::parse_kind(m);
  }
  for (const auto& [p, m] : c.predict_model) {
    if (p != kCapacity && p != kRate) bad("unknown property '" + p + "' in predict_model");
    if (m != "best" && m != "ensemble") learn::parse_kind(m);
  }
}

}  // namespace amine::pipeline
