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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fingerprint/pca.hpp"
#include "learn/classifier.hpp"
#include "learn/metrics.hpp"
#include "pipeline/config.hpp"
#include "pipeline/dataset.hpp"

namespace amine::pipeline {

const std::vector<std::string>& properties();

// Fills in splits when the dataset carries none: a seeded draw of 6/5
// rate-positive/negative validation rows and 12/8 test rows, rest train.
// Returns false (records untouched) when any split is already set.
bool assign_default_splits(std::vector<DatasetRecord>& records, const PipelineConfig& config);

// Class label of one record, or nullopt when the property is missing or the
// record is not eligible. Capacity labels of molecules without a
// stoichiometric amine are 0.
std::optional<int> label_of(const DatasetRecord& r, const std::string& property,
                            const PipelineConfig& config);

struct ModelBundle {
  PipelineConfig config;
  fp::PCAModel pca;
  // property -> kind name -> fitted model
  std::map<std::string, std::map<std::string, learn::ClassifierModel>> models;
  std::map<std::string, std::string> best;  // property -> kind name

  // Probability for one property under the configured predict_model.
  learn::Vector predict_proba(const std::string& property, const learn::Matrix& X) const;
  learn::Matrix features(const std::vector<const DatasetRecord*>& records) const;
};

// Count fingerprints of `rows` at the configured radius, vectorized and
// PCA-reduced to the configured variance target.
fp::PCAModel fit_feature_pca(const std::vector<const DatasetRecord*>& rows, const PipelineConfig& config);

// Eligible rows of one split.
std::vector<const DatasetRecord*> rows_in(const std::vector<DatasetRecord>& records, Split split);

// row index, canonical key, split, pc1..pcN
std::string format_features(const fp::PCAModel& pca, const std::vector<DatasetRecord>& records);

struct MetricsRow {
  std::string property;
  std::string model;  // kind name or "Ensemble"
  learn::MetricsReport report;
  double cv_accuracy = 0.0;  // NaN for the ensemble
  std::string hyperparameters;
};

struct TrainingResult {
  ModelBundle bundle;
  std::vector<MetricsRow> validation;
};

// Fingerprints + PCA on the eligible training rows, grid search per
// property and kind, refit, evaluation on the validation rows (10 kinds and
// one soft-voting ensemble per property). Throws InvalidArgument when a
// split is empty or single-class.
TrainingResult run_training(std::vector<DatasetRecord> records, const PipelineConfig& config);

// Evaluates every stored model and the ensembles on one split.
std::vector<MetricsRow> evaluate_bundle(const ModelBundle& bundle,
                                        const std::vector<DatasetRecord>& records, Split split);

std::string format_metrics(const std::vector<MetricsRow>& rows);

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& dir);
ModelBundle load_bundle(const std::filesystem::path& dir);

}  // namespace amine::pipeline
