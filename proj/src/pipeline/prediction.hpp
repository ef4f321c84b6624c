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

#include <string>
#include <vector>

#include "pipeline/training.hpp"

namespace amine::pipeline {

// Quadrants of the P(capacity) x P(rate) plane, 0.5 counting as positive:
// B both, D capacity only, A rate only, C neither.
char quadrant(double p_capacity, double p_rate);

struct Prediction {
  std::string smiles;
  std::string key;
  std::string name;
  double p_capacity = 0.0;
  double p_rate = 0.0;
  char quadrant = 'C';
  double score = 0.0;  // p_capacity * p_rate
  int rank = 0;        // 1 = highest score; ties broken by canonical key
};

// Eligible records only, in input order.
std::vector<Prediction> run_prediction(const ModelBundle& bundle,
                                       const std::vector<DatasetRecord>& records);

// Rank 1 = highest score, ties by canonical key.
void assign_ranks(std::vector<Prediction>& predictions);
// Ranked copy in rank order.
std::vector<Prediction> ranked(std::vector<Prediction> predictions);

std::string format_predictions(const std::vector<Prediction>& predictions);

// Static scatter of the two probabilities with the 0.5 dividers.
std::string scatter_svg(const std::vector<Prediction>& predictions);

// Markdown summary of a run directory's metrics and predictions.
std::string render_report(const std::vector<MetricsRow>& validation,
                          const std::vector<MetricsRow>& test,
                          const std::vector<Prediction>& predictions,
                          const std::map<std::string, std::string>& best);

}  // namespace amine::pipeline
