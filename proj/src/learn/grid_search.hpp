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
#include <utility>
#include <vector>

#include "learn/classifier.hpp"

namespace amine::learn {

// One kind's search space: parameter -> candidate values, in file order.
struct Grid {
  Kind kind = Kind::kDecisionTree;
  std::vector<std::pair<std::string, std::vector<Json>>> axes;
};

// Reads {"<kind>": {"<param>": [values...]}, ...}. Kind names may use any
// alias accepted by parse_kind; parameter names are checked against the
// kind's vocabulary.
std::vector<Grid> grids_from_json(const Json& j);

// Cartesian product of the axes, last axis varying fastest. An empty grid
// yields a single empty point.
std::vector<Json> expand_grid(const Grid& grid);

struct GridPointScore {
  Json hyperparameters;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct GridSearchResult {
  ClassifierSpec best;
  double best_score = 0.0;
  int folds_used = 0;
  std::vector<GridPointScore> scores;  // grid order
};

struct GridSearchOptions {
  int folds = 10;
  std::uint64_t seed = 0;
  // Worker threads; 0 uses the hardware concurrency. Results do not depend
  // on the thread count.
  unsigned threads = 0;
};

// Exhaustive stratified k-fold search maximizing mean validation accuracy;
// the earliest grid point wins ties. When folds exceed the minority class
// count they are reduced to it with a warning.
GridSearchResult grid_search_cv(const Grid& grid, const Matrix& X, const Labels& y,
                                const GridSearchOptions& options = {});

}  // namespace amine::learn
