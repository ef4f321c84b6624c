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

#include <vector>

namespace amine::learn {

struct Confusion {
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;

  int total() const { return tp + fp + tn + fn; }
};

struct MetricsReport {
  Confusion confusion;
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  // (sensitivity + specificity) / 2: the value the published tables label
  // "ROC AUC".
  double roc_auc_balanced = 0.0;
  // Mann-Whitney rank statistic over the probabilities; NaN when only one
  // class is present.
  double roc_auc_rank = 0.0;
  double mcc = 0.0;
  // Set when the MCC denominator vanished and 0 was reported instead.
  bool mcc_undefined = false;
};

// Metrics from counts alone (roc_auc_rank left NaN). Sensitivity or
// specificity with an empty denominator is NaN.
MetricsReport metrics_from_confusion(const Confusion& c);

// Confusion matrix at `y_pred`, rank AUC from `y_proba`. Throws
// LengthMismatch on unequal lengths and EmptyInput on empty input.
MetricsReport evaluate(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                       const std::vector<double>& y_proba);

// Mann-Whitney AUC; ties count one half.
double rank_auc(const std::vector<int>& y_true, const std::vector<double>& y_proba);

}  // namespace amine::learn
