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


#include "learn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "common/error.hpp"

namespace amine::learn {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(int num, int den) {
  return den == 0 ? kNaN : static_cast<double>(num) / den;
}

}  // namespace

MetricsReport metrics_from_confusion(const Confusion& c) {
  MetricsReport r;
  r.confusion = c;
  r.accuracy = ratio(c.tp + c.tn, c.total());
  r.sensitivity = ratio(c.tp, c.tp + c.fn);
  r.specificity = ratio(c.tn, c.tn + c.fp);
  r.roc_auc_balanced = (r.sensitivity + r.specificity) / 2.0;
  r.roc_auc_rank = kNaN;
  const double den = std::sqrt(static_cast<double>(c.tp + c.fp) * (c.tp + c.fn) *
                               (c.tn + c.fp) * (c.tn + c.fn));
  if (den == 0.0) {
    r.mcc = 0.0;
    r.mcc_undefined = true;
  } else {
    r.mcc = (static_cast<double>(c.tp) * c.tn - static_cast<double>(c.fp) * c.fn) / den;
  }
  return r;
}

double rank_auc(const std::vector<int>& y_true, const std::vector<double>& y_proba) {
  if (y_true.size() != y_proba.size()) {
    throw Error(ErrorCode::kLengthMismatch, "labels and probabilities differ in length");
  }
  const std::size_t n = y_true.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return y_proba[a] < y_proba[b]; });
  // Average ranks over tie groups.
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && y_proba[order[j + 1]] == y_proba[order[i]]) ++j;
    const double average = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = average;
    i = j + 1;
  }
  double positive_rank_sum = 0.0;
  double n_pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (y_true[i] == 1) {
      positive_rank_sum += rank[i];
      n_pos += 1.0;
    }
  }
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) return kNaN;
  return (positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

MetricsReport evaluate(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                       const std::vector<double>& y_proba) {
  if (y_true.size() != y_pred.size() || y_true.size() != y_proba.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("lengths differ: {} labels, {} predictions, {} probabilities",
                            y_true.size(), y_pred.size(), y_proba.size()));
  }
  if (y_true.empty()) throw Error(ErrorCode::kEmptyInput, "nothing to evaluate");
  Confusion c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool truth = y_true[i] == 1;
    const bool pred = y_pred[i] == 1;
    if (truth && pred) ++c.tp;
    if (truth && !pred) ++c.fn;
    if (!truth && pred) ++c.fp;
    if (!truth && !pred) ++c.tn;
  }
  MetricsReport r = metrics_from_confusion(c);
  r.roc_auc_rank = rank_auc(y_true, y_proba);
  return r;
}

}  // namespace amine::learn
