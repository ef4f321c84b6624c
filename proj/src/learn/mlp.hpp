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

#include "learn/classifier.hpp"

namespace amine::learn {

// Feed-forward network: ReLU hidden layers, one logistic output unit,
// trained on log-loss plus an L2 penalty with mini-batch SGD and Nesterov
// momentum.
class MLPClassifier : public Classifier {
 public:
  explicit MLPClassifier(const Json& params);
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

  int epochs_run() const { return epochs_; }
  const std::vector<double>& loss_curve() const { return loss_curve_; }

 private:
  double alpha_ = 1e-4;
  std::optional<int> batch_size_;
  std::vector<int> hidden_;
  bool adaptive_ = false;
  std::vector<Matrix> weights_;  // in x out
  std::vector<Vector> biases_;
  int epochs_ = 0;
  std::vector<double> loss_curve_;
};

}  // namespace amine::learn
