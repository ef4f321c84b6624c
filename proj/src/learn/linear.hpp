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

#include "learn/classifier.hpp"

namespace amine::learn {

// Binary logistic regression minimizing
//   C * sum(log-loss) + penalty(w)
// with an unpenalized intercept. Penalties: l2 (|w|^2 / 2), l1 (|w|_1),
// elasticnet (r |w|_1 + (1 - r) |w|^2 / 2) and none. Solved with
// accelerated proximal gradient (FISTA) and gradient-based restarts.
class LogisticRegressionClassifier : public Classifier {
 public:
  explicit LogisticRegressionClassifier(const Json& params);
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

  const Vector& coefficients() const { return w_; }
  double intercept() const { return b_; }

 private:
  std::string penalty_;
  double C_ = 1.0;
  double l1_ratio_ = 0.5;
  Vector w_;
  double b_ = 0.0;
};

}  // namespace amine::learn
