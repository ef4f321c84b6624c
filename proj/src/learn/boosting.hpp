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

#include "learn/tree.hpp"

namespace amine::learn {

// Two-class SAMME boosting of depth-1 trees. Probability is
// sigmoid(sum_m a_m h_m(x) / sum_m a_m) with h in {-1, +1}.
class AdaBoostClassifier : public Classifier {
 public:
  explicit AdaBoostClassifier(const Json& params) : params_(params) {}
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

  // Class predictions after each boosting round.
  std::vector<Labels> staged_predict(const Matrix& X) const;
  int n_rounds() const { return static_cast<int>(stumps_.size()); }

 private:
  Vector vote(const Matrix& X, std::size_t rounds) const;

  Json params_;
  std::vector<DecisionTree> stumps_;
  std::vector<double> weights_;
};

}  // namespace amine::learn
