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

// k-nearest neighbours under the Minkowski p-distance. With "distance"
// weights a neighbour counts 1/d; neighbours at distance zero take all the
// weight. Ties in distance keep training order.
class KNeighborsClassifier : public Classifier {
 public:
  explicit KNeighborsClassifier(const Json& params);
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

 private:
  int k_ = 5;
  double p_ = 2.0;
  bool distance_weights_ = false;
  Matrix X_;
  Labels y_;
};

}  // namespace amine::learn
