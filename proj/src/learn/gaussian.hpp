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

#include <array>

#include "learn/classifier.hpp"

namespace amine::learn {

// Quadratic discriminant analysis. Class covariances are shrunk towards the
// identity: (1 - reg_param) * S + reg_param * I. Eigenvalues are floored so
// rank-deficient classes stay usable.
class QDAClassifier : public Classifier {
 public:
  explicit QDAClassifier(const Json& params) : params_(params) {}
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

 private:
  Json params_;
  std::array<Vector, 2> means_;
  std::array<Matrix, 2> rotations_;  // eigenvectors as columns
  std::array<Vector, 2> scalings_;   // regularized eigenvalues
  std::array<double, 2> log_priors_{};
};

// Gaussian naive Bayes with optional fixed class priors (class 0, class 1)
// and variance smoothing 1e-9 * the largest feature variance.
class GaussianNBClassifier : public Classifier {
 public:
  explicit GaussianNBClassifier(const Json& params) : params_(params) {}
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

 private:
  Json params_;
  std::array<Vector, 2> means_;
  std::array<Vector, 2> variances_;
  std::array<double, 2> log_priors_{};
};

}  // namespace amine::learn
