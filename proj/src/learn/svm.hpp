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

#include "learn/classifier.hpp"

namespace amine::learn {

struct SvmKernel {
  std::string type = "rbf";  // linear, poly, rbf, sigmoid
  double gamma = 1.0;
  int degree = 3;
  double coef0 = 0.0;

  double operator()(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) const;
  Matrix matrix(const Matrix& A, const Matrix& B) const;
};

struct SvmSolution {
  Vector alpha;  // dual variables, 0 <= alpha <= C
  double rho = 0.0;
  int iterations = 0;
};

// C-SVC dual solved by SMO with second-order working-set selection.
// `labels` are +1/-1; `K` is the training Gram matrix.
SvmSolution solve_svc(const Matrix& K, const Vector& labels, double C, double eps = 1e-3);

// Platt sigmoid P(y=1|f) = 1 / (1 + exp(A f + B)) fitted by Newton's method
// with regularized targets. Returns {A, B}.
std::pair<double, double> fit_platt(const Vector& decision, const Labels& y);

class SupportVectorClassifier : public Classifier {
 public:
  explicit SupportVectorClassifier(const Json& params);
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

  Vector decision_function(const Matrix& X) const;

 private:
  double C_ = 1.0;
  std::string gamma_spec_ = "scale";
  SvmKernel kernel_;
  Matrix support_;
  Vector coef_;  // y_i alpha_i
  double rho_ = 0.0;
  double platt_a_ = 0.0;
  double platt_b_ = 0.0;
};

}  // namespace amine::learn
