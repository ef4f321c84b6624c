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


#include "learn/linear.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace amine::learn {

LogisticRegressionClassifier::LogisticRegressionClassifier(const Json& params) {
  penalty_ = "l2";
  if (params.contains("penalty")) {
    penalty_ = params["penalty"].is_null() ? "none" : params["penalty"].get<std::string>();
  }
  if (penalty_ != "l1" && penalty_ != "l2" && penalty_ != "elasticnet" && penalty_ != "none") {
    throw Error(ErrorCode::kInvalidArgument, "LogisticRegression penalty must be l1, l2, elasticnet or none");
  }
  C_ = number_or(params, "C", 1.0);
  l1_ratio_ = number_or(params, "l1_ratio", 0.5);
  if (!(C_ > 0)) throw Error(ErrorCode::kInvalidArgument, "LogisticRegression C must be positive");
  if (l1_ratio_ < 0 || l1_ratio_ > 1) {
    throw Error(ErrorCode::kInvalidArgument, "LogisticRegression l1_ratio must lie in [0, 1]");
  }
}

void LogisticRegressionClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  check_training_data(X, y);
  const Eigen::Index n = X.rows(), p = X.cols();
  Matrix A(n, p + 1);
  A.leftCols(p) = X;
  A.col(p).setOnes();
  Vector t(n);
  for (Eigen::Index i = 0; i < n; ++i) t(i) = y[static_cast<std::size_t>(i)];

  double l1 = 0.0, l2 = 0.0;
  if (penalty_ == "l2") l2 = 1.0;
  if (penalty_ == "l1") l1 = 1.0;
  if (penalty_ == "elasticnet") {
    l1 = l1_ratio_;
    l2 = 1.0 - l1_ratio_;
  }

  const double sigma_max = Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
  const double lipschitz = C_ * sigma_max * sigma_max / 4.0 + l2;
  const double step = 1.0 / lipschitz;

  auto gradient = [&](const Vector& x) {
    const Vector pi = (A * x).unaryExpr([](double z) { return sigmoid(z); });
    Vector g = C_ * (A.transpose() * (pi - t));
    g.head(p) += l2 * x.head(p);
    return g;
  };
  auto prox = [&](Vector x) {
    const double thr = step * l1;
    if (thr > 0) {
      for (Eigen::Index j = 0; j < p; ++j) {
        const double v = x(j);
        x(j) = v > thr ? v - thr : (v < -thr ? v + thr : 0.0);
      }
    }
    return x;
  };

  Vector x = Vector::Zero(p + 1);
  Vector z = x;
  double tk = 1.0;
  for (int it = 0; it < 5000; ++it) {
    const Vector next = prox(z - step * gradient(z));
    const Vector diff = next - x;
    // Restart momentum when it points against the proximal step.
    if ((z - next).dot(diff) > 0) {
      tk = 1.0;
      z = next;
    } else {
      const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
      z = next + ((tk - 1.0) / tn) * diff;
      tk = tn;
    }
    x = next;
    if (diff.lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + x.lpNorm<Eigen::Infinity>())) break;
  }
  w_ = x.head(p);
  b_ = x(p);
}

Vector LogisticRegressionClassifier::predict_proba(const Matrix& X) const {
  check_features(X, w_.size());
  return ((X * w_).array() + b_).matrix().unaryExpr([](double z) { return sigmoid(z); });
}

Json LogisticRegressionClassifier::save() const {
  return {{"coefficients", vector_to_json(w_)}, {"intercept", b_}};
}

void LogisticRegressionClassifier::load(const Json& state) {
  w_ = vector_from_json(state.at("coefficients"));
  b_ = state.at("intercept").get<double>();
}

}  // namespace amine::learn
