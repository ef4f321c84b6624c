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


#include "learn/boosting.hpp"

#include <cmath>

#include "common/error.hpp"

namespace amine::learn {

void AdaBoostClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  const int n_estimators = int_or(params_, "n_estimators", 50);
  const double learning_rate = number_or(params_, "learning_rate", 1.0);
  if (n_estimators < 1) throw Error(ErrorCode::kInvalidArgument, "n_estimators must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "learning_rate must be > 0");

  const Eigen::Index n = X.rows();
  Vector w = Vector::Constant(n, 1.0 / static_cast<double>(n));
  TreeParams stump;
  stump.max_depth = 1;
  stumps_.clear();
  weights_.clear();
  for (int m = 0; m < n_estimators; ++m) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(m)));
    DecisionTree tree;
    tree.fit(X, y, w, stump, rng);
    const Vector p = tree.predict_proba(X);
    double error = 0.0;
    std::vector<bool> wrong(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const int pred = p(i) >= 0.5 ? 1 : 0;
      wrong[static_cast<std::size_t>(i)] = pred != y[static_cast<std::size_t>(i)];
      if (wrong[static_cast<std::size_t>(i)]) error += w(i);
    }
    error /= w.sum();
    if (error <= 0.0) {
      // Perfect weak learner: keep it and stop.
      stumps_.push_back(std::move(tree));
      weights_.push_back(1.0);
      break;
    }
    if (error >= 0.5) {
      if (stumps_.empty()) {
        // No better-than-chance stump exists; keep one so predictions fall
        // back to the weighted majority.
        stumps_.push_back(std::move(tree));
        weights_.push_back(1.0);
      }
      break;
    }
    const double alpha = learning_rate * std::log((1.0 - error) / error);
    stumps_.push_back(std::move(tree));
    weights_.push_back(alpha);
    if (m + 1 == n_estimators) break;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (wrong[static_cast<std::size_t>(i)]) w(i) *= std::exp(alpha);
    }
    w /= w.sum();
  }
}

Vector AdaBoostClassifier::vote(const Matrix& X, std::size_t rounds) const {
  Vector score = Vector::Zero(X.rows());
  double total = 0.0;
  for (std::size_t m = 0; m < rounds; ++m) {
    const Vector p = stumps_[m].predict_proba(X);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      score(i) += weights_[m] * (p(i) >= 0.5 ? 1.0 : -1.0);
    }
    total += weights_[m];
  }
  Vector proba(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) proba(i) = sigmoid(score(i) / total);
  return proba;
}

Vector AdaBoostClassifier::predict_proba(const Matrix& X) const {
  return vote(X, stumps_.size());
}

std::vector<Labels> AdaBoostClassifier::staged_predict(const Matrix& X) const {
  std::vector<Labels> out;
  for (std::size_t m = 1; m <= stumps_.size(); ++m) out.push_back(threshold(vote(X, m)));
  return out;
}

Json AdaBoostClassifier::save() const {
  Json stumps = Json::array();
  for (const auto& s : stumps_) stumps.push_back(s.save());
  return Json{{"estimator_weights", weights_}, {"estimators", std::move(stumps)}};
}

void AdaBoostClassifier::load(const Json& state) {
  weights_ = state.at("estimator_weights").get<std::vector<double>>();
  stumps_.clear();
  for (const auto& s : state.at("estimators")) {
    stumps_.emplace_back();
    stumps_.back().load(s);
  }
  if (stumps_.empty() || stumps_.size() != weights_.size()) {
    throw Error(ErrorCode::kFormat, "inconsistent boosting state");
  }
}

}  // namespace amine::learn
