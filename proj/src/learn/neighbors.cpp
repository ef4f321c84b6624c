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


#include "learn/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/error.hpp"

namespace amine::learn {

KNeighborsClassifier::KNeighborsClassifier(const Json& params) {
  k_ = int_or(params, "n_neighbors", 5);
  p_ = number_or(params, "p", 2.0);
  const std::string weights = string_or(params, "weights", "uniform");
  if (weights != "uniform" && weights != "distance") {
    throw Error(ErrorCode::kInvalidArgument, "kNN weights must be uniform or distance");
  }
  distance_weights_ = weights == "distance";
  if (k_ < 1) throw Error(ErrorCode::kInvalidArgument, "kNN n_neighbors must be positive");
  if (!(p_ >= 1)) throw Error(ErrorCode::kInvalidArgument, "kNN p must be >= 1");
}

void KNeighborsClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  check_training_data(X, y);
  X_ = X;
  y_ = y;
}

Vector KNeighborsClassifier::predict_proba(const Matrix& X) const {
  check_features(X, X_.cols());
  const Eigen::Index n = X_.rows();
  const int k = static_cast<int>(std::min<Eigen::Index>(k_, n));
  Vector out(X.rows());
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index q = 0; q < X.rows(); ++q) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto diff = (X_.row(i) - X.row(q)).array().abs();
      dist[static_cast<std::size_t>(i)] =
          p_ == 2.0 ? std::sqrt(diff.square().sum())
                    : (p_ == 1.0 ? diff.sum() : std::pow(diff.pow(p_).sum(), 1.0 / p_));
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
    });
    double pos = 0.0, total = 0.0;
    const bool exact = dist[static_cast<std::size_t>(order[0])] == 0.0;
    for (int r = 0; r < k; ++r) {
      const auto i = static_cast<std::size_t>(order[static_cast<std::size_t>(r)]);
      double w = 1.0;
      if (distance_weights_) {
        if (exact) {
          w = dist[i] == 0.0 ? 1.0 : 0.0;
        } else {
          w = 1.0 / dist[i];
        }
      }
      total += w;
      if (y_[i] == 1) pos += w;
    }
    out(q) = pos / total;
  }
  return out;
}

Json KNeighborsClassifier::save() const {
  return {{"X", matrix_to_json(X_)}, {"y", y_}};
}

void KNeighborsClassifier::load(const Json& state) {
  X_ = matrix_from_json(state.at("X"));
  y_ = state.at("y").get<Labels>();
  if (static_cast<Eigen::Index>(y_.size()) != X_.rows()) {
    throw Error(ErrorCode::kFormat, "kNN: inconsistent fitted state");
  }
}

}  // namespace amine::learn
