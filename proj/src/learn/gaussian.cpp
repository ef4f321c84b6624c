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


#include "learn/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "common/error.hpp"

namespace amine::learn {
namespace {

constexpr double kVarSmoothing = 1e-9;
constexpr double kEigenFloor = 1e-10;

std::array<std::vector<Eigen::Index>, 2> split_by_class(const Labels& y) {
  std::array<std::vector<Eigen::Index>, 2> out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[static_cast<std::size_t>(y[i])].push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

Matrix rows_of(const Matrix& X, const std::vector<Eigen::Index>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), X.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = X.row(idx[i]);
  return out;
}

// Softmax of two log scores, returning the class-1 share.
double two_class_softmax(double s0, double s1) { return sigmoid(s1 - s0); }

}  // namespace

void QDAClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  const double reg = number_or(params_, "reg_param", 0.0);
  if (reg < 0.0 || reg > 1.0) throw Error(ErrorCode::kInvalidArgument, "reg_param must lie in [0, 1]");
  const auto groups = split_by_class(y);
  for (int k = 0; k < 2; ++k) {
    const Matrix Xk = rows_of(X, groups[static_cast<std::size_t>(k)]);
    if (Xk.rows() < 2) {
      throw Error(ErrorCode::kDegenerateData, "QDA needs at least two samples per class");
    }
    means_[k] = Xk.colwise().mean().transpose();
    const Matrix centered = Xk.rowwise() - means_[k].transpose();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(Xk.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    Vector values = ((1.0 - reg) * eig.eigenvalues().array() + reg).matrix();
    const double floor = kEigenFloor * std::max(1.0, values.maxCoeff());
    values = values.cwiseMax(floor);
    rotations_[k] = eig.eigenvectors();
    scalings_[k] = values;
    log_priors_[k] = std::log(static_cast<double>(Xk.rows()) / static_cast<double>(X.rows()));
  }
}

Vector QDAClassifier::predict_proba(const Matrix& X) const {
  check_features(X, means_[0].size());
  std::array<Vector, 2> score;
  for (int k = 0; k < 2; ++k) {
    const Matrix projected = (X.rowwise() - means_[k].transpose()) * rotations_[k];
    const Vector mahalanobis =
        (projected.array().square().rowwise() / scalings_[k].transpose().array()).rowwise().sum();
    const double log_det = scalings_[k].array().log().sum();
    score[k] = (-0.5 * (mahalanobis.array() + log_det) + log_priors_[k]).matrix();
  }
  Vector out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out(i) = two_class_softmax(score[0](i), score[1](i));
  return out;
}

Json QDAClassifier::save() const {
  Json classes = Json::array();
  for (int k = 0; k < 2; ++k) {
    classes.push_back(Json{{"mean", vector_to_json(means_[k])},
                           {"rotation", matrix_to_json(rotations_[k])},
                           {"scaling", vector_to_json(scalings_[k])},
                           {"log_prior", log_priors_[k]}});
  }
  return Json{{"classes", std::move(classes)}};
}

void QDAClassifier::load(const Json& state) {
  for (int k = 0; k < 2; ++k) {
    const Json& c = state.at("classes").at(static_cast<std::size_t>(k));
    means_[k] = vector_from_json(c.at("mean"));
    rotations_[k] = matrix_from_json(c.at("rotation"));
    scalings_[k] = vector_from_json(c.at("scaling"));
    log_priors_[k] = c.at("log_prior").get<double>();
  }
}

void GaussianNBClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  const auto groups = split_by_class(y);
  const Vector overall_mean = X.colwise().mean().transpose();
  const double max_variance =
      ((X.rowwise() - overall_mean.transpose()).array().square().colwise().sum() /
       static_cast<double>(X.rows()))
          .maxCoeff();
  const double epsilon = kVarSmoothing * max_variance;

  std::array<double, 2> priors{};
  const auto it = params_.find("priors");
  if (it != params_.end() && !it->is_null()) {
    const auto values = it->get<std::vector<double>>();
    if (values.size() != 2 || values[0] < 0 || values[1] < 0 ||
        std::abs(values[0] + values[1] - 1.0) > 1e-6) {
      throw Error(ErrorCode::kInvalidArgument, "priors must be two non-negative values summing to 1");
    }
    priors = {values[0], values[1]};
  } else {
    for (int k = 0; k < 2; ++k) {
      priors[static_cast<std::size_t>(k)] =
          static_cast<double>(groups[static_cast<std::size_t>(k)].size()) / static_cast<double>(X.rows());
    }
  }
  for (int k = 0; k < 2; ++k) {
    const Matrix Xk = rows_of(X, groups[static_cast<std::size_t>(k)]);
    means_[k] = Xk.colwise().mean().transpose();
    variances_[k] = ((Xk.rowwise() - means_[k].transpose()).array().square().colwise().sum() /
                     static_cast<double>(Xk.rows()))
                        .transpose()
                        .matrix();
    variances_[k].array() += epsilon;
    log_priors_[k] = std::log(priors[static_cast<std::size_t>(k)]);
  }
  if (!(variances_[0].minCoeff() > 0.0) || !(variances_[1].minCoeff() > 0.0)) {
    throw Error(ErrorCode::kDegenerateData, "all features are constant");
  }
}

Vector GaussianNBClassifier::predict_proba(const Matrix& X) const {
  check_features(X, means_[0].size());
  std::array<Vector, 2> score;
  for (int k = 0; k < 2; ++k) {
    const double norm = -0.5 * (2.0 * std::numbers::pi * variances_[k].array()).log().sum();
    const Vector quad = ((X.rowwise() - means_[k].transpose()).array().square().rowwise() /
                         variances_[k].transpose().array())
                            .rowwise()
                            .sum();
    score[k] = (norm - 0.5 * quad.array() + log_priors_[k]).matrix();
  }
  Vector out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out(i) = two_class_softmax(score[0](i), score[1](i));
  return out;
}

Json GaussianNBClassifier::save() const {
  Json classes = Json::array();
  for (int k = 0; k < 2; ++k) {
    classes.push_back(Json{{"mean", vector_to_json(means_[k])},
                           {"variance", vector_to_json(variances_[k])},
                           {"log_prior", log_priors_[k]}});
  }
  return Json{{"classes", std::move(classes)}};
}

void GaussianNBClassifier::load(const Json& state) {
  for (int k = 0; k < 2; ++k) {
    const Json& c = state.at("classes").at(static_cast<std::size_t>(k));
    means_[k] = vector_from_json(c.at("mean"));
    variances_[k] = vector_from_json(c.at("variance"));
    log_priors_[k] = c.at("log_prior").get<double>();
  }
}

}  // namespace amine::learn
