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


#include "learn/common.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "common/error.hpp"

namespace amine::learn {

void check_training_data(const Matrix& X, const Labels& y) {
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("{} feature rows but {} labels", X.rows(), y.size()));
  }
  if (X.rows() == 0 || X.cols() == 0) {
    throw Error(ErrorCode::kEmptyInput, "empty training matrix");
  }
  if (!X.allFinite()) throw Error(ErrorCode::kNonFiniteFeature, "non-finite feature value");
  bool seen[2] = {false, false};
  for (int label : y) {
    if (label != 0 && label != 1) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("label {} is not 0/1", label));
    }
    seen[label] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw Error(ErrorCode::kSingleClassTraining, "training labels contain one class only");
  }
}

void check_features(const Matrix& X, Eigen::Index expected_columns) {
  if (X.cols() != expected_columns) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("expected {} features, got {}", expected_columns, X.cols()));
  }
  if (!X.allFinite()) throw Error(ErrorCode::kNonFiniteFeature, "non-finite feature value");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::optional<double> opt_number(const Json& params, const char* key) {
  const auto it = params.find(key);
  if (it == params.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("hyperparameter {} must be numeric", key));
  }
  return it->get<double>();
}

std::optional<int> opt_int(const Json& params, const char* key) {
  const auto value = opt_number(params, key);
  if (!value) return std::nullopt;
  if (*value != std::floor(*value)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("hyperparameter {} must be an integer", key));
  }
  return static_cast<int>(*value);
}

double number_or(const Json& params, const char* key, double fallback) {
  return opt_number(params, key).value_or(fallback);
}

int int_or(const Json& params, const char* key, int fallback) {
  return opt_int(params, key).value_or(fallback);
}

std::string string_or(const Json& params, const char* key, std::string fallback) {
  const auto it = params.find(key);
  if (it == params.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("hyperparameter {} must be a string", key));
  }
  return it->get<std::string>();
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  Matrix m(rows, cols);
  const Json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows) {
    throw Error(ErrorCode::kFormat, "matrix row count mismatch");
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = data.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::kFormat, "matrix column count mismatch");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

std::vector<int> stratified_folds(const Labels& y, int k, std::uint64_t seed) {
  std::vector<int> fold(y.size(), 0);
  int next = 0;
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) idx.push_back(i);
    }
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(cls)));
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i : idx) fold[i] = next++ % k;
  }
  return fold;
}

}  // namespace amine::learn
