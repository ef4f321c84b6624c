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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace amine::learn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;
using Json = nlohmann::ordered_json;
using Rng = std::mt19937_64;

// Throws on shape mismatch, non-finite features, labels outside {0,1} or a
// single class.
void check_training_data(const Matrix& X, const Labels& y);

void check_features(const Matrix& X, Eigen::Index expected_columns);

// Derives an independent stream from a base seed and a salt (SplitMix64).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

double sigmoid(double z);

// Fold index in [0, k) for every sample. Each class is shuffled with its own
// seeded stream and dealt round-robin, continuing the count across classes.
std::vector<int> stratified_folds(const Labels& y, int k, std::uint64_t seed);

// Accessors for hyperparameter maps. A JSON null maps to nullopt.
std::optional<double> opt_number(const Json& params, const char* key);
std::optional<int> opt_int(const Json& params, const char* key);
double number_or(const Json& params, const char* key, double fallback);
int int_or(const Json& params, const char* key, int fallback);
std::string string_or(const Json& params, const char* key, std::string fallback);

// Matrix <-> JSON helpers for model files.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

}  // namespace amine::learn
