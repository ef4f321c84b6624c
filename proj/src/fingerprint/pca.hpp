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

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fingerprint/fingerprint.hpp"

namespace amine::fp {

struct PCAModel {
  std::vector<std::string> vocabulary;
  Eigen::RowVectorXd mean;
  Eigen::MatrixXd components;  // n_components x n_features, orthonormal rows
  Eigen::VectorXd explained_variance;
  Eigen::VectorXd explained_variance_ratio;
  int fingerprint_radius = 2;
  int n_samples = 0;

  int n_components() const { return static_cast<int>(components.rows()); }
  int n_features() const { return static_cast<int>(components.cols()); }
};

// Centered SVD keeping the shortest prefix of components whose cumulative
// explained-variance ratio reaches `variance_target`. Each component's
// largest-magnitude entry is made positive. Throws DegenerateData if all
// rows are identical.
PCAModel fit_pca(const Eigen::MatrixXd& X, double variance_target,
                 std::vector<std::string> vocabulary = {});

Eigen::RowVectorXd transform(const PCAModel& model, const Eigen::RowVectorXd& row);
Eigen::RowVectorXd transform(const PCAModel& model, const CountFingerprint& fp);
Eigen::MatrixXd transform(const PCAModel& model, const Eigen::MatrixXd& X);

// Back to feature space (mean added back).
Eigen::RowVectorXd inverse_transform(const PCAModel& model,
                                     const Eigen::RowVectorXd& z);

std::string pca_to_json(const PCAModel& model);
PCAModel pca_from_json(const std::string& text);
void save_pca(const PCAModel& model, const std::filesystem::path& path);
PCAModel load_pca(const std::filesystem::path& path);

}  // namespace amine::fp
