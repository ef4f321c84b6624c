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


#include "fingerprint/pca.hpp"

#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "json.hpp"

namespace amine::fp {
namespace {

constexpr const char* kFormat = "aminescreen.pca";
constexpr int kVersion = 1;

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd from_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_width(const PCAModel& model, Eigen::Index cols) {
  if (cols != model.components.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("expected {} features, got {}", model.components.cols(), cols));
  }
}

}  // namespace

PCAModel fit_pca(const Eigen::MatrixXd& X, double variance_target,
                 std::vector<std::string> vocabulary) {
  if (!(variance_target > 0.0 && variance_target <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "variance target must lie in (0, 1]");
  }
  if (X.rows() < 2) {
    throw Error(ErrorCode::kDegenerateData, "PCA needs at least two rows");
  }
  if (!vocabulary.empty() && static_cast<Eigen::Index>(vocabulary.size()) != X.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "vocabulary size differs from column count");
  }
  if (!X.allFinite()) throw Error(ErrorCode::kNonFiniteFeature, "non-finite PCA input");

  PCAModel model;
  model.vocabulary = std::move(vocabulary);
  model.n_samples = static_cast<int>(X.rows());
  model.mean = X.colwise().mean();
  const Eigen::MatrixXd centered = X.rowwise() - model.mean;
  if (centered.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::kDegenerateData, "all rows are identical");
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  const Eigen::VectorXd variance = s.array().square() / static_cast<double>(X.rows() - 1);
  const double total = variance.sum();
  const Eigen::VectorXd ratio = variance / total;

  // Tolerance absorbs rounding in the cumulative sum when the target is 1.
  Eigen::Index k = 0;
  double cumulative = 0.0;
  while (k < ratio.size()) {
    cumulative += ratio(k);
    ++k;
    if (cumulative >= variance_target - 1e-12) break;
  }

  model.components = svd.matrixV().leftCols(k).transpose();
  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::Index arg = 0;
    model.components.row(i).cwiseAbs().maxCoeff(&arg);
    if (model.components(i, arg) < 0) model.components.row(i) *= -1.0;
  }
  model.explained_variance = variance.head(k);
  model.explained_variance_ratio = ratio.head(k);
  return model;
}

Eigen::RowVectorXd transform(const PCAModel& model, const Eigen::RowVectorXd& row) {
  check_width(model, row.size());
  return (row - model.mean) * model.components.transpose();
}

Eigen::RowVectorXd transform(const PCAModel& model, const CountFingerprint& fp) {
  return transform(model, dense_row(fp, model.vocabulary));
}

Eigen::MatrixXd transform(const PCAModel& model, const Eigen::MatrixXd& X) {
  check_width(model, X.cols());
  return (X.rowwise() - model.mean) * model.components.transpose();
}

Eigen::RowVectorXd inverse_transform(const PCAModel& model,
                                     const Eigen::RowVectorXd& z) {
  if (z.size() != model.components.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "component count mismatch");
  }
  return z * model.components + model.mean;
}

std::string pca_to_json(const PCAModel& model) {
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["fingerprint_radius"] = model.fingerprint_radius;
  j["n_samples"] = model.n_samples;
  j["vocabulary"] = model.vocabulary;
  j["mean"] = to_vector(model.mean.transpose());
  j["explained_variance"] = to_vector(model.explained_variance);
  j["explained_variance_ratio"] = to_vector(model.explained_variance_ratio);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < model.components.rows(); ++i) {
    rows.push_back(to_vector(model.components.row(i).transpose()));
  }
  j["components"] = std::move(rows);
  return j.dump(1);
}

PCAModel pca_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      throw Error(ErrorCode::kFormat, "not a PCA model file");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw Error(ErrorCode::kFormat,
                  fmt::format("unsupported PCA model version {}", j.at("version").get<int>()));
    }
    PCAModel model;
    model.fingerprint_radius = j.at("fingerprint_radius").get<int>();
    model.n_samples = j.at("n_samples").get<int>();
    model.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    model.mean = from_vector(j.at("mean").get<std::vector<double>>()).transpose();
    model.explained_variance = from_vector(j.at("explained_variance").get<std::vector<double>>());
    model.explained_variance_ratio =
        from_vector(j.at("explained_variance_ratio").get<std::vector<double>>());
    const auto rows = j.at("components").get<std::vector<std::vector<double>>>();
    model.components.resize(static_cast<Eigen::Index>(rows.size()), model.mean.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != model.mean.size()) {
        throw Error(ErrorCode::kFormat, "component row width differs from mean");
      }
      model.components.row(static_cast<Eigen::Index>(i)) = from_vector(rows[i]).transpose();
    }
    if (static_cast<Eigen::Index>(model.vocabulary.size()) != model.mean.size()) {
      throw Error(ErrorCode::kFormat, "vocabulary size differs from mean");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, fmt::format("bad PCA model file: {}", e.what()));
  }
}

void save_pca(const PCAModel& model, const std::filesystem::path& path) {
  csv::write_file(path, pca_to_json(model) + "\n");
}

PCAModel load_pca(const std::filesystem::path& path) {
  return pca_from_json(csv::read_text(path));
}

}  // namespace amine::fp
