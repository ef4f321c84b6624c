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


#include "learn/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "common/error.hpp"
#include "learn/boosting.hpp"
#include "learn/gaussian.hpp"
#include "learn/gaussian_process.hpp"
#include "learn/linear.hpp"
#include "learn/mlp.hpp"
#include "learn/neighbors.hpp"
#include "learn/svm.hpp"
#include "learn/tree.hpp"

namespace amine::learn {
namespace {

constexpr char kModelFormat[] = "aminescreen.model";
constexpr int kModelVersion = 1;

std::string normalize(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '_' || c == ' ' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds{
      Kind::kDecisionTree, Kind::kQDA,        Kind::kGaussianNB,         Kind::kGaussianProcess,
      Kind::kAdaBoost,     Kind::kMLP,        Kind::kExtraTrees,         Kind::kLogisticRegression,
      Kind::kKNearestNeighbors, Kind::kSupportVector};
  return kinds;
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::kDecisionTree: return "DecisionTree";
    case Kind::kQDA: return "QDA";
    case Kind::kGaussianNB: return "GaussianNB";
    case Kind::kGaussianProcess: return "GaussianProcess";
    case Kind::kAdaBoost: return "AdaBoost";
    case Kind::kMLP: return "MLP";
    case Kind::kExtraTrees: return "ExtraTrees";
    case Kind::kLogisticRegression: return "LogisticRegression";
    case Kind::kKNearestNeighbors: return "KNearestNeighbors";
    case Kind::kSupportVector: return "SupportVector";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  static const std::map<std::string, Kind> aliases{
      {"decisiontree", Kind::kDecisionTree},
      {"decisiontreeclassifier", Kind::kDecisionTree},
      {"dt", Kind::kDecisionTree},
      {"qda", Kind::kQDA},
      {"quadraticdiscriminantanalysis", Kind::kQDA},
      {"gaussiannb", Kind::kGaussianNB},
      {"naivebayes", Kind::kGaussianNB},
      {"gaussianprocess", Kind::kGaussianProcess},
      {"gaussianprocessclassifier", Kind::kGaussianProcess},
      {"gp", Kind::kGaussianProcess},
      {"adaboost", Kind::kAdaBoost},
      {"adaboostclassifier", Kind::kAdaBoost},
      {"mlp", Kind::kMLP},
      {"mlpclassifier", Kind::kMLP},
      {"dnn", Kind::kMLP},
      {"extratrees", Kind::kExtraTrees},
      {"extratreesclassifier", Kind::kExtraTrees},
      {"logisticregression", Kind::kLogisticRegression},
      {"knearestneighbors", Kind::kKNearestNeighbors},
      {"kneighborsclassifier", Kind::kKNearestNeighbors},
      {"nearestneighbours", Kind::kKNearestNeighbors},
      {"nearestneighbors", Kind::kKNearestNeighbors},
      {"knn", Kind::kKNearestNeighbors},
      {"supportvector", Kind::kSupportVector},
      {"svc", Kind::kSupportVector},
      {"svm", Kind::kSupportVector},
  };
  const auto it = aliases.find(normalize(name));
  if (it == aliases.end()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown classifier kind '{}'", name));
  }
  return it->second;
}

const std::vector<std::string>& hyperparameter_names(Kind kind) {
  static const std::map<Kind, std::vector<std::string>> names{
      {Kind::kDecisionTree, {"max_depth", "max_features", "max_leaf_nodes", "min_impurity_decrease"}},
      {Kind::kQDA, {"reg_param"}},
      {Kind::kGaussianNB, {"priors"}},
      {Kind::kGaussianProcess, {"kernel"}},
      {Kind::kAdaBoost, {"n_estimators", "learning_rate"}},
      {Kind::kMLP, {"alpha", "batch_size", "hidden_layer_sizes", "learning_rate"}},
      {Kind::kExtraTrees, {"max_depth", "n_estimators", "max_features"}},
      {Kind::kLogisticRegression, {"penalty", "C", "l1_ratio"}},
      {Kind::kKNearestNeighbors, {"n_neighbors", "p", "weights"}},
      {Kind::kSupportVector, {"kernel", "C", "gamma", "degree"}},
  };
  return names.at(kind);
}

void validate_spec(const ClassifierSpec& spec) {
  if (!spec.hyperparameters.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "hyperparameters must be a JSON object");
  }
  const auto& allowed = hyperparameter_names(spec.kind);
  for (const auto& item : spec.hyperparameters.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("{} does not take hyperparameter '{}'", kind_name(spec.kind), item.key()));
    }
  }
}

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec) {
  validate_spec(spec);
  const Json& p = spec.hyperparameters;
  switch (spec.kind) {
    case Kind::kDecisionTree: return std::make_unique<DecisionTreeClassifier>(p);
    case Kind::kQDA: return std::make_unique<QDAClassifier>(p);
    case Kind::kGaussianNB: return std::make_unique<GaussianNBClassifier>(p);
    case Kind::kGaussianProcess: return std::make_unique<GaussianProcessClassifier>(p);
    case Kind::kAdaBoost: return std::make_unique<AdaBoostClassifier>(p);
    case Kind::kMLP: return std::make_unique<MLPClassifier>(p);
    case Kind::kExtraTrees: return std::make_unique<ExtraTreesClassifier>(p);
    case Kind::kLogisticRegression: return std::make_unique<LogisticRegressionClassifier>(p);
    case Kind::kKNearestNeighbors: return std::make_unique<KNeighborsClassifier>(p);
    case Kind::kSupportVector: return std::make_unique<SupportVectorClassifier>(p);
  }
  throw Error(ErrorCode::kInternal, "unhandled classifier kind");
}

ClassifierModel ClassifierModel::fit(const ClassifierSpec& spec, const Matrix& X, const Labels& y,
                                     std::uint64_t seed) {
  check_training_data(X, y);
  auto impl = make_classifier(spec);
  impl->fit(X, y, seed);
  ClassifierModel m;
  m.spec_ = spec;
  m.n_samples_ = static_cast<int>(X.rows());
  m.n_features_ = static_cast<int>(X.cols());
  m.class_prior_ = static_cast<double>(std::count(y.begin(), y.end(), 1)) / static_cast<double>(y.size());
  m.impl_ = std::move(impl);
  return m;
}

Vector ClassifierModel::predict_proba(const Matrix& X) const {
  if (!impl_) throw Error(ErrorCode::kInvalidArgument, "model is not fitted");
  check_features(X, n_features_);
  Vector p = impl_->predict_proba(X);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i))) throw Error(ErrorCode::kInternal, "non-finite probability");
    p(i) = std::clamp(p(i), 0.0, 1.0);
  }
  return p;
}

double ClassifierModel::predict_proba(const Eigen::RowVectorXd& x) const {
  return predict_proba(Matrix(x))(0);
}

Labels ClassifierModel::predict(const Matrix& X) const { return threshold(predict_proba(X)); }

std::string ClassifierModel::to_json() const {
  if (!impl_) throw Error(ErrorCode::kInvalidArgument, "model is not fitted");
  Json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["kind"] = kind_name(spec_.kind);
  j["hyperparameters"] = spec_.hyperparameters;
  j["n_samples"] = n_samples_;
  j["n_features"] = n_features_;
  j["class_prior"] = class_prior_;
  j["state"] = impl_->save();
  return j.dump();
}

ClassifierModel ClassifierModel::from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kFormat, fmt::format("model file: {}", e.what()));
  }
  if (j.value("format", "") != kModelFormat) throw Error(ErrorCode::kFormat, "not a model file");
  if (j.value("version", 0) != kModelVersion) {
    throw Error(ErrorCode::kFormat, fmt::format("unsupported model version {}", j.value("version", 0)));
  }
  try {
    ClassifierModel m;
    m.spec_.kind = parse_kind(j.at("kind").get<std::string>());
    m.spec_.hyperparameters = j.at("hyperparameters");
    auto impl = make_classifier(m.spec_);
    impl->load(j.at("state"));
    m.n_samples_ = j.at("n_samples").get<int>();
    m.n_features_ = j.at("n_features").get<int>();
    m.class_prior_ = j.at("class_prior").get<double>();
    m.impl_ = std::move(impl);
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, fmt::format("model file: {}", e.what()));
  }
}

VotingEnsemble::VotingEnsemble(std::vector<ClassifierModel> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::kEmptyInput, "ensemble needs at least one member");
  for (const auto& m : members_) {
    if (m.n_features() != members_.front().n_features()) {
      throw Error(ErrorCode::kDimensionMismatch, "ensemble members disagree on feature count");
    }
  }
}

Vector VotingEnsemble::predict_proba(const Matrix& X) const {
  Vector sum = Vector::Zero(X.rows());
  for (const auto& m : members_) sum += m.predict_proba(X);
  return sum / static_cast<double>(members_.size());
}

Labels VotingEnsemble::predict(const Matrix& X) const { return threshold(predict_proba(X)); }

Labels threshold(const Vector& proba) {
  Labels out(static_cast<std::size_t>(proba.size()));
  for (Eigen::Index i = 0; i < proba.size(); ++i) out[static_cast<std::size_t>(i)] = proba(i) >= 0.5 ? 1 : 0;
  return out;
}

}  // namespace amine::learn
