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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "learn/common.hpp"

namespace amine::learn {

enum class Kind {
  kDecisionTree,
  kQDA,
  kGaussianNB,
  kGaussianProcess,
  kAdaBoost,
  kMLP,
  kExtraTrees,
  kLogisticRegression,
  kKNearestNeighbors,
  kSupportVector,
};

const std::vector<Kind>& all_kinds();
std::string_view kind_name(Kind kind);
// Accepts the canonical names plus the labels used in the published grid
// listings (DNN, ExtraTreesClassifier, Logistic_Regression, ...).
Kind parse_kind(std::string_view name);

// Hyperparameter names accepted for a kind.
const std::vector<std::string>& hyperparameter_names(Kind kind);

struct ClassifierSpec {
  Kind kind = Kind::kDecisionTree;
  Json hyperparameters = Json::object();
};

// Throws InvalidArgument for unknown keys.
void validate_spec(const ClassifierSpec& spec);

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const Matrix& X, const Labels& y, std::uint64_t seed) = 0;
  // Probability of class 1 for each row.
  virtual Vector predict_proba(const Matrix& X) const = 0;
  virtual Json save() const = 0;
  virtual void load(const Json& state) = 0;
};

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec);

// A fitted classifier with its spec and training metadata. Immutable after
// fit; copies share the fitted state.
class ClassifierModel {
 public:
  static ClassifierModel fit(const ClassifierSpec& spec, const Matrix& X,
                             const Labels& y, std::uint64_t seed = 0);

  Vector predict_proba(const Matrix& X) const;
  double predict_proba(const Eigen::RowVectorXd& x) const;
  // 1 iff probability >= 0.5.
  Labels predict(const Matrix& X) const;

  const ClassifierSpec& spec() const { return spec_; }
  int n_samples() const { return n_samples_; }
  int n_features() const { return n_features_; }
  // Fraction of positive training labels.
  double class_prior() const { return class_prior_; }

  std::string to_json() const;
  static ClassifierModel from_json(const std::string& text);

 private:
  ClassifierSpec spec_;
  std::shared_ptr<const Classifier> impl_;
  int n_samples_ = 0;
  int n_features_ = 0;
  double class_prior_ = 0.0;
};

// Soft vote: mean of member probabilities.
class VotingEnsemble {
 public:
  explicit VotingEnsemble(std::vector<ClassifierModel> members);

  Vector predict_proba(const Matrix& X) const;
  Labels predict(const Matrix& X) const;
  const std::vector<ClassifierModel>& members() const { return members_; }

 private:
  std::vector<ClassifierModel> members_;
};

Labels threshold(const Vector& proba);

}  // namespace amine::learn
