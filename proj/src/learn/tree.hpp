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

#include <optional>
#include <vector>

#include "learn/classifier.hpp"

namespace amine::learn {

struct TreeParams {
  std::optional<int> max_depth;
  // Features examined per split; nullopt means all.
  std::optional<int> max_features;
  std::optional<int> max_leaf_nodes;
  double min_impurity_decrease = 0.0;
  // Extremely randomized splits: one uniform threshold per feature.
  bool random_splits = false;
};

// Resolves a max_features hyperparameter (null, "auto", "sqrt", "log2", an
// integer count or a fraction) against the feature count.
std::optional<int> resolve_max_features(const Json& value, int n_features);

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // weighted fraction of class 1
};

// Binary CART tree on Gini impurity with sample weights. Samples with
// x[feature] <= threshold go left. With max_leaf_nodes the tree grows
// best-first by weighted impurity decrease.
class DecisionTree {
 public:
  void fit(const Matrix& X, const Labels& y, const Vector& weights,
           const TreeParams& params, Rng& rng);
  double predict_row(const Matrix& X, Eigen::Index row) const;
  Vector predict_proba(const Matrix& X) const;

  int leaf_count() const;
  int depth() const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  Json save() const;
  void load(const Json& j);

 private:
  std::vector<TreeNode> nodes_;
};

class DecisionTreeClassifier : public Classifier {
 public:
  explicit DecisionTreeClassifier(const Json& params) : params_(params) {}
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override { return tree_.save(); }
  void load(const Json& state) override { tree_.load(state); }
  const DecisionTree& tree() const { return tree_; }

 private:
  Json params_;
  DecisionTree tree_;
};

class ExtraTreesClassifier : public Classifier {
 public:
  explicit ExtraTreesClassifier(const Json& params) : params_(params) {}
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

 private:
  Json params_;
  std::vector<DecisionTree> trees_;
};

}  // namespace amine::learn
