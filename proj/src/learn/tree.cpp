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


#include "learn/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "common/error.hpp"

namespace amine::learn {
namespace {

constexpr double kFeatureThreshold = 1e-7;
constexpr double kEpsilon = 1e-12;

double gini(double w0, double w1) {
  const double w = w0 + w1;
  if (w <= 0.0) return 0.0;
  const double p0 = w0 / w;
  const double p1 = w1 / w;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct Split {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double improvement = -1.0;
};

struct Pending {
  int node;
  std::vector<int> samples;
  int depth;
  Split split;
};

class Builder {
 public:
  Builder(const Matrix& X, const Labels& y, const Vector& w, const TreeParams& p, Rng& rng)
      : X_(X), y_(y), w_(w), params_(p), rng_(rng) {
    total_weight_ = w.sum();
  }

  std::vector<TreeNode> run() {
    std::vector<int> all(static_cast<std::size_t>(X_.rows()));
    std::iota(all.begin(), all.end(), 0);
    std::vector<Pending> frontier;
    frontier.push_back(make_pending(std::move(all), 0));
    int leaves = 1;
    const bool best_first = params_.max_leaf_nodes.has_value();
    while (!frontier.empty()) {
      std::size_t pick = frontier.size() - 1;  // depth-first
      if (best_first) {
        pick = 0;
        for (std::size_t i = 1; i < frontier.size(); ++i) {
          if (frontier[i].split.improvement > frontier[pick].split.improvement) pick = i;
        }
      }
      Pending current = std::move(frontier[pick]);
      frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
      if (!current.split.valid) continue;
      if (best_first && leaves >= *params_.max_leaf_nodes) continue;

      std::vector<int> left, right;
      for (int i : current.samples) {
        (X_(i, current.split.feature) <= current.split.threshold ? left : right).push_back(i);
      }
      TreeNode& node = nodes_[static_cast<std::size_t>(current.node)];
      node.feature = current.split.feature;
      node.threshold = current.split.threshold;
      ++leaves;
      Pending l = make_pending(std::move(left), current.depth + 1);
      Pending r = make_pending(std::move(right), current.depth + 1);
      nodes_[static_cast<std::size_t>(current.node)].left = l.node;
      nodes_[static_cast<std::size_t>(current.node)].right = r.node;
      // Depth-first order pops the left child first.
      frontier.push_back(std::move(r));
      frontier.push_back(std::move(l));
    }
    return std::move(nodes_);
  }

 private:
  Pending make_pending(std::vector<int> samples, int depth) {
    double w0 = 0.0, w1 = 0.0;
    for (int i : samples) (y_[static_cast<std::size_t>(i)] == 1 ? w1 : w0) += w_(i);
    TreeNode node;
    node.value = (w0 + w1) > 0.0 ? w1 / (w0 + w1) : 0.0;
    nodes_.push_back(node);
    Pending p{static_cast<int>(nodes_.size()) - 1, std::move(samples), depth, {}};
    const bool depth_ok = !params_.max_depth || depth < *params_.max_depth;
    const double impurity = gini(w0, w1);
    if (depth_ok && p.samples.size() >= 2 && impurity > kEpsilon) {
      p.split = find_split(p.samples, w0, w1);
      if (p.split.valid &&
          p.split.improvement + kEpsilon < params_.min_impurity_decrease) {
        p.split.valid = false;
      }
    }
    return p;
  }

  Split find_split(const std::vector<int>& samples, double w0, double w1) {
    const int n_features = static_cast<int>(X_.cols());
    std::vector<int> order(static_cast<std::size_t>(n_features));
    std::iota(order.begin(), order.end(), 0);
    const int k = params_.max_features.value_or(n_features);
    if (k < n_features || params_.random_splits) std::shuffle(order.begin(), order.end(), rng_);
    const double node_weight = w0 + w1;
    const double node_impurity = gini(w0, w1);

    Split best;
    int visited = 0;
    std::vector<std::pair<double, int>> column;
    for (int f : order) {
      if (visited >= k) break;
      double lo = X_(samples[0], f), hi = lo;
      for (int i : samples) {
        lo = std::min(lo, X_(i, f));
        hi = std::max(hi, X_(i, f));
      }
      if (hi - lo <= kFeatureThreshold) continue;  // constant here; not counted
      ++visited;

      auto consider = [&](double threshold, double lw0, double lw1) {
        const double rw0 = w0 - lw0, rw1 = w1 - lw1;
        const double lw = lw0 + lw1, rw = rw0 + rw1;
        if (lw <= 0.0 || rw <= 0.0) return;
        const double improvement =
            node_weight / total_weight_ *
            (node_impurity - lw / node_weight * gini(lw0, lw1) - rw / node_weight * gini(rw0, rw1));
        if (!best.valid || improvement > best.improvement) {
          best = {true, f, threshold, improvement};
        }
      };

      if (params_.random_splits) {
        double threshold = std::uniform_real_distribution<double>(lo, hi)(rng_);
        if (threshold >= hi) threshold = lo;
        double lw0 = 0.0, lw1 = 0.0;
        std::size_t n_left = 0;
        for (int i : samples) {
          if (X_(i, f) <= threshold) {
            (y_[static_cast<std::size_t>(i)] == 1 ? lw1 : lw0) += w_(i);
            ++n_left;
          }
        }
        if (n_left == 0 || n_left == samples.size()) continue;
        consider(threshold, lw0, lw1);
        continue;
      }

      column.clear();
      for (int i : samples) column.emplace_back(X_(i, f), i);
      std::stable_sort(column.begin(), column.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      double lw0 = 0.0, lw1 = 0.0;
      for (std::size_t pos = 0; pos + 1 < column.size(); ++pos) {
        const int i = column[pos].second;
        (y_[static_cast<std::size_t>(i)] == 1 ? lw1 : lw0) += w_(i);
        const double a = column[pos].first;
        const double b = column[pos + 1].first;
        if (b <= a + kFeatureThreshold) continue;
        double threshold = a / 2.0 + b / 2.0;
        if (threshold == b || !std::isfinite(threshold)) threshold = a;
        consider(threshold, lw0, lw1);
      }
    }
    return best;
  }

  const Matrix& X_;
  const Labels& y_;
  const Vector& w_;
  const TreeParams& params_;
  Rng& rng_;
  double total_weight_ = 0.0;
  std::vector<TreeNode> nodes_;
};

TreeParams tree_params(const Json& params, int n_features, const char* default_max_features) {
  TreeParams p;
  p.max_depth = opt_int(params, "max_depth");
  if (p.max_depth && *p.max_depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_depth must be >= 1");
  }
  const auto it = params.find("max_features");
  p.max_features = resolve_max_features(
      it == params.end() ? Json(default_max_features ? Json(default_max_features) : Json())
                         : *it,
      n_features);
  p.max_leaf_nodes = opt_int(params, "max_leaf_nodes");
  if (p.max_leaf_nodes && *p.max_leaf_nodes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "max_leaf_nodes must be >= 2");
  }
  p.min_impurity_decrease = number_or(params, "min_impurity_decrease", 0.0);
  return p;
}

}  // namespace

std::optional<int> resolve_max_features(const Json& value, int n_features) {
  if (value.is_null()) return std::nullopt;
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "auto" || s == "sqrt") {
      return std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n_features))));
    }
    if (s == "log2") {
      return std::max(1, static_cast<int>(std::log2(static_cast<double>(n_features))));
    }
    if (s == "None" || s == "none") return std::nullopt;
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown max_features '{}'", s));
  }
  if (value.is_number_integer()) {
    const int k = value.get<int>();
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "max_features must be >= 1");
    return std::min(k, n_features);
  }
  if (value.is_number()) {
    const double f = value.get<double>();
    if (!(f > 0.0 && f <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "fractional max_features must lie in (0, 1]");
    }
    return std::max(1, static_cast<int>(f * n_features));
  }
  throw Error(ErrorCode::kInvalidArgument, "bad max_features value");
}

void DecisionTree::fit(const Matrix& X, const Labels& y, const Vector& weights,
                       const TreeParams& params, Rng& rng) {
  nodes_ = Builder(X, y, weights, params, rng).run();
}

double DecisionTree::predict_row(const Matrix& X, Eigen::Index row) const {
  int node = 0;
  while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& n = nodes_[static_cast<std::size_t>(node)];
    node = X(row, n.feature) <= n.threshold ? n.left : n.right;
  }
  return nodes_[static_cast<std::size_t>(node)].value;
}

Vector DecisionTree::predict_proba(const Matrix& X) const {
  Vector out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out(i) = predict_row(X, i);
  return out;
}

int DecisionTree::leaf_count() const {
  return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(),
                                        [](const TreeNode& n) { return n.feature < 0; }));
}

int DecisionTree::depth() const {
  int deepest = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [node, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const TreeNode& n = nodes_[static_cast<std::size_t>(node)];
    if (n.feature >= 0) {
      stack.emplace_back(n.left, d + 1);
      stack.emplace_back(n.right, d + 1);
    }
  }
  return deepest;
}

Json DecisionTree::save() const {
  Json feature = Json::array(), threshold = Json::array(), left = Json::array(),
       right = Json::array(), value = Json::array();
  for (const TreeNode& n : nodes_) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.value);
  }
  return Json{{"feature", feature}, {"threshold", threshold}, {"left", left},
              {"right", right},     {"value", value}};
}

void DecisionTree::load(const Json& j) {
  const auto& feature = j.at("feature");
  nodes_.assign(feature.size(), {});
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    nodes_[i].feature = feature[i].get<int>();
    nodes_[i].threshold = j.at("threshold").at(i).get<double>();
    nodes_[i].left = j.at("left").at(i).get<int>();
    nodes_[i].right = j.at("right").at(i).get<int>();
    nodes_[i].value = j.at("value").at(i).get<double>();
  }
  if (nodes_.empty()) throw Error(ErrorCode::kFormat, "empty tree");
}

void DecisionTreeClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  const TreeParams p = tree_params(params_, static_cast<int>(X.cols()), nullptr);
  Rng rng(seed);
  tree_.fit(X, y, Vector::Ones(X.rows()), p, rng);
}

Vector DecisionTreeClassifier::predict_proba(const Matrix& X) const {
  return tree_.predict_proba(X);
}

void ExtraTreesClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  TreeParams p = tree_params(params_, static_cast<int>(X.cols()), "sqrt");
  p.random_splits = true;
  const int n_estimators = int_or(params_, "n_estimators", 100);
  if (n_estimators < 1) throw Error(ErrorCode::kInvalidArgument, "n_estimators must be >= 1");
  trees_.assign(static_cast<std::size_t>(n_estimators), {});
  const Vector weights = Vector::Ones(X.rows());
  for (int t = 0; t < n_estimators; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    trees_[static_cast<std::size_t>(t)].fit(X, y, weights, p, rng);
  }
}

Vector ExtraTreesClassifier::predict_proba(const Matrix& X) const {
  Vector sum = Vector::Zero(X.rows());
  for (const auto& tree : trees_) sum += tree.predict_proba(X);
  return sum / static_cast<double>(trees_.size());
}

Json ExtraTreesClassifier::save() const {
  Json trees = Json::array();
  for (const auto& tree : trees_) trees.push_back(tree.save());
  return Json{{"trees", std::move(trees)}};
}

void ExtraTreesClassifier::load(const Json& state) {
  trees_.clear();
  for (const auto& t : state.at("trees")) {
    trees_.emplace_back();
    trees_.back().load(t);
  }
  if (trees_.empty()) throw Error(ErrorCode::kFormat, "ensemble without trees");
}

}  // namespace amine::learn
