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


#include "learn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "common/error.hpp"

namespace amine::learn {
namespace {

constexpr double kLearningRate = 1e-3;
constexpr double kMomentum = 0.9;
constexpr int kMaxEpochs = 200;
constexpr int kPatience = 10;
constexpr double kTolerance = 1e-4;

std::vector<int> parse_layers(const Json& params) {
  if (!params.contains("hidden_layer_sizes") || params["hidden_layer_sizes"].is_null()) {
    return {100};
  }
  const Json& v = params["hidden_layer_sizes"];
  std::vector<int> out;
  if (v.is_number()) {
    out.push_back(v.get<int>());
  } else if (v.is_array()) {
    for (const Json& e : v) out.push_back(e.get<int>());
  } else {
    throw Error(ErrorCode::kInvalidArgument, "hidden_layer_sizes must be an integer or a list");
  }
  for (int n : out) {
    if (n < 1) throw Error(ErrorCode::kInvalidArgument, "hidden layer sizes must be positive");
  }
  return out;
}

// Forward pass keeping every layer's activations.
void forward(const std::vector<Matrix>& W, const std::vector<Vector>& b, const Matrix& X,
             std::vector<Matrix>& acts) {
  acts.resize(W.size() + 1);
  acts[0] = X;
  for (std::size_t l = 0; l < W.size(); ++l) {
    Matrix z = acts[l] * W[l];
    z.rowwise() += b[l].transpose();
    if (l + 1 < W.size()) {
      acts[l + 1] = z.cwiseMax(0.0);
    } else {
      acts[l + 1] = z;  // output logits
    }
  }
}

double log_loss(const Vector& logits, const Vector& t) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    const double z = logits(i);
    // log(1 + e^z) - t z
    s += (z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - t(i) * z;
  }
  return s;
}

}  // namespace

MLPClassifier::MLPClassifier(const Json& params) {
  alpha_ = number_or(params, "alpha", 1e-4);
  batch_size_ = opt_int(params, "batch_size");
  hidden_ = parse_layers(params);
  const std::string schedule = string_or(params, "learning_rate", "constant");
  if (schedule != "constant" && schedule != "adaptive") {
    throw Error(ErrorCode::kInvalidArgument, "MLP learning_rate must be constant or adaptive");
  }
  adaptive_ = schedule == "adaptive";
  if (alpha_ < 0) throw Error(ErrorCode::kInvalidArgument, "MLP alpha must be >= 0");
  if (batch_size_ && *batch_size_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "MLP batch_size must be positive");
  }
}

void MLPClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  check_training_data(X, y);
  const Eigen::Index n = X.rows();
  Rng rng(seed);

  std::vector<int> sizes{static_cast<int>(X.cols())};
  sizes.insert(sizes.end(), hidden_.begin(), hidden_.end());
  sizes.push_back(1);
  weights_.clear();
  biases_.clear();
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const double bound = std::sqrt(6.0 / (sizes[l] + sizes[l + 1]));  // Glorot uniform
    std::uniform_real_distribution<double> u(-bound, bound);
    Matrix w(sizes[l], sizes[l + 1]);
    for (Eigen::Index c = 0; c < w.cols(); ++c)
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = u(rng);
    Vector b(sizes[l + 1]);
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = u(rng);
    weights_.push_back(std::move(w));
    biases_.push_back(std::move(b));
  }

  Vector t(n);
  for (Eigen::Index i = 0; i < n; ++i) t(i) = y[static_cast<std::size_t>(i)];
  const Eigen::Index batch = std::clamp<Eigen::Index>(batch_size_.value_or(200), 1, n);

  std::vector<Matrix> vw;
  std::vector<Vector> vb;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    vw.push_back(Matrix::Zero(weights_[l].rows(), weights_[l].cols()));
    vb.push_back(Vector::Zero(biases_[l].size()));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  double lr = kLearningRate;
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;
  loss_curve_.clear();
  std::vector<Matrix> acts;

  for (epochs_ = 0; epochs_ < kMaxEpochs;) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index m = std::min(batch, n - start);
      Matrix xb(m, X.cols());
      Vector tb(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        xb.row(i) = X.row(order[static_cast<std::size_t>(start + i)]);
        tb(i) = t(order[static_cast<std::size_t>(start + i)]);
      }
      // Nesterov: evaluate the gradient at the look-ahead point.
      std::vector<Matrix> Wl(weights_.size());
      std::vector<Vector> bl(biases_.size());
      for (std::size_t l = 0; l < weights_.size(); ++l) {
        Wl[l] = weights_[l] + kMomentum * vw[l];
        bl[l] = biases_[l] + kMomentum * vb[l];
      }
      forward(Wl, bl, xb, acts);
      const Vector logits = acts.back().col(0);
      double sq = 0.0;
      for (const Matrix& w : Wl) sq += w.squaredNorm();
      epoch_loss += (log_loss(logits, tb) / m + 0.5 * alpha_ * sq / m) * m;

      Matrix delta = (logits.unaryExpr([](double z) { return sigmoid(z); }) - tb) / double(m);
      for (std::size_t l = Wl.size(); l-- > 0;) {
        const Matrix gw = acts[l].transpose() * delta + (alpha_ / m) * Wl[l];
        const Vector gb = delta.colwise().sum().transpose();
        if (l > 0) {
          delta = (delta * Wl[l].transpose()).cwiseProduct(
              acts[l].unaryExpr([](double a) { return a > 0 ? 1.0 : 0.0; }));
        }
        vw[l] = kMomentum * vw[l] - lr * gw;
        vb[l] = kMomentum * vb[l] - lr * gb;
        weights_[l] += vw[l];
        biases_[l] += vb[l];
      }
    }
    epoch_loss /= double(n);
    if (!std::isfinite(epoch_loss)) {
      throw Error(ErrorCode::kNonConvergence, "MLP training diverged");
    }
    loss_curve_.push_back(epoch_loss);
    ++epochs_;
    if (epoch_loss > best - kTolerance) {
      ++stale;
    } else {
      stale = 0;
    }
    best = std::min(best, epoch_loss);
    if (stale > kPatience) {
      if (adaptive_ && lr > 1e-6) {
        lr /= 5.0;
        stale = 0;
      } else {
        break;
      }
    }
  }
}

Vector MLPClassifier::predict_proba(const Matrix& X) const {
  check_features(X, weights_.empty() ? 0 : weights_.front().rows());
  std::vector<Matrix> acts;
  forward(weights_, biases_, X, acts);
  return acts.back().col(0).unaryExpr([](double z) { return sigmoid(z); });
}

Json MLPClassifier::save() const {
  Json layers = Json::array();
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    layers.push_back({{"weights", matrix_to_json(weights_[l])}, {"bias", vector_to_json(biases_[l])}});
  }
  return {{"layers", layers}, {"epochs", epochs_}};
}

void MLPClassifier::load(const Json& state) {
  weights_.clear();
  biases_.clear();
  for (const Json& layer : state.at("layers")) {
    weights_.push_back(matrix_from_json(layer.at("weights")));
    biases_.push_back(vector_from_json(layer.at("bias")));
  }
  epochs_ = state.value("epochs", 0);
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    if (biases_[l].size() != weights_[l].cols() ||
        (l > 0 && weights_[l].rows() != weights_[l - 1].cols())) {
      throw Error(ErrorCode::kFormat, "MLP: inconsistent layer shapes");
    }
  }
  if (weights_.empty() || weights_.back().cols() != 1) {
    throw Error(ErrorCode::kFormat, "MLP: missing output layer");
  }
}

}  // namespace amine::learn
