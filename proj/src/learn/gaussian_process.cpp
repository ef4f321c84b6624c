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


#include "learn/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/error.hpp"

namespace amine::learn {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr char kDefaultKernel[] = "1.0 * RBF(1.0)";

Vector targets(const Labels& y) {
  Vector t(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) t(static_cast<Eigen::Index>(i)) = y[i];
  return t;
}

Vector sigmoid_of(const Vector& f) {
  return f.unaryExpr([](double v) { return sigmoid(v); });
}

// log sigmoid((2t - 1) f) summed, computed without overflow.
double log_likelihood(const Vector& t, const Vector& f) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double z = (2.0 * t(i) - 1.0) * f(i);
    s += z >= 0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
  }
  return s;
}

struct Factor {
  Vector sqrt_w;
  Eigen::LLT<Matrix> llt;
};

bool factor_at(const Matrix& K, const Vector& pi, Factor& out) {
  const Vector w = pi.cwiseProduct(Vector::Ones(pi.size()) - pi);
  out.sqrt_w = w.cwiseSqrt();
  Matrix B = out.sqrt_w.asDiagonal() * K * out.sqrt_w.asDiagonal();
  B.diagonal().array() += 1.0;
  out.llt.compute(B);
  return out.llt.info() == Eigen::Success;
}

double sum_log_diag(const Eigen::LLT<Matrix>& llt) {
  return llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

LaplaceResult laplace(Kernel& kernel, const Matrix& X, const Labels& y, bool with_gradient) {
  const Eigen::Index n = X.rows();
  const Vector t = targets(y);
  std::vector<Matrix> grads;
  const Matrix K = kernel.gram(X, with_gradient ? &grads : nullptr);

  LaplaceResult r;
  Vector f = Vector::Zero(n);
  double objective = -std::numeric_limits<double>::infinity();
  Factor fac;
  for (int it = 0; it < 100; ++it) {
    const Vector pi = sigmoid_of(f);
    if (!factor_at(K, pi, fac)) {
      throw Error(ErrorCode::kNonConvergence, "Laplace: Cholesky factorization failed");
    }
    const Vector w = fac.sqrt_w.cwiseProduct(fac.sqrt_w);
    const Vector b = w.cwiseProduct(f) + (t - pi);
    const Vector kb = K * b;
    const Vector inner = fac.llt.solve(fac.sqrt_w.cwiseProduct(kb));
    const Vector a = b - fac.sqrt_w.cwiseProduct(inner);
    const Vector f_new = K * a;
    const double obj = -0.5 * a.dot(f_new) + log_likelihood(t, f_new);
    const double change = (f_new - f).lpNorm<Eigen::Infinity>();
    f = f_new;
    r.newton_iterations = it + 1;
    if (change < 1e-12 * (1.0 + f.lpNorm<Eigen::Infinity>()) || obj - objective < 1e-14) {
      objective = obj;
      break;
    }
    objective = obj;
  }

  // Re-evaluate every quantity at the final mode so the objective and its
  // gradient are mutually consistent.
  const Vector pi = sigmoid_of(f);
  if (!factor_at(K, pi, fac)) {
    throw Error(ErrorCode::kNonConvergence, "Laplace: Cholesky factorization failed");
  }
  const Vector a = t - pi;
  r.f = f;
  r.pi = pi;
  r.log_marginal = -0.5 * a.dot(f) + log_likelihood(t, f) - sum_log_diag(fac.llt);
  if (!with_gradient) return r;

  const Matrix& L = fac.llt.matrixLLT();
  const auto lower = L.triangularView<Eigen::Lower>();
  // R = sqrt(W) B^-1 sqrt(W)
  Matrix R = fac.llt.solve(Matrix(fac.sqrt_w.asDiagonal()));
  R = fac.sqrt_w.asDiagonal() * R;
  const Matrix C = lower.solve(Matrix(fac.sqrt_w.asDiagonal() * K));
  const Vector dw = pi.cwiseProduct(Vector::Ones(n) - pi)
                        .cwiseProduct(Vector::Ones(n) - 2.0 * pi);
  const Vector s2 = -0.5 * (K.diagonal() - C.colwise().squaredNorm().transpose()).cwiseProduct(dw);

  r.gradient.resize(static_cast<Eigen::Index>(grads.size()));
  for (std::size_t j = 0; j < grads.size(); ++j) {
    const Matrix& Cj = grads[j];
    const double s1 = 0.5 * a.dot(Cj * a) - 0.5 * R.cwiseProduct(Cj).sum();
    const Vector b = Cj * a;
    const Vector s3 = b - K * (R * b);
    r.gradient(static_cast<Eigen::Index>(j)) = s1 + s2.dot(s3);
  }
  return r;
}

void optimize_hyperparameters(Kernel& kernel, const Matrix& X, const Labels& y) {
  Vector theta = kernel.theta();
  if (theta.size() == 0) return;
  const Matrix bounds = kernel.theta_bounds();
  auto clip = [&](Vector v) {
    return v.cwiseMax(bounds.col(0)).cwiseMin(bounds.col(1)).eval();
  };
  auto project = [&](const Vector& at, Vector g) {
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if ((at(i) <= bounds(i, 0) && g(i) < 0) || (at(i) >= bounds(i, 1) && g(i) > 0)) g(i) = 0.0;
    }
    return g;
  };
  auto value_at = [&](const Vector& th) {
    kernel.set_theta(th);
    try {
      return laplace(kernel, X, y, false).log_marginal;
    } catch (const Error&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  theta = clip(theta);
  kernel.set_theta(theta);
  LaplaceResult cur = laplace(kernel, X, y, true);
  double value = cur.log_marginal;
  Vector grad = project(theta, cur.gradient);
  double step = 1.0 / std::max(1.0, grad.lpNorm<Eigen::Infinity>());

  for (int it = 0; it < 200; ++it) {
    if (grad.lpNorm<Eigen::Infinity>() < 1e-6) break;
    Vector next;
    double next_value = value;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      next = clip(theta + step * grad);
      const Vector delta = next - theta;
      if (delta.lpNorm<Eigen::Infinity>() < 1e-12) break;
      next_value = value_at(next);
      if (next_value >= value + 1e-4 * grad.dot(delta)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    kernel.set_theta(next);
    const LaplaceResult nr = laplace(kernel, X, y, true);
    const Vector next_grad = project(next, nr.gradient);
    const Vector s = next - theta;
    const Vector dg = next_grad - grad;
    const double sy = s.dot(dg);
    // Barzilai-Borwein step for ascent on a locally concave objective.
    step = sy < 0 ? std::clamp(-s.squaredNorm() / sy, 1e-8, 1e3) : std::min(step * 2.0, 1e3);
    const double gain = next_value - value;
    theta = next;
    value = next_value;
    grad = next_grad;
    if (gain < 1e-10 * (1.0 + std::abs(value))) break;
  }
  kernel.set_theta(theta);
}

GaussianProcessClassifier::GaussianProcessClassifier(const Json& params) {
  kernel_text_ = string_or(params, "kernel", kDefaultKernel);
  kernel_ = parse_kernel(kernel_text_);
}

void GaussianProcessClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  check_training_data(X, y);
  kernel_ = parse_kernel(kernel_text_);
  X_ = X;
  y_ = y;
  optimize_hyperparameters(*kernel_, X_, y_);
  const LaplaceResult r = laplace(*kernel_, X_, y_, false);
  f_ = r.f;
  log_marginal_ = r.log_marginal;
  factorize();
}

void GaussianProcessClassifier::factorize() {
  const Matrix K = kernel_->gram(X_, nullptr);
  const Vector pi = sigmoid_of(f_);
  Factor fac;
  if (!factor_at(K, pi, fac)) {
    throw Error(ErrorCode::kNonConvergence, "GP: Cholesky factorization failed");
  }
  residual_ = targets(y_) - pi;
  sqrt_w_ = fac.sqrt_w;
  L_ = fac.llt.matrixL();
}

void GaussianProcessClassifier::latent(const Matrix& X, Vector& mean, Vector& variance) const {
  check_features(X, X_.cols());
  const Matrix Ks = kernel_->cross(X_, X);
  mean = Ks.transpose() * residual_;
  const Matrix v = L_.triangularView<Eigen::Lower>().solve(sqrt_w_.asDiagonal() * Ks);
  variance = (kernel_->diag(X) - v.colwise().squaredNorm().transpose()).cwiseMax(0.0);
}

Vector GaussianProcessClassifier::predict_proba(const Matrix& X) const {
  Vector mean, variance;
  latent(X, mean, variance);
  Vector p(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double kappa = 1.0 / std::sqrt(1.0 + kPi * variance(i) / 8.0);
    p(i) = sigmoid(kappa * mean(i));
  }
  return p;
}

Json GaussianProcessClassifier::save() const {
  Json values = Json::array();
  for (Hyperparameter* h : kernel_->hyperparameters()) values.push_back(h->value);
  Json j;
  j["kernel"] = kernel_text_;
  j["fitted_kernel"] = kernel_->repr();
  j["hyperparameters"] = values;
  j["log_marginal_likelihood"] = log_marginal_;
  j["X"] = matrix_to_json(X_);
  j["y"] = y_;
  j["f"] = vector_to_json(f_);
  return j;
}

void GaussianProcessClassifier::load(const Json& state) {
  kernel_text_ = state.at("kernel").get<std::string>();
  kernel_ = parse_kernel(kernel_text_);
  const auto hs = kernel_->hyperparameters();
  const Json& values = state.at("hyperparameters");
  if (values.size() != hs.size()) throw Error(ErrorCode::kFormat, "GP: hyperparameter count mismatch");
  for (std::size_t i = 0; i < hs.size(); ++i) hs[i]->value = values[i].get<double>();
  log_marginal_ = state.value("log_marginal_likelihood", 0.0);
  X_ = matrix_from_json(state.at("X"));
  y_ = state.at("y").get<Labels>();
  f_ = vector_from_json(state.at("f"));
  if (static_cast<Eigen::Index>(y_.size()) != X_.rows() || f_.size() != X_.rows()) {
    throw Error(ErrorCode::kFormat, "GP: inconsistent fitted state");
  }
  factorize();
}

}  // namespace amine::learn
