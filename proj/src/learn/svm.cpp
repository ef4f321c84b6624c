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


#include "learn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "common/error.hpp"

namespace amine::learn {
namespace {

constexpr int kCalibrationFolds = 3;
constexpr double kTau = 1e-12;

Vector signed_labels(const Labels& y) {
  Vector s(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) s(static_cast<Eigen::Index>(i)) = y[i] == 1 ? 1.0 : -1.0;
  return s;
}

}  // namespace

double SvmKernel::operator()(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) const {
  if (type == "linear") return a.dot(b);
  if (type == "poly") return std::pow(gamma * a.dot(b) + coef0, degree);
  if (type == "sigmoid") return std::tanh(gamma * a.dot(b) + coef0);
  return std::exp(-gamma * (a - b).squaredNorm());
}

Matrix SvmKernel::matrix(const Matrix& A, const Matrix& B) const {
  Matrix K(A.rows(), B.rows());
  for (Eigen::Index j = 0; j < B.rows(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) K(i, j) = (*this)(A.row(i), B.row(j));
  return K;
}

SvmSolution solve_svc(const Matrix& K, const Vector& s, double C, double eps) {
  const Eigen::Index n = K.rows();
  SvmSolution sol;
  Vector& a = sol.alpha;
  a = Vector::Zero(n);
  Vector G = -Vector::Ones(n);  // gradient of 0.5 a'Qa - e'a
  auto Q = [&](Eigen::Index i, Eigen::Index j) { return s(i) * s(j) * K(i, j); };
  auto up = [&](Eigen::Index t) { return (s(t) > 0 && a(t) < C) || (s(t) < 0 && a(t) > 0); };
  auto low = [&](Eigen::Index t) { return (s(t) > 0 && a(t) > 0) || (s(t) < 0 && a(t) < C); };

  const long max_iter = std::max<long>(10000000, 100 * static_cast<long>(n));
  for (long it = 0; it < max_iter; ++it) {
    double gmax = -std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (up(t) && -s(t) * G(t) >= gmax) {
        if (-s(t) * G(t) > gmax || i < 0) i = t;
        gmax = -s(t) * G(t);
      }
    }
    double gmin = std::numeric_limits<double>::infinity();
    Eigen::Index j = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      if (!low(t)) continue;
      const double v = -s(t) * G(t);
      gmin = std::min(gmin, v);
      if (i >= 0 && v < gmax) {
        const double b = gmax - v;
        double quad = K(i, i) + K(t, t) - 2.0 * K(i, t);
        if (quad <= 0) quad = kTau;
        const double obj = -(b * b) / quad;
        if (obj < best) {
          best = obj;
          j = t;
        }
      }
    }
    sol.iterations = static_cast<int>(it);
    if (i < 0 || j < 0 || gmax - gmin < eps) break;

    const double ai = a(i), aj = a(j);
    if (s(i) != s(j)) {
      double quad = K(i, i) + K(j, j) - 2.0 * K(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (-G(i) - G(j)) / quad;
      const double diff = a(i) - a(j);
      a(i) += delta;
      a(j) += delta;
      if (diff > 0) {
        if (a(j) < 0) {
          a(j) = 0;
          a(i) = diff;
        }
      } else if (a(i) < 0) {
        a(i) = 0;
        a(j) = -diff;
      }
      if (diff > 0) {
        if (a(i) > C) {
          a(i) = C;
          a(j) = C - diff;
        }
      } else if (a(j) > C) {
        a(j) = C;
        a(i) = C + diff;
      }
    } else {
      double quad = K(i, i) + K(j, j) - 2.0 * K(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (G(i) - G(j)) / quad;
      const double sum = a(i) + a(j);
      a(i) -= delta;
      a(j) += delta;
      if (sum > C) {
        if (a(i) > C) {
          a(i) = C;
          a(j) = sum - C;
        }
      } else if (a(j) < 0) {
        a(j) = 0;
        a(i) = sum;
      }
      if (sum > C) {
        if (a(j) > C) {
          a(j) = C;
          a(i) = sum - C;
        }
      } else if (a(i) < 0) {
        a(i) = 0;
        a(j) = sum;
      }
    }
    const double di = a(i) - ai, dj = a(j) - aj;
    for (Eigen::Index t = 0; t < n; ++t) G(t) += Q(t, i) * di + Q(t, j) * dj;
  }

  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  int free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = s(t) * G(t);
    if (a(t) >= C) {
      if (s(t) < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (a(t) <= 0) {
      if (s(t) > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free;
      sum += yg;
    }
  }
  sol.rho = free > 0 ? sum / free : 0.5 * (ub + lb);
  return sol;
}

std::pair<double, double> fit_platt(const Vector& f, const Labels& y) {
  double prior1 = 0, prior0 = 0;
  for (int v : y) (v == 1 ? prior1 : prior0) += 1.0;
  const double hi = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo = 1.0 / (prior0 + 2.0);
  const Eigen::Index n = f.size();
  Vector t(n);
  for (Eigen::Index i = 0; i < n; ++i) t(i) = y[static_cast<std::size_t>(i)] == 1 ? hi : lo;

  auto objective = [&](double A, double B) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = f(i) * A + B;
      v += z >= 0 ? t(i) * z + std::log1p(std::exp(-z)) : (t(i) - 1.0) * z + std::log1p(std::exp(z));
    }
    return v;
  };

  double A = 0.0, B = std::log((prior0 + 1.0) / (prior1 + 1.0));
  double fval = objective(A, B);
  for (int it = 0; it < 100; ++it) {
    double h11 = 1e-12, h22 = 1e-12, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = f(i) * A + B;
      double p, q;
      if (z >= 0) {
        p = std::exp(-z) / (1.0 + std::exp(-z));
        q = 1.0 / (1.0 + std::exp(-z));
      } else {
        p = 1.0 / (1.0 + std::exp(z));
        q = std::exp(z) / (1.0 + std::exp(z));
      }
      const double d2 = p * q;
      h11 += f(i) * f(i) * d2;
      h22 += d2;
      h21 += f(i) * d2;
      const double d1 = t(i) - p;
      g1 += f(i) * d1;
      g2 += d1;
    }
    if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;
    const double det = h11 * h22 - h21 * h21;
    const double dA = -(h22 * g1 - h21 * g2) / det;
    const double dB = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * dA + g2 * dB;
    double step = 1.0;
    while (step >= 1e-10) {
      const double nA = A + step * dA, nB = B + step * dB;
      const double nf = objective(nA, nB);
      if (nf < fval + 1e-4 * step * gd) {
        A = nA;
        B = nB;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < 1e-10) break;
  }
  return {A, B};
}

SupportVectorClassifier::SupportVectorClassifier(const Json& params) {
  C_ = number_or(params, "C", 1.0);
  kernel_.type = string_or(params, "kernel", "rbf");
  kernel_.degree = int_or(params, "degree", 3);
  if (params.contains("gamma") && params["gamma"].is_number()) {
    gamma_spec_ = "value";
    kernel_.gamma = params["gamma"].get<double>();
    if (!(kernel_.gamma > 0)) throw Error(ErrorCode::kInvalidArgument, "SVM gamma must be positive");
  } else {
    gamma_spec_ = string_or(params, "gamma", "scale");
    if (gamma_spec_ != "scale" && gamma_spec_ != "auto") {
      throw Error(ErrorCode::kInvalidArgument, "SVM gamma must be scale, auto or a number");
    }
  }
  const std::string& k = kernel_.type;
  if (k != "linear" && k != "poly" && k != "rbf" && k != "sigmoid") {
    throw Error(ErrorCode::kInvalidArgument, "SVM kernel must be linear, poly, rbf or sigmoid");
  }
  if (!(C_ > 0)) throw Error(ErrorCode::kInvalidArgument, "SVM C must be positive");
  if (kernel_.degree < 0) throw Error(ErrorCode::kInvalidArgument, "SVM degree must be >= 0");
}

void SupportVectorClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  check_training_data(X, y);
  const Eigen::Index n = X.rows();
  const double p = static_cast<double>(X.cols());
  if (gamma_spec_ == "auto") {
    kernel_.gamma = 1.0 / p;
  } else if (gamma_spec_ == "scale") {
    const double mean = X.mean();
    const double var = (X.array() - mean).square().mean();
    kernel_.gamma = var > 0 ? 1.0 / (p * var) : 1.0;
  }
  const Matrix K = kernel_.matrix(X, X);
  const Vector s = signed_labels(y);

  // Out-of-fold decision values for the Platt sigmoid.
  const std::vector<int> fold = stratified_folds(y, kCalibrationFolds, seed);
  Vector dec(n);
  for (int k = 0; k < kCalibrationFolds; ++k) {
    std::vector<Eigen::Index> train, test;
    for (Eigen::Index i = 0; i < n; ++i) (fold[static_cast<std::size_t>(i)] == k ? test : train).push_back(i);
    if (test.empty()) continue;
    bool has_pos = false, has_neg = false;
    for (Eigen::Index i : train) (s(i) > 0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) {
      for (Eigen::Index i : test) dec(i) = has_pos ? 1.0 : -1.0;
      continue;
    }
    const Eigen::Index m = static_cast<Eigen::Index>(train.size());
    Matrix Kt(m, m);
    Vector st(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      st(a) = s(train[static_cast<std::size_t>(a)]);
      for (Eigen::Index b = 0; b < m; ++b)
        Kt(a, b) = K(train[static_cast<std::size_t>(a)], train[static_cast<std::size_t>(b)]);
    }
    const SvmSolution sub = solve_svc(Kt, st, C_);
    for (Eigen::Index i : test) {
      double v = -sub.rho;
      for (Eigen::Index a = 0; a < m; ++a) {
        if (sub.alpha(a) > 0) v += st(a) * sub.alpha(a) * K(train[static_cast<std::size_t>(a)], i);
      }
      dec(i) = v;
    }
  }
  std::tie(platt_a_, platt_b_) = fit_platt(dec, y);

  const SvmSolution sol = solve_svc(K, s, C_);
  std::vector<Eigen::Index> sv;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sol.alpha(i) > 0) sv.push_back(i);
  }
  support_.resize(static_cast<Eigen::Index>(sv.size()), X.cols());
  coef_.resize(static_cast<Eigen::Index>(sv.size()));
  for (std::size_t r = 0; r < sv.size(); ++r) {
    support_.row(static_cast<Eigen::Index>(r)) = X.row(sv[r]);
    coef_(static_cast<Eigen::Index>(r)) = s(sv[r]) * sol.alpha(sv[r]);
  }
  rho_ = sol.rho;
}

Vector SupportVectorClassifier::decision_function(const Matrix& X) const {
  check_features(X, support_.cols());
  if (support_.rows() == 0) return Vector::Constant(X.rows(), -rho_);
  return (kernel_.matrix(X, support_) * coef_).array() - rho_;
}

Vector SupportVectorClassifier::predict_proba(const Matrix& X) const {
  const Vector f = decision_function(X);
  return f.unaryExpr([&](double v) { return sigmoid(-(platt_a_ * v + platt_b_)); });
}

Json SupportVectorClassifier::save() const {
  return {{"kernel", kernel_.type},     {"gamma", kernel_.gamma},
          {"degree", kernel_.degree},   {"coef0", kernel_.coef0},
          {"support", matrix_to_json(support_)}, {"dual_coef", vector_to_json(coef_)},
          {"rho", rho_},                {"platt_a", platt_a_},
          {"platt_b", platt_b_}};
}

void SupportVectorClassifier::load(const Json& state) {
  kernel_.type = state.at("kernel").get<std::string>();
  kernel_.gamma = state.at("gamma").get<double>();
  kernel_.degree = state.at("degree").get<int>();
  kernel_.coef0 = state.at("coef0").get<double>();
  support_ = matrix_from_json(state.at("support"));
  coef_ = vector_from_json(state.at("dual_coef"));
  rho_ = state.at("rho").get<double>();
  platt_a_ = state.at("platt_a").get<double>();
  platt_b_ = state.at("platt_b").get<double>();
  if (coef_.size() != support_.rows()) throw Error(ErrorCode::kFormat, "SVM: inconsistent fitted state");
}

}  // namespace amine::learn
