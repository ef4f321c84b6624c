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


#include "learn/kernels.hpp"

#include <cctype>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "common/error.hpp"

namespace amine::learn {
namespace {

Matrix squared_distances(const Matrix& A, const Matrix& B) {
  const Vector a2 = A.rowwise().squaredNorm();
  const Vector b2 = B.rowwise().squaredNorm();
  Matrix d = (-2.0 * A * B.transpose()).colwise() + a2;
  d.rowwise() += b2.transpose();
  return d.cwiseMax(0.0);
}

class Constant : public Kernel {
 public:
  explicit Constant(Hyperparameter h) : h_(std::move(h)) {}
  Matrix cross(const Matrix& A, const Matrix& B) const override {
    return Matrix::Constant(A.rows(), B.rows(), h_.value);
  }
  Matrix gram(const Matrix& X, std::vector<Matrix>* grads) const override {
    Matrix K = Matrix::Constant(X.rows(), X.rows(), h_.value);
    if (grads && !h_.fixed) grads->push_back(K);
    return K;
  }
  Vector diag(const Matrix& X) const override { return Vector::Constant(X.rows(), h_.value); }
  std::string repr() const override { return fmt::format("{:.3g}**2", std::sqrt(h_.value)); }
  std::unique_ptr<Kernel> clone() const override { return std::make_unique<Constant>(h_); }
  void collect(std::vector<Hyperparameter*>& out) override { out.push_back(&h_); }

 private:
  Hyperparameter h_;
};

class White : public Kernel {
 public:
  explicit White(Hyperparameter h) : h_(std::move(h)) {}
  Matrix cross(const Matrix& A, const Matrix& B) const override {
    return Matrix::Zero(A.rows(), B.rows());
  }
  Matrix gram(const Matrix& X, std::vector<Matrix>* grads) const override {
    Matrix K = h_.value * Matrix::Identity(X.rows(), X.rows());
    if (grads && !h_.fixed) grads->push_back(K);
    return K;
  }
  Vector diag(const Matrix& X) const override { return Vector::Constant(X.rows(), h_.value); }
  std::string repr() const override {
    return fmt::format("WhiteKernel(noise_level={:.3g})", h_.value);
  }
  std::unique_ptr<Kernel> clone() const override { return std::make_unique<White>(h_); }
  void collect(std::vector<Hyperparameter*>& out) override { out.push_back(&h_); }

 private:
  Hyperparameter h_;
};

// Stationary kernels of r = d / length_scale.
class Stationary : public Kernel {
 public:
  // nu <= 0 selects the RBF.
  Stationary(Hyperparameter length, double nu) : length_(std::move(length)), nu_(nu) {}

  Matrix cross(const Matrix& A, const Matrix& B) const override {
    return evaluate(squared_distances(A, B), nullptr);
  }
  Matrix gram(const Matrix& X, std::vector<Matrix>* grads) const override {
    Matrix grad;
    Matrix K = evaluate(squared_distances(X, X), grads && !length_.fixed ? &grad : nullptr);
    if (grads && !length_.fixed) grads->push_back(std::move(grad));
    return K;
  }
  Vector diag(const Matrix& X) const override { return Vector::Ones(X.rows()); }
  std::string repr() const override {
    if (nu_ <= 0.0) return fmt::format("RBF(length_scale={:.3g})", length_.value);
    return fmt::format("Matern(length_scale={:.3g}, nu={})", length_.value, nu_);
  }
  std::unique_ptr<Kernel> clone() const override {
    return std::make_unique<Stationary>(length_, nu_);
  }
  void collect(std::vector<Hyperparameter*>& out) override { out.push_back(&length_); }

 private:
  Matrix evaluate(const Matrix& d2, Matrix* grad) const {
    const double l = length_.value;
    Matrix K(d2.rows(), d2.cols());
    if (grad) grad->resize(d2.rows(), d2.cols());
    for (Eigen::Index j = 0; j < d2.cols(); ++j) {
      for (Eigen::Index i = 0; i < d2.rows(); ++i) {
        const double r2 = d2(i, j) / (l * l);
        double k = 0.0, g = 0.0;
        if (nu_ <= 0.0) {
          k = std::exp(-0.5 * r2);
          g = r2 * k;
        } else if (nu_ == 0.5) {
          const double r = std::sqrt(r2);
          k = std::exp(-r);
          g = r * k;
        } else if (nu_ == 1.5) {
          const double r = std::sqrt(3.0 * r2);
          const double e = std::exp(-r);
          k = (1.0 + r) * e;
          g = r * r * e;
        } else {
          const double r = std::sqrt(5.0 * r2);
          const double e = std::exp(-r);
          k = (1.0 + r + r * r / 3.0) * e;
          g = r * r * (1.0 + r) / 3.0 * e;
        }
        K(i, j) = k;
        if (grad) (*grad)(i, j) = g;
      }
    }
    return K;
  }

  Hyperparameter length_;
  double nu_;
};

class Sum : public Kernel {
 public:
  Sum(std::unique_ptr<Kernel> a, std::unique_ptr<Kernel> b) : a_(std::move(a)), b_(std::move(b)) {}
  Matrix cross(const Matrix& A, const Matrix& B) const override {
    return a_->cross(A, B) + b_->cross(A, B);
  }
  Matrix gram(const Matrix& X, std::vector<Matrix>* grads) const override {
    Matrix K = a_->gram(X, grads);
    K += b_->gram(X, grads);
    return K;
  }
  Vector diag(const Matrix& X) const override { return a_->diag(X) + b_->diag(X); }
  std::string repr() const override { return a_->repr() + " + " + b_->repr(); }
  std::unique_ptr<Kernel> clone() const override {
    return std::make_unique<Sum>(a_->clone(), b_->clone());
  }
  void collect(std::vector<Hyperparameter*>& out) override {
    a_->collect(out);
    b_->collect(out);
  }

 private:
  std::unique_ptr<Kernel> a_, b_;
};

class Product : public Kernel {
 public:
  Product(std::unique_ptr<Kernel> a, std::unique_ptr<Kernel> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  Matrix cross(const Matrix& A, const Matrix& B) const override {
    return a_->cross(A, B).cwiseProduct(b_->cross(A, B));
  }
  Matrix gram(const Matrix& X, std::vector<Matrix>* grads) const override {
    std::vector<Matrix> ga, gb;
    const Matrix Ka = a_->gram(X, grads ? &ga : nullptr);
    const Matrix Kb = b_->gram(X, grads ? &gb : nullptr);
    if (grads) {
      for (auto& g : ga) grads->push_back(g.cwiseProduct(Kb));
      for (auto& g : gb) grads->push_back(Ka.cwiseProduct(g));
    }
    return Ka.cwiseProduct(Kb);
  }
  Vector diag(const Matrix& X) const override {
    return a_->diag(X).cwiseProduct(b_->diag(X));
  }
  std::string repr() const override { return a_->repr() + " * " + b_->repr(); }
  std::unique_ptr<Kernel> clone() const override {
    return std::make_unique<Product>(a_->clone(), b_->clone());
  }
  void collect(std::vector<Hyperparameter*>& out) override {
    a_->collect(out);
    b_->collect(out);
  }

 private:
  std::unique_ptr<Kernel> a_, b_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<Kernel> run() {
    auto k = sum();
    skip();
    if (pos_ != text_.size()) fail("trailing text");
    return k;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("kernel '{}': {} at offset {}", text_, what, pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail(fmt::format("expected '{}'", token));
  }

  std::unique_ptr<Kernel> sum() {
    auto k = product();
    while (accept("+")) k = std::make_unique<Sum>(std::move(k), product());
    return k;
  }

  std::unique_ptr<Kernel> product() {
    auto k = factor();
    while (true) {
      skip();
      if (text_.substr(pos_, 2) == "**") fail("unexpected '**'");
      if (!accept("*")) break;
      k = std::make_unique<Product>(std::move(k), factor());
    }
    return k;
  }

  double number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) ||
            (text_[pos_] == '-' && pos_ == start))) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    try {
      return std::stod(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail("bad number");
    }
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  struct Value {
    bool fixed = false;
    bool pair = false;
    double a = 0.0, b = 0.0;
  };

  Value value() {
    Value v;
    if (accept("\"fixed\"") || accept("'fixed'") || accept("fixed")) {
      v.fixed = true;
      return v;
    }
    if (accept("(")) {
      v.pair = true;
      v.a = number();
      expect(",");
      v.b = number();
      expect(")");
      return v;
    }
    v.a = number();
    return v;
  }

  std::unique_ptr<Kernel> factor() {
    skip();
    if (pos_ < text_.size() &&
        (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      double c = number();
      if (accept("**")) c = std::pow(c, number());
      return std::make_unique<Constant>(Hyperparameter{"constant_value", c, 1e-5, 1e5, false});
    }
    if (accept("(")) {
      auto k = sum();
      expect(")");
      return k;
    }
    const std::string name = identifier();
    if (name.empty()) fail("expected a kernel");
    expect("(");
    std::vector<Value> positional;
    std::map<std::string, Value> keyword;
    skip();
    if (!accept(")")) {
      while (true) {
        skip();
        const std::size_t mark = pos_;
        const std::string key = identifier();
        if (!key.empty() && key != "fixed" && accept("=")) {
          keyword[key] = value();
        } else {
          pos_ = mark;
          positional.push_back(value());
        }
        if (accept(")")) break;
        expect(",");
      }
    }
    auto take = [&](const std::string& key, std::size_t position, double fallback) {
      if (keyword.count(key)) {
        const Value v = keyword[key];
        keyword.erase(key);
        if (v.pair || v.fixed) fail(fmt::format("{} must be a number", key));
        return v.a;
      }
      if (position < positional.size()) return positional[position].a;
      return fallback;
    };
    auto bounds = [&](Hyperparameter& h, const std::string& key) {
      if (!keyword.count(key)) return;
      const Value v = keyword[key];
      keyword.erase(key);
      if (v.fixed) {
        h.fixed = true;
      } else if (v.pair && v.a > 0 && v.b >= v.a) {
        h.lower = v.a;
        h.upper = v.b;
      } else {
        fail(fmt::format("bad {}", key));
      }
    };
    std::unique_ptr<Kernel> k;
    if (name == "RBF" || name == "Matern") {
      Hyperparameter h{"length_scale", take("length_scale", 0, 1.0), 1e-5, 1e5, false};
      bounds(h, "length_scale_bounds");
      double nu = -1.0;
      if (name == "Matern") {
        nu = take("nu", 1, 1.5);
        if (nu != 0.5 && nu != 1.5 && nu != 2.5) fail("Matern nu must be 0.5, 1.5 or 2.5");
      }
      if (!(h.value > 0)) fail("length_scale must be positive");
      k = std::make_unique<Stationary>(h, nu);
    } else if (name == "WhiteKernel") {
      Hyperparameter h{"noise_level", take("noise_level", 0, 1.0), 1e-5, 1e5, false};
      bounds(h, "noise_level_bounds");
      if (!(h.value > 0)) fail("noise_level must be positive");
      k = std::make_unique<White>(h);
    } else if (name == "ConstantKernel" || name == "C") {
      Hyperparameter h{"constant_value", take("constant_value", 0, 1.0), 1e-5, 1e5, false};
      bounds(h, "constant_value_bounds");
      if (!(h.value > 0)) fail("constant_value must be positive");
      k = std::make_unique<Constant>(h);
    } else {
      fail(fmt::format("unknown kernel '{}'", name));
    }
    if (!keyword.empty()) fail(fmt::format("unknown argument '{}'", keyword.begin()->first));
    return k;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Hyperparameter*> Kernel::hyperparameters() {
  std::vector<Hyperparameter*> out;
  collect(out);
  return out;
}

std::vector<Hyperparameter*> Kernel::free_hyperparameters() {
  std::vector<Hyperparameter*> out;
  for (Hyperparameter* h : hyperparameters()) {
    if (!h->fixed) out.push_back(h);
  }
  return out;
}

Vector Kernel::theta() {
  const auto free = free_hyperparameters();
  Vector t(static_cast<Eigen::Index>(free.size()));
  for (std::size_t i = 0; i < free.size(); ++i) t(static_cast<Eigen::Index>(i)) = std::log(free[i]->value);
  return t;
}

void Kernel::set_theta(const Vector& theta) {
  const auto free = free_hyperparameters();
  if (static_cast<Eigen::Index>(free.size()) != theta.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "theta size mismatch");
  }
  for (std::size_t i = 0; i < free.size(); ++i) free[i]->value = std::exp(theta(static_cast<Eigen::Index>(i)));
}

Matrix Kernel::theta_bounds() {
  const auto free = free_hyperparameters();
  Matrix b(static_cast<Eigen::Index>(free.size()), 2);
  for (std::size_t i = 0; i < free.size(); ++i) {
    b(static_cast<Eigen::Index>(i), 0) = std::log(free[i]->lower);
    b(static_cast<Eigen::Index>(i), 1) = std::log(free[i]->upper);
  }
  return b;
}

std::unique_ptr<Kernel> parse_kernel(std::string_view text) { return Parser(text).run(); }

}  // namespace amine::learn
