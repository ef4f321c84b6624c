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

struct Hyperparameter {
  std::string name;
  double value = 1.0;
  double lower = 1e-5;
  double upper = 1e5;
  bool fixed = false;
};

// Covariance function built from constants, RBF, Matern and white noise
// with + and *. Gradients are taken with respect to the natural log of
// each free hyperparameter.
class Kernel {
 public:
  virtual ~Kernel() = default;

  // K(A, B) between distinct point sets; white noise contributes nothing.
  virtual Matrix cross(const Matrix& A, const Matrix& B) const = 0;
  // K(X, X). When `grads` is given, one dK/dlog(theta) per free
  // hyperparameter is appended in hyperparameters() order.
  virtual Matrix gram(const Matrix& X, std::vector<Matrix>* grads) const = 0;
  virtual Vector diag(const Matrix& X) const = 0;
  virtual std::string repr() const = 0;
  virtual std::unique_ptr<Kernel> clone() const = 0;

  // Every hyperparameter, fixed ones included, in a stable order.
  virtual void collect(std::vector<Hyperparameter*>& out) = 0;

  std::vector<Hyperparameter*> hyperparameters();
  std::vector<Hyperparameter*> free_hyperparameters();
  // Natural logs of the free hyperparameters.
  Vector theta();
  void set_theta(const Vector& theta);
  // Bounds of theta (log space), columns lower/upper.
  Matrix theta_bounds();
};

// Parses expressions such as
//   "1**2 * Matern(length_scale=0.6, nu=0.5) + WhiteKernel(noise_level=0.1)"
//   "1.0 * RBF(1.0) + WhiteKernel(noise_level=0.5)"
//   "Matern(length_scale=0.5, length_scale_bounds=(1e-7, 1e7), nu=1.5)"
// Supported terms: RBF, Matern (nu 0.5, 1.5, 2.5), WhiteKernel,
// ConstantKernel / C and bare numbers (optionally squared with **).
// Bounds may be a (low, high) pair or "fixed".
std::unique_ptr<Kernel> parse_kernel(std::string_view text);

}  // namespace amine::learn
