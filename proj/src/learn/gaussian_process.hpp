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

#include "learn/classifier.hpp"
#include "learn/kernels.hpp"

namespace amine::learn {

// Laplace approximation to the GP posterior under a logistic likelihood.
struct LaplaceResult {
  double log_marginal = 0.0;
  // d(log_marginal)/d(theta), theta = log of the free kernel hyperparameters.
  Vector gradient;
  Vector f;       // posterior mode
  Vector pi;      // sigmoid(f)
  int newton_iterations = 0;
};

// Finds the posterior mode by Newton iteration and evaluates the approximate
// log marginal likelihood. `kernel` must already carry the hyperparameters
// to evaluate.
LaplaceResult laplace(Kernel& kernel, const Matrix& X, const Labels& y, bool with_gradient);

// Maximizes the Laplace log marginal likelihood over the free
// hyperparameters within their bounds. Leaves the optimum in `kernel`.
void optimize_hyperparameters(Kernel& kernel, const Matrix& X, const Labels& y);

class GaussianProcessClassifier : public Classifier {
 public:
  explicit GaussianProcessClassifier(const Json& params);
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Vector predict_proba(const Matrix& X) const override;
  Json save() const override;
  void load(const Json& state) override;

  // Kernel with fitted hyperparameters, in the input notation.
  std::string kernel_repr() const { return kernel_->repr(); }
  double log_marginal_likelihood() const { return log_marginal_; }
  // Posterior latent mean and variance at the given rows.
  void latent(const Matrix& X, Vector& mean, Vector& variance) const;

 private:
  void factorize();

  std::string kernel_text_;
  std::unique_ptr<Kernel> kernel_;
  Matrix X_;
  Labels y_;
  Vector f_;
  // Cached from f_: y - pi, sqrt(W) and the lower Cholesky factor of
  // I + sqrt(W) K sqrt(W).
  Vector residual_;
  Vector sqrt_w_;
  Matrix L_;
  double log_marginal_ = 0.0;
};

}  // namespace amine::learn
