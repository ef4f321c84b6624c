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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace amine::signal {

// Residuals r(p) and optionally the Jacobian dr/dp.
using ResidualFn = std::function<void(const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* J)>;

struct LmResult {
  Eigen::VectorXd params;
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Levenberg-Marquardt with Marquardt diagonal scaling.
LmResult levenberg_marquardt(const ResidualFn& fn, Eigen::VectorXd p0, int max_iterations = 500);

enum class FitKind { kExponential, kLogistic, kLinear };

std::string_view fit_kind_name(FitKind kind);
FitKind parse_fit_kind(std::string_view name);

// Normalized transmission model after roll-off:
//   exponential  F = s + d exp(-k (t - t0))
//   logistic     F = s + d / (1 + exp(k (t - tm)))
//   linear       F = m t + c0
// evaluated values are clamped to [0, 1].
struct SignalFit {
  FitKind kind = FitKind::kLinear;
  std::vector<double> params;  // exponential {s, d, k}; logistic {s, d, k, tm}; linear {m, c0}
  double t0 = 0.0;             // exponential reference time
  double rss = 0.0;
  bool converged = true;
  // Set when a nonlinear fit failed and the linear fit was used instead.
  bool fell_back = false;

  double raw(double t) const;
  double operator()(double t) const;
};

SignalFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y);
SignalFit fit_logistic(const std::vector<double>& t, const std::vector<double>& y);
SignalFit fit_linear(const std::vector<double>& t, const std::vector<double>& y);

struct FitOptions {
  // Automatic selection keeps the simplest model (linear, exponential,
  // logistic) whose RSS exceeds the best by at most `relative_margin` of the
  // best RSS or `variance_margin` of the total sum of squares.
  double relative_margin = 0.01;
  double variance_margin = 1e-4;
};

// Fits `kind`, or selects among the three when `kind` is empty ("auto").
// Nonlinear fits that fail to converge fall back to linear with a flag.
SignalFit fit_signal(const std::vector<double>& t, const std::vector<double>& y,
                     std::string_view kind = "auto", const FitOptions& options = {});

}  // namespace amine::signal
