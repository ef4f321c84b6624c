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


#include "signal/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "common/error.hpp"

namespace amine::signal {

using Eigen::MatrixXd;
using Eigen::VectorXd;

LmResult levenberg_marquardt(const ResidualFn& fn, VectorXd p, int max_iterations) {
  VectorXd r;
  MatrixXd J;
  fn(p, r, &J);
  double rss = r.squaredNorm();
  if (!std::isfinite(rss)) throw Error(ErrorCode::kNonConvergence, "non-finite residual at start");
  double lambda = 1e-3;
  LmResult out;
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    const MatrixXd JtJ = J.transpose() * J;
    const VectorXd g = J.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + rss)) {
      out.converged = true;
      break;
    }
    VectorXd diag = JtJ.diagonal().cwiseMax(1e-12 * std::max(1.0, JtJ.diagonal().maxCoeff()));
    bool improved = false;
    bool stalled = false;
    for (int inner = 0; inner < 60; ++inner) {
      MatrixXd A = JtJ;
      A.diagonal() += lambda * diag;
      const VectorXd step = A.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const VectorXd trial = p + step;
      VectorXd rt;
      fn(trial, rt, nullptr);
      const double rss_t = rt.squaredNorm();
      if (std::isfinite(rss_t) && rss_t <= rss) {
        const double gain = rss - rss_t;
        const double rel_step = step.norm() / (p.norm() + 1e-12);
        p = trial;
        fn(p, r, &J);
        const double before = rss;
        rss = r.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-15);
        improved = true;
        if (rel_step < 1e-13 || gain <= 1e-16 * before || rss < 1e-30) stalled = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e16) break;
    }
    if (!improved || stalled) {
      out.converged = true;
      break;
    }
  }
  out.params = p;
  out.rss = rss;
  return out;
}

std::string_view fit_kind_name(FitKind kind) {
  switch (kind) {
    case FitKind::kExponential: return "exponential";
    case FitKind::kLogistic: return "logistic";
    case FitKind::kLinear: return "linear";
  }
  return "?";
}

FitKind parse_fit_kind(std::string_view name) {
  if (name == "exponential") return FitKind::kExponential;
  if (name == "logistic") return FitKind::kLogistic;
  if (name == "linear") return FitKind::kLinear;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown fit kind '{}'", name));
}

double SignalFit::raw(double t) const {
  const auto& q = params;
  switch (kind) {
    case FitKind::kExponential: return q[0] + q[1] * std::exp(-q[2] * (t - t0));
    case FitKind::kLogistic: {
      const double z = q[2] * (t - q[3]);
      // 1 / (1 + e^z) without overflow
      const double g = z > 0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
      return q[0] + q[1] * g;
    }
    case FitKind::kLinear: return q[0] * t + q[1];
  }
  return 0.0;
}

double SignalFit::operator()(double t) const { return std::clamp(raw(t), 0.0, 1.0); }

namespace {

void check_series(const std::vector<double>& t, const std::vector<double>& y, std::size_t min_points) {
  if (t.size() != y.size()) throw Error(ErrorCode::kLengthMismatch, "fit: t and y differ in length");
  if (t.size() < min_points) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("fit: need at least {} points", min_points));
  }
}

double tail_level(const std::vector<double>& y) {
  const std::size_t m = std::max<std::size_t>(1, y.size() / 20);
  double s = 0.0;
  for (std::size_t i = y.size() - m; i < y.size(); ++i) s += y[i];
  return s / double(m);
}

// Time at which y first crosses the midpoint between its first value and
// the tail level.
double midpoint_time(const std::vector<double>& t, const std::vector<double>& y, double tail) {
  const double mid = 0.5 * (y.front() + tail);
  for (std::size_t i = 1; i < y.size(); ++i) {
    if ((y[i - 1] - mid) * (y[i] - mid) <= 0 && y[i] != y[i - 1]) {
      return t[i - 1] + (mid - y[i - 1]) * (t[i] - t[i - 1]) / (y[i] - y[i - 1]);
    }
  }
  return 0.5 * (t.front() + t.back());
}

bool constant_series(const std::vector<double>& y) {
  return std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); });
}

}  // namespace

SignalFit fit_linear(const std::vector<double>& t, const std::vector<double>& y) {
  check_series(t, y, 2);
  const std::size_t n = t.size();
  double mt = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= double(n);
  my /= double(n);
  double stt = 0, sty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  SignalFit f;
  f.kind = FitKind::kLinear;
  const double m = stt > 0 ? sty / stt : 0.0;
  f.params = {m, my - m * mt};
  for (std::size_t i = 0; i < n; ++i) f.rss += std::pow(f.raw(t[i]) - y[i], 2);
  return f;
}

SignalFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y) {
  check_series(t, y, 4);
  SignalFit f;
  f.kind = FitKind::kExponential;
  f.t0 = t.front();
  const std::size_t n = t.size();
  if (constant_series(y)) {
    f.params = {y.front(), 0.0, 0.0};
    return f;
  }
  const double span = t.back() - t.front();
  const double tail = tail_level(y);
  const double th = midpoint_time(t, y, tail);
  const double k0 = std::log(2.0) / std::max(th - f.t0, span / double(n));

  const ResidualFn fn = [&](const VectorXd& p, VectorXd& r, MatrixXd* J) {
    r.resize(static_cast<Eigen::Index>(n));
    if (J) J->resize(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double tau = t[i] - f.t0;
      const double e = std::exp(-p(2) * tau);
      r(ii) = p(0) + p(1) * e - y[i];
      if (J) {
        (*J)(ii, 0) = 1.0;
        (*J)(ii, 1) = e;
        (*J)(ii, 2) = -p(1) * tau * e;
      }
    }
  };
  LmResult best;
  best.rss = std::numeric_limits<double>::infinity();
  for (double scale : {1.0, 0.3, 3.0}) {
    VectorXd p0(3);
    p0 << tail, y.front() - tail, k0 * scale;
    try {
      const LmResult r = levenberg_marquardt(fn, p0);
      if (r.rss < best.rss) best = r;
    } catch (const Error&) {
    }
  }
  if (!std::isfinite(best.rss)) throw Error(ErrorCode::kNonConvergence, "exponential fit failed");
  f.params = {best.params(0), best.params(1), best.params(2)};
  f.rss = best.rss;
  f.converged = best.converged;
  return f;
}

SignalFit fit_logistic(const std::vector<double>& t, const std::vector<double>& y) {
  check_series(t, y, 5);
  SignalFit f;
  f.kind = FitKind::kLogistic;
  const std::size_t n = t.size();
  if (constant_series(y)) {
    f.params = {y.front(), 0.0, 0.0, t.front()};
    return f;
  }
  const double span = t.back() - t.front();
  const double tail = tail_level(y);
  const double tm = midpoint_time(t, y, tail);

  const ResidualFn fn = [&](const VectorXd& p, VectorXd& r, MatrixXd* J) {
    r.resize(static_cast<Eigen::Index>(n));
    if (J) J->resize(static_cast<Eigen::Index>(n), 4);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double z = p(2) * (t[i] - p(3));
      const double g = z > 0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
      r(ii) = p(0) + p(1) * g - y[i];
      if (J) {
        const double dg = -g * (1.0 - g);  // dg/dz
        (*J)(ii, 0) = 1.0;
        (*J)(ii, 1) = g;
        (*J)(ii, 2) = p(1) * dg * (t[i] - p(3));
        (*J)(ii, 3) = -p(1) * dg * p(2);
      }
    }
  };
  LmResult best;
  best.rss = std::numeric_limits<double>::infinity();
  for (double scale : {1.0, 0.3, 3.0}) {
    VectorXd p0(4);
    p0 << tail, y.front() - tail, scale * 8.0 / span, tm;
    try {
      const LmResult r = levenberg_marquardt(fn, p0);
      if (r.rss < best.rss) best = r;
    } catch (const Error&) {
    }
  }
  if (!std::isfinite(best.rss)) throw Error(ErrorCode::kNonConvergence, "logistic fit failed");
  f.params = {best.params(0), best.params(1), best.params(2), best.params(3)};
  f.rss = best.rss;
  f.converged = best.converged;
  return f;
}

SignalFit fit_signal(const std::vector<double>& t, const std::vector<double>& y, std::string_view kind,
                     const FitOptions& options) {
  auto guarded = [&](SignalFit (*fitter)(const std::vector<double>&, const std::vector<double>&)) {
    try {
      SignalFit f = fitter(t, y);
      if (f.converged) return f;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonConvergence) throw;
    }
    SignalFit lin = fit_linear(t, y);
    lin.fell_back = true;
    return lin;
  };
  if (kind == "linear") return fit_linear(t, y);
  if (kind == "exponential") return guarded(fit_exponential);
  if (kind == "logistic") return guarded(fit_logistic);
  if (kind != "auto" && !kind.empty()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown fit kind '{}'", kind));
  }
  std::vector<SignalFit> fits{fit_linear(t, y)};
  for (auto fitter : {fit_exponential, fit_logistic}) {
    try {
      SignalFit f = fitter(t, y);
      if (f.converged) fits.push_back(std::move(f));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonConvergence) throw;
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : fits) best = std::min(best, f.rss);
  double mean = 0.0, sst = 0.0;
  for (double v : y) mean += v;
  mean /= double(y.size());
  for (double v : y) sst += (v - mean) * (v - mean);
  const double allowed = best + std::max(best * options.relative_margin, sst * options.variance_margin);
  for (const auto& f : fits) {
    if (f.rss <= allowed) return f;
  }
  return fits.front();
}

}  // namespace amine::signal
