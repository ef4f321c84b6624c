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


#include "signal/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/log.hpp"

namespace amine::signal {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double flow_cm3_per_s(const Calibration& cal) { return cal.q_sccm / 60.0; }

double mean_of(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += v[i];
  return s / double(end - begin);
}

struct CumulativeFit {
  double volume = 0.0;
  double k = 0.0;
  bool ok = false;
};

// cum(t) = V (exp(-k t0) - exp(-k t)), t0 the first sample time, fitted in
// log parameters so V and k stay positive.
CumulativeFit fit_cumulative(const std::vector<double>& t, const std::vector<double>& cum) {
  const std::size_t n = t.size();
  const double t0 = t.front();
  const double last = cum.back();
  double t63 = t.back();
  for (std::size_t i = 0; i < n; ++i) {
    if (cum[i] >= 0.632 * last) {
      t63 = t[i];
      break;
    }
  }
  const double k0 = 1.0 / std::max(t63 - t0, (t.back() - t0) / double(n));
  const ResidualFn fn = [&](const VectorXd& p, VectorXd& r, MatrixXd* J) {
    const double V = std::exp(p(0)), k = std::exp(p(1));
    const double e0 = std::exp(-k * t0);
    r.resize(static_cast<Eigen::Index>(n));
    if (J) J->resize(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double e = std::exp(-k * t[i]);
      r(ii) = V * (e0 - e) - cum[i];
      if (J) {
        (*J)(ii, 0) = V * (e0 - e);
        (*J)(ii, 1) = V * k * (-t0 * e0 + t[i] * e);
      }
    }
  };
  CumulativeFit best;
  double best_rss = std::numeric_limits<double>::infinity();
  for (double scale : {1.0, 0.25, 4.0}) {
    VectorXd p0(2);
    const double k = k0 * scale;
    const double denom = std::exp(-k * t0) - std::exp(-k * t.back());
    p0 << std::log(last / std::max(denom, 1e-12)), std::log(k);
    try {
      const LmResult r = levenberg_marquardt(fn, p0, 500);
      if (r.converged && r.rss < best_rss && r.params.allFinite()) {
        best_rss = r.rss;
        best = {std::exp(r.params(0)), std::exp(r.params(1)), true};
      }
    } catch (const Error&) {
    }
  }
  // A fit that never bends (k -> 0, V -> infinity) carries no total.
  if (best.ok && (!std::isfinite(best.volume) || best.volume > 1e3 * std::max(last, 1e-12) ||
                  best.k * (t.back() - t0) < 1e-3)) {
    best.ok = false;
  }
  return best;
}

}  // namespace

double moles_from_volume(double volume_cm3, const Calibration& cal) {
  return cal.P_atm * volume_cm3 / (kGasConstant * cal.T_gas_K);
}

double volume_from_moles(double mol, const Calibration& cal) {
  return mol * kGasConstant * cal.T_gas_K / cal.P_atm;
}

AbsorptionResult compute_absorption(const SignalTrace& trace, const Calibration& cal, double n_amine,
                                    const AbsorptionOptions& options) {
  validate(cal);
  if (!(n_amine > 0) || !std::isfinite(n_amine)) {
    throw Error(ErrorCode::kInvalidArgument, "n_amine must be positive");
  }
  if (options.rate_method != "fit" && options.rate_method != "slope") {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown rate method '{}'", options.rate_method));
  }
  const std::vector<double> T_all = normalize(trace, cal);

  // Shift by the apparatus delay and drop samples recorded before the gas
  // front reached the detector.
  const double delay = cal.delay_min * 60.0;
  std::size_t first = 0;
  while (first < trace.t.size() && trace.t[first] - delay < 0) ++first;
  std::vector<double> t, T;
  for (std::size_t i = first; i < trace.t.size(); ++i) {
    t.push_back(trace.t[i] - delay);
    T.push_back(T_all[i]);
  }
  if (t.size() < std::max<std::size_t>(options.rolloff.window, 5)) {
    throw Error(ErrorCode::kInvalidArgument, "trace too short after removing the apparatus delay");
  }

  AbsorptionResult res;
  const double sat = cal.saturation_transmission();
  const double depleted_level = 1.0 - options.depleted_band * (1.0 - sat);
  const auto rolloff = detect_rolloff(T, options.rolloff);
  std::size_t start = 0;
  bool all_depleted = false;
  if (rolloff) {
    if (*rolloff > 0 && mean_of(T, 0, *rolloff) >= depleted_level) start = *rolloff;
  } else if (mean_of(T, 0, T.size()) >= depleted_level) {
    all_depleted = true;
    start = T.size();
  }
  if (!all_depleted && T.size() - start < 5) start = T.size() - 5;
  res.rolloff_index = first + start;
  res.depleted_throughout = all_depleted;

  SignalFit fit;
  if (!all_depleted) {
    const std::vector<double> ft(t.begin() + static_cast<std::ptrdiff_t>(start), t.end());
    const std::vector<double> fy(T.begin() + static_cast<std::ptrdiff_t>(start), T.end());
    fit = fit_signal(ft, fy, options.fit_kind, options.fit);
    res.fit_kind = fit.kind;
    res.fit_rss = fit.rss;
    res.fit_fell_back = fit.fell_back;
    if (fit.fell_back) log::warn("signal fit did not converge; using the linear fit");
  }

  // Absorbed volume rate along the fitted transmission.
  const double q = flow_cm3_per_s(cal);
  std::vector<double> rate(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double F = i < start ? 1.0 : fit(t[i]);
    const double C = beer_lambert_invert(1.0 - F, cal);
    rate[i] = q * (cal.f_o - C);
  }
  std::vector<double> cum(t.size(), 0.0);
  bool negative = false;
  for (std::size_t i = 1; i < t.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (rate[i] + rate[i - 1]) * (t[i] - t[i - 1]);
  }
  for (double& v : cum) {
    if (v < 0) {
      v = 0.0;
      negative = true;
    }
  }
  if (negative) log::warn("negative cumulative absorption clamped to 0");

  if (cum.back() <= 0) return res;  // nothing absorbed

  const CumulativeFit cf = fit_cumulative(t, cum);
  if (cf.ok) {
    res.total_volume_cm3 = cf.volume;
    res.k_c = cf.k;
  } else {
    res.cumulative_fallback = true;
    log::warn("cumulative first-order fit failed; using the integrated total");
    res.total_volume_cm3 = cum.back();
    res.k_c = std::max(rate.front(), 0.0) / cum.back();
  }
  res.total_mol_co2 = moles_from_volume(res.total_volume_cm3, cal);
  res.alpha = res.total_mol_co2 / n_amine;

  if (options.rate_method == "fit") {
    res.initial_rate = res.alpha * res.k_c;
  } else {
    const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(std::max(2, options.slope_points)), t.size());
    std::vector<double> ts(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<double> ys;
    for (std::size_t i = 0; i < m; ++i) ys.push_back(moles_from_volume(cum[i], cal) / n_amine);
    res.initial_rate = std::max(0.0, fit_linear(ts, ys).params[0]);
  }
  return res;
}

double max_feasible_kc(double alpha, double n_amine, const Calibration& cal) {
  const double V = volume_from_moles(alpha * n_amine, cal);
  return cal.f_o * flow_cm3_per_s(cal) / V;
}

SignalTrace simulate_trace(double alpha, double k_c, double n_amine, const Calibration& cal,
                           const SimulationOptions& options) {
  validate(cal);
  if (alpha < 0 || k_c < 0 || !(n_amine > 0) || options.noise < 0 || !(options.duration_s > 0) ||
      options.samples < 10) {
    throw Error(ErrorCode::kInvalidArgument, "simulate_trace: invalid arguments");
  }
  const double V = volume_from_moles(alpha * n_amine, cal);
  const double A0 = V * k_c / flow_cm3_per_s(cal);
  if (A0 > cal.f_o * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("absorbed fraction {} at t=0 exceeds the supply fraction {}", A0, cal.f_o));
  }
  const double delay = cal.delay_min * 60.0;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  SignalTrace tr;
  const std::size_t n = options.samples;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = options.duration_s * double(i) / double(n - 1);
    const double tau = std::max(0.0, t - delay);
    const double C = std::max(0.0, cal.f_o - A0 * std::exp(-k_c * tau));
    const double T = 1.0 - beer_lambert_forward(C, cal);
    const double ref = 1.0 + (options.noise > 0 ? options.noise * nd(rng) : 0.0);
    const double sig = cal.zero_T * T * ref * (1.0 + (options.noise > 0 ? options.noise * nd(rng) : 0.0));
    tr.t.push_back(t);
    tr.ch_signal.push_back(sig);
    tr.ch_reference.push_back(ref);
  }
  return tr;
}

}  // namespace amine::signal
