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


#include <cmath>
#include <random>

#include "common/error.hpp"
#include "doctest.h"
#include "signal/absorption.hpp"
#include "signal/fit.hpp"
#include "signal/signal.hpp"

using namespace amine;
using namespace amine::signal;

namespace {

// 30% w/w MEA, 200 uL: 0.2 mL * 1.012 g/mL * 0.3 / 61.08 g/mol.
const double kMeaMol = 0.2 * 1.012 * 0.3 / 61.08;

SignalTrace flat_trace(std::size_t n, double sig, double ref) {
  SignalTrace tr;
  for (std::size_t i = 0; i < n; ++i) {
    tr.t.push_back(double(i));
    tr.ch_signal.push_back(sig);
    tr.ch_reference.push_back(ref);
  }
  return tr;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("normalize") {
  Calibration cal;
  for (double v : normalize(flat_trace(20, 0.7, 0.7), cal)) CHECK(v == 1.0);
  for (double v : normalize(flat_trace(20, 0.35, 0.7), cal)) CHECK(v == 0.5);
  auto tr = flat_trace(20, 0.7, 0.7);
  tr.ch_reference[5] = 0.0;
  CHECK(code_of([&] { normalize(tr, cal); }) == ErrorCode::kZeroReference);
  tr = flat_trace(20, 3.0, 1.0);
  for (double v : normalize(tr, cal)) CHECK(v == 1.5);
  tr = flat_trace(9, 1, 1);
  CHECK(code_of([&] { normalize(tr, cal); }) == ErrorCode::kInvalidArgument);
  tr = flat_trace(12, 1, 1);
  tr.t[4] = tr.t[3];
  CHECK(code_of([&] { normalize(tr, cal); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("roll-off detection") {
  CHECK_FALSE(detect_rolloff(std::vector<double>(100, 0.8)).has_value());

  std::vector<double> step(100, 1.0);
  for (std::size_t i = 50; i < step.size(); ++i) step[i] = 0.6;
  const auto r = detect_rolloff(step);
  REQUIRE(r.has_value());
  // Direct rolling computation: the first window holding sample 50 starts
  // at 41, and any window mixing the two levels exceeds the threshold.
  CHECK(*r == 41);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0.0, 0.01);
  std::vector<double> noise;
  for (int i = 0; i < 100; ++i) noise.push_back(1.0 + nd(rng));
  CHECK(detect_rolloff(noise) == std::optional<std::size_t>(0));

  CHECK_THROWS_AS(detect_rolloff(std::vector<double>(5, 1.0)), Error);
}

TEST_CASE("exponential data recovers its parameters") {
  std::vector<double> t, y;
  const double s = 0.45, d = 0.5, k = 0.013;
  for (int i = 0; i < 400; ++i) {
    t.push_back(3.0 + i * 1.5);
    y.push_back(s + d * std::exp(-k * (t.back() - 3.0)));
  }
  const SignalFit f = fit_signal(t, y, "exponential");
  REQUIRE(f.kind == FitKind::kExponential);
  CHECK(f.params[0] == doctest::Approx(s).epsilon(1e-6));
  CHECK(f.params[1] == doctest::Approx(d).epsilon(1e-6));
  CHECK(f.params[2] == doctest::Approx(k).epsilon(1e-6));
  CHECK(fit_signal(t, y, "auto").kind == FitKind::kExponential);
}

TEST_CASE("logistic data recovers its parameters") {
  std::vector<double> t, y;
  const double s = 0.4, d = 0.55, k = 0.05, tm = 200;
  for (int i = 0; i < 400; ++i) {
    t.push_back(i);
    y.push_back(s + d / (1.0 + std::exp(k * (i - tm))));
  }
  const SignalFit f = fit_logistic(t, y);
  CHECK(f.params[0] == doctest::Approx(s).epsilon(1e-6));
  CHECK(f.params[1] == doctest::Approx(d).epsilon(1e-6));
  CHECK(f.params[2] == doctest::Approx(k).epsilon(1e-6));
  CHECK(f.params[3] == doctest::Approx(tm).epsilon(1e-6));
  CHECK(fit_signal(t, y, "auto").kind == FitKind::kLogistic);
}

TEST_CASE("linear ramp selects the linear fit") {
  std::vector<double> t, y;
  for (int i = 0; i < 200; ++i) {
    t.push_back(i);
    y.push_back(0.95 - 0.002 * i);
  }
  // RSS oracle: linear is exact, so no other kind can do better.
  const SignalFit lin = fit_linear(t, y);
  CHECK(lin.rss < 1e-20);
  CHECK(fit_signal(t, y, "auto").kind == FitKind::kLinear);
}

TEST_CASE("all-ones series fits F = 1 for every kind") {
  std::vector<double> t, y(50, 1.0);
  for (int i = 0; i < 50; ++i) t.push_back(i);
  for (const char* kind : {"exponential", "logistic", "linear", "auto"}) {
    CAPTURE(kind);
    const SignalFit f = fit_signal(t, y, kind);
    CHECK(f.rss == doctest::Approx(0.0));
    for (double ti : t) CHECK(f(ti) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(fit_signal(t, y, "cubic"), Error);
}

TEST_CASE("Beer-Lambert forward and inverse") {
  Calibration cal;
  cal.a = 0.9;
  cal.b = 12.0;
  cal.c = 1.1;
  CHECK(beer_lambert_invert(0.0, cal) == 0.0);
  CHECK(beer_lambert_invert(beer_lambert_forward(0.1, cal), cal) == doctest::Approx(0.1).epsilon(1e-12));
  for (int i = 1; i < 1000; ++i) {
    const double A = cal.a * i / 1000.0;
    CHECK(std::abs(beer_lambert_forward(beer_lambert_invert(A, cal), cal) - A) < 1e-9);
  }
  CHECK(code_of([&] { beer_lambert_invert(0.9, cal); }) == ErrorCode::kAbsorbanceExceedsA);
  CHECK(code_of([&] { beer_lambert_invert(0.95, cal); }) == ErrorCode::kAbsorbanceExceedsA);
}

TEST_CASE("simulate -> analyze round trip over alpha and two decades of k_c") {
  Calibration cal;
  const double kmax = 0.9 * max_feasible_kc(1.2, kMeaMol, cal);
  for (double alpha : {0.05, 0.4, 1.2}) {
    for (double k : {kmax, kmax / 10, kmax / 100}) {
      CAPTURE(alpha);
      CAPTURE(k);
      SimulationOptions so;
      so.duration_s = 8.0 / k;
      const auto r = compute_absorption(simulate_trace(alpha, k, kMeaMol, cal, so), cal, kMeaMol);
      CHECK(std::abs(r.alpha / alpha - 1) < 0.02);
      CHECK(std::abs(r.initial_rate / (alpha * k) - 1) < 0.05);
    }
  }
}

TEST_CASE("MEA reference fixture") {
  Calibration cal = read_calibration(AMINE_DATA_DIR "/calibration/mea_fixture.cal");
  const double k = 0.0868 / 0.55;
  SimulationOptions so;
  so.duration_s = 120;
  so.samples = 1200;
  const auto r = compute_absorption(simulate_trace(0.55, k, kMeaMol, cal, so), cal, kMeaMol);
  CHECK(r.alpha == doctest::Approx(0.55).epsilon(0.02));
  CHECK(r.initial_rate == doctest::Approx(0.0868).epsilon(0.05));
}

TEST_CASE("water blank stays near background") {
  const Calibration cal = read_calibration(AMINE_DATA_DIR "/calibration/default.cal");
  const double alpha = 20e-6 / kMeaMol;
  const double k = 0.5 * max_feasible_kc(alpha, kMeaMol, cal);
  SimulationOptions so;
  so.duration_s = 10.0 / k;
  const auto r = compute_absorption(simulate_trace(alpha, k, kMeaMol, cal, so), cal, kMeaMol);
  CHECK(r.total_mol_co2 <= 25e-6);
  CHECK(r.alpha < 0.05);
}

TEST_CASE("forward model properties") {
  Calibration cal;
  SimulationOptions so;
  so.duration_s = 20000;

  SUBCASE("zero alpha is pinned at saturation") {
    const auto tr = simulate_trace(0.0, 1e-3, kMeaMol, cal, so);
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      CHECK(tr.ch_signal[i] / tr.ch_reference[i] == doctest::Approx(cal.saturation_transmission()).epsilon(1e-12));
    }
    const auto r = compute_absorption(tr, cal, kMeaMol);
    CHECK(r.alpha == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("doubling the amine at fixed alpha doubles the CO2") {
    const double k = 2e-4;
    const auto r1 = compute_absorption(simulate_trace(0.3, k, kMeaMol, cal, so), cal, kMeaMol);
    const auto r2 = compute_absorption(simulate_trace(0.3, k, 2 * kMeaMol, cal, so), cal, 2 * kMeaMol);
    CHECK(r2.total_mol_co2 / r1.total_mol_co2 == doctest::Approx(2.0).epsilon(0.01));
    CHECK(r2.alpha == doctest::Approx(r1.alpha).epsilon(0.01));
  }
  SUBCASE("infeasible absorption is rejected") {
    CHECK_THROWS_AS(simulate_trace(1.0, 10 * max_feasible_kc(1.0, kMeaMol, cal), kMeaMol, cal, so), Error);
  }
  SUBCASE("uniform time resampling leaves the total unchanged") {
    const double k = 3e-4;
    so.samples = 800;
    const auto a = compute_absorption(simulate_trace(0.5, k, kMeaMol, cal, so), cal, kMeaMol);
    so.samples = 1600;
    const auto b = compute_absorption(simulate_trace(0.5, k, kMeaMol, cal, so), cal, kMeaMol);
    CHECK(std::abs(a.total_mol_co2 / b.total_mol_co2 - 1) < 0.005);
  }
  SUBCASE("slow traces select the linear fit") {
    for (double k : {1e-4, 3e-5}) {
      so.duration_s = 0.05 / k;
      const auto r = compute_absorption(simulate_trace(0.5, k, kMeaMol, cal, so), cal, kMeaMol);
      CHECK(r.fit_kind == FitKind::kLinear);
    }
  }
  SUBCASE("error grows with noise") {
    const double k = 1e-4;
    so.duration_s = 8.0 / k;
    std::vector<double> errors;
    for (double noise : {0.0, 0.003, 0.01, 0.03}) {
      double e = 0.0;
      for (std::uint64_t seed = 0; seed < 6; ++seed) {
        so.noise = noise;
        so.seed = seed;
        const auto r = compute_absorption(simulate_trace(0.5, k, kMeaMol, cal, so), cal, kMeaMol);
        e += std::abs(r.alpha - 0.5);
      }
      errors.push_back(e);
    }
    for (std::size_t i = 1; i < errors.size(); ++i) CHECK(errors[i] >= errors[i - 1]);
  }
  SUBCASE("slope rate method agrees with the fit on fine sampling") {
    const double k = 2e-4;
    so.duration_s = 8.0 / k;
    so.samples = 4000;
    AbsorptionOptions ao;
    ao.rate_method = "slope";
    const auto r = compute_absorption(simulate_trace(0.5, k, kMeaMol, cal, so), cal, kMeaMol, ao);
    CHECK(r.initial_rate == doctest::Approx(0.5 * k).epsilon(0.05));
  }
  SUBCASE("argument checks") {
    const auto tr = simulate_trace(0.5, 1e-4, kMeaMol, cal, so);
    CHECK_THROWS_AS(compute_absorption(tr, cal, 0.0), Error);
    AbsorptionOptions ao;
    ao.rate_method = "guess";
    CHECK_THROWS_AS(compute_absorption(tr, cal, kMeaMol, ao), Error);
  }
}

TEST_CASE("fully depleted trace") {
  Calibration cal;
  // Transmission pinned at 1: every molecule of CO2 absorbed throughout.
  auto tr = flat_trace(200, 1.0, 1.0);
  for (std::size_t i = 0; i < tr.t.size(); ++i) tr.t[i] = 20.0 + 5.0 * double(i);
  const auto r = compute_absorption(tr, cal, kMeaMol);
  CHECK(r.depleted_throughout);
  CHECK(r.cumulative_fallback);
  // Integrated total: q f_o over the post-delay span.
  const double span = tr.t.back() - tr.t.front();
  CHECK(r.total_mol_co2 == doctest::Approx(moles_from_volume(cal.q_sccm / 60 * cal.f_o * span, cal)).epsilon(1e-9));
}

TEST_CASE("file formats") {
  const Calibration cal = parse_calibration("# fixture\na = 0.8\nb=10\nc = 1.2\nf_o = 0.2\nq_sccm = 10\nsat_T = 0.5\n");
  CHECK(cal.a == 0.8);
  CHECK(cal.sat_T == std::optional<double>(0.5));
  CHECK(cal.T_gas_K == 298.15);
  const Calibration back = parse_calibration(format_calibration(cal));
  CHECK(back.b == cal.b);
  CHECK(back.sat_T == cal.sat_T);
  CHECK_THROWS_AS(parse_calibration("a = 1\nmystery = 2\n"), Error);
  CHECK_THROWS_AS(parse_calibration("a = -1\n"), Error);
  CHECK_THROWS_AS(parse_calibration("a 1\n"), Error);

  Calibration c2;
  SimulationOptions so;
  so.samples = 50;
  so.duration_s = 1000;
  so.noise = 0.01;
  const auto tr = simulate_trace(0.5, 1e-3, kMeaMol / 10, c2, so);
  const auto tr2 = parse_trace(format_trace(tr));
  REQUIRE(tr2.t.size() == tr.t.size());
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    CHECK(tr2.ch_signal[i] == doctest::Approx(tr.ch_signal[i]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(parse_trace("time_s,ch_4_3um\n1,2\n"), Error);
}
