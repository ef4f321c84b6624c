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

#include <cstdint>
#include <string>

#include "signal/fit.hpp"
#include "signal/signal.hpp"

namespace amine::signal {

// cm^3 atm / (mol K)
inline constexpr double kGasConstant = 82.057366;

struct AbsorptionOptions {
  RolloffOptions rolloff;
  std::string fit_kind = "auto";
  FitOptions fit;
  // "fit": alpha * k_c from the cumulative fit. "slope": least-squares slope
  // of the per-amine cumulative over the first `slope_points` samples.
  std::string rate_method = "fit";
  int slope_points = 5;
  // A pre-roll-off span counts as depleted when its mean normalized
  // transmission lies within this fraction of the full scale (1 - sat) of 1.
  double depleted_band = 0.1;
};

struct AbsorptionResult {
  double alpha = 0.0;         // mol CO2 / mol amine
  double initial_rate = 0.0;  // mol CO2 / mol amine / s
  FitKind fit_kind = FitKind::kLinear;
  double total_mol_co2 = 0.0;
  std::size_t rolloff_index = 0;  // sample where the fitted span starts
  double total_volume_cm3 = 0.0;
  double k_c = 0.0;  // 1/s
  double fit_rss = 0.0;
  bool fit_fell_back = false;
  bool depleted_throughout = false;
  // The cumulative first-order fit failed; totals come from the last
  // cumulative value.
  bool cumulative_fallback = false;
};

// Ideal gas law at the calibration temperature and pressure.
double moles_from_volume(double volume_cm3, const Calibration& cal);
double volume_from_moles(double mol, const Calibration& cal);

AbsorptionResult compute_absorption(const SignalTrace& trace, const Calibration& cal, double n_amine,
                                    const AbsorptionOptions& options = {});

struct SimulationOptions {
  double duration_s = 3600.0;
  std::size_t samples = 1000;
  // Relative standard deviation of multiplicative Gaussian noise on each
  // channel.
  double noise = 0.0;
  std::uint64_t seed = 0;
};

// Forward model: cumulative absorption V_tot (1 - exp(-k_c tau)) with
// V_tot from alpha * n_amine, exhaust fraction f_o - A0 exp(-k_c tau),
// detector time t = tau + delay, Beer-Lambert to transmission. Throws
// InvalidArgument when the initial absorbed fraction A0 would exceed f_o.
SignalTrace simulate_trace(double alpha, double k_c, double n_amine, const Calibration& cal,
                           const SimulationOptions& options = {});

// Largest k_c the supply can sustain for the given alpha and amine amount.
double max_feasible_kc(double alpha, double n_amine, const Calibration& cal);

}  // namespace amine::signal
