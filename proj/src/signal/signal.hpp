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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace amine::signal {

// Two-channel NDIR exhaust trace. Times in seconds.
struct SignalTrace {
  std::vector<double> t;
  std::vector<double> ch_signal;     // 4.3 um
  std::vector<double> ch_reference;  // 3.9 um
};

// Throws InvalidArgument unless lengths agree, are >= 10 and t strictly
// increases.
void validate(const SignalTrace& trace);

struct Calibration {
  double a = 0.9;
  double b = 12.0;
  double c = 1.1;
  double f_o = 0.0996;     // supply CO2 volume fraction
  double q_sccm = 10.0;    // standard cm^3 / min
  double T_gas_K = 298.15;
  double P_atm = 1.0;
  double zero_T = 1.0;     // raw transmission ratio with no CO2
  std::optional<double> sat_T;  // raw transmission ratio at f_o; derived when unset
  double delay_min = 0.16;

  // Normalized transmission at the supply fraction.
  double saturation_transmission() const;
};

void validate(const Calibration& cal);

// Modified Beer-Lambert: A = a (1 - exp(-b C^c)) and its inverse
// C = (ln(1 - A/a) / -b)^(1/c). invert throws AbsorbanceExceedsA for A >= a
// and InvalidArgument for A < 0.
double beer_lambert_forward(double C, const Calibration& cal);
double beer_lambert_invert(double A, const Calibration& cal);

// (signal / reference) / zero_T clamped to (0, 1.5], warning once when
// clamping. Throws ZeroReference on a zero reference sample.
std::vector<double> normalize(const SignalTrace& trace, const Calibration& cal);

struct RolloffOptions {
  std::size_t window = 10;
  double threshold = 0.005;
};

// First index i such that the window [i, i + window) has std/mean above the
// threshold; nullopt when no window exceeds it. Throws InvalidArgument for
// series shorter than the window.
std::optional<std::size_t> detect_rolloff(const std::vector<double>& series,
                                          const RolloffOptions& options = {});

// key=value calibration file; '#' starts a comment.
Calibration parse_calibration(const std::string& text);
Calibration read_calibration(const std::filesystem::path& path);
std::string format_calibration(const Calibration& cal);

// CSV with header time_s,ch_4_3um,ch_3_9um.
SignalTrace parse_trace(const std::string& text);
SignalTrace read_trace(const std::filesystem::path& path);
std::string format_trace(const SignalTrace& trace);

}  // namespace amine::signal
