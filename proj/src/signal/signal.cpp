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


#include "signal/signal.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/log.hpp"

namespace amine::signal {

void validate(const SignalTrace& trace) {
  const std::size_t n = trace.t.size();
  if (trace.ch_signal.size() != n || trace.ch_reference.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "trace channels differ in length");
  }
  if (n < 10) throw Error(ErrorCode::kInvalidArgument, fmt::format("trace has {} samples, need >= 10", n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(trace.t[i]) || !std::isfinite(trace.ch_signal[i]) ||
        !std::isfinite(trace.ch_reference[i])) {
      throw Error(ErrorCode::kNonFiniteFeature, fmt::format("non-finite trace value at sample {}", i));
    }
    if (i > 0 && !(trace.t[i] > trace.t[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("time not strictly increasing at sample {}", i));
    }
  }
}

double Calibration::saturation_transmission() const {
  if (sat_T) return *sat_T / zero_T;
  return 1.0 - beer_lambert_forward(f_o, *this);
}

void validate(const Calibration& cal) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, fmt::format("calibration: {}", what));
  };
  need(cal.a > 0 && std::isfinite(cal.a), "a must be > 0");
  need(cal.b > 0 && std::isfinite(cal.b), "b must be > 0");
  need(cal.c > 0 && std::isfinite(cal.c), "c must be > 0");
  need(cal.f_o > 0 && cal.f_o <= 1, "f_o must lie in (0, 1]");
  need(cal.q_sccm > 0 && std::isfinite(cal.q_sccm), "q_sccm must be > 0");
  need(cal.T_gas_K > 0 && std::isfinite(cal.T_gas_K), "T_gas_K must be > 0");
  need(cal.P_atm > 0 && std::isfinite(cal.P_atm), "P_atm must be > 0");
  need(cal.zero_T > 0 && std::isfinite(cal.zero_T), "zero_T must be > 0");
  need(!cal.sat_T || (*cal.sat_T > 0 && *cal.sat_T < cal.zero_T), "sat_T must lie in (0, zero_T)");
  need(cal.delay_min >= 0 && std::isfinite(cal.delay_min), "delay_min must be >= 0");
}

double beer_lambert_forward(double C, const Calibration& cal) {
  if (C < 0) throw Error(ErrorCode::kInvalidArgument, "negative CO2 fraction");
  return cal.a * (1.0 - std::exp(-cal.b * std::pow(C, cal.c)));
}

double beer_lambert_invert(double A, const Calibration& cal) {
  if (A < 0 || !std::isfinite(A)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("absorbance {} outside [0, a)", A));
  }
  if (A >= cal.a) {
    throw Error(ErrorCode::kAbsorbanceExceedsA,
                fmt::format("absorbance {} >= calibration a = {}", A, cal.a));
  }
  if (A == 0) return 0.0;
  return std::pow(std::log1p(-A / cal.a) / -cal.b, 1.0 / cal.c);
}

std::vector<double> normalize(const SignalTrace& trace, const Calibration& cal) {
  validate(trace);
  std::vector<double> out(trace.t.size());
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (trace.ch_reference[i] == 0.0) {
      throw Error(ErrorCode::kZeroReference, fmt::format("reference channel is zero at sample {}", i));
    }
    double v = trace.ch_signal[i] / trace.ch_reference[i] / cal.zero_T;
    if (v > 1.5) {
      v = 1.5;
      ++clamped;
    } else if (!(v > 0)) {
      v = 1e-9;
      ++clamped;
    }
    out[i] = v;
  }
  if (clamped) log::warn(fmt::format("normalize: {} samples clamped to (0, 1.5]", clamped));
  return out;
}

std::optional<std::size_t> detect_rolloff(const std::vector<double>& s, const RolloffOptions& options) {
  const std::size_t w = options.window;
  if (w < 2) throw Error(ErrorCode::kInvalidArgument, "rolloff window must be >= 2");
  if (s.size() < w) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("series of {} samples is shorter than window {}", s.size(), w));
  }
  for (std::size_t i = 0; i + w <= s.size(); ++i) {
    double mean = 0.0;
    for (std::size_t j = i; j < i + w; ++j) mean += s[j];
    mean /= double(w);
    double var = 0.0;
    for (std::size_t j = i; j < i + w; ++j) var += (s[j] - mean) * (s[j] - mean);
    const double sd = std::sqrt(var / double(w - 1));
    if (mean != 0.0 && sd / std::abs(mean) > options.threshold) return i;
  }
  return std::nullopt;
}

Calibration parse_calibration(const std::string& text) {
  Calibration cal;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kFormat, fmt::format("calibration line {}: expected key=value", lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(raw, &used);
      if (used != raw.size()) throw std::invalid_argument(raw);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kFormat, fmt::format("calibration line {}: bad number '{}'", lineno, raw));
    }
    if (key == "a") cal.a = v;
    else if (key == "b") cal.b = v;
    else if (key == "c") cal.c = v;
    else if (key == "f_o") cal.f_o = v;
    else if (key == "q_sccm") cal.q_sccm = v;
    else if (key == "T_gas_K") cal.T_gas_K = v;
    else if (key == "P_atm") cal.P_atm = v;
    else if (key == "zero_T") cal.zero_T = v;
    else if (key == "sat_T") cal.sat_T = v;
    else if (key == "delay_min") cal.delay_min = v;
    else throw Error(ErrorCode::kFormat, fmt::format("calibration line {}: unknown key '{}'", lineno, key));
  }
  validate(cal);
  return cal;
}

Calibration read_calibration(const std::filesystem::path& path) {
  return parse_calibration(csv::read_text(path));
}

std::string format_calibration(const Calibration& cal) {
  std::string out;
  auto put = [&](const char* k, double v) { out += fmt::format("{} = {}\n", k, csv::format_double(v)); };
  put("a", cal.a);
  put("b", cal.b);
  put("c", cal.c);
  put("f_o", cal.f_o);
  put("q_sccm", cal.q_sccm);
  put("T_gas_K", cal.T_gas_K);
  put("P_atm", cal.P_atm);
  put("zero_T", cal.zero_T);
  if (cal.sat_T) put("sat_T", *cal.sat_T);
  put("delay_min", cal.delay_min);
  return out;
}

SignalTrace parse_trace(const std::string& text) {
  const csv::Table table = csv::parse(text);
  const auto ct = table.column("time_s");
  const auto cs = table.column("ch_4_3um");
  const auto cr = table.column("ch_3_9um");
  if (!ct || !cs || !cr) throw Error(ErrorCode::kFormat, "trace needs columns time_s,ch_4_3um,ch_3_9um");
  SignalTrace tr;
  std::size_t row = 0;
  for (const auto& r : table.rows) {
    ++row;
    auto num = [&](std::size_t col) {
      if (col >= r.size()) throw Error(ErrorCode::kFormat, fmt::format("trace row {}: missing field", row));
      try {
        std::size_t used = 0;
        const double v = std::stod(r[col], &used);
        if (used != r[col].size()) throw std::invalid_argument(r[col]);
        return v;
      } catch (const std::exception&) {
        throw Error(ErrorCode::kFormat, fmt::format("trace row {}: bad number '{}'", row, r[col]));
      }
    };
    tr.t.push_back(num(*ct));
    tr.ch_signal.push_back(num(*cs));
    tr.ch_reference.push_back(num(*cr));
  }
  validate(tr);
  return tr;
}

SignalTrace read_trace(const std::filesystem::path& path) { return parse_trace(csv::read_text(path)); }

std::string format_trace(const SignalTrace& trace) {
  std::string out = "time_s,ch_4_3um,ch_3_9um\n";
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    out += fmt::format("{},{},{}\n", csv::format_double(trace.t[i]), csv::format_double(trace.ch_signal[i]),
                       csv::format_double(trace.ch_reference[i]));
  }
  return out;
}

}  // namespace amine::signal
