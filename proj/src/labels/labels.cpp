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


#include "labels/labels.hpp"

#include <cmath>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/log.hpp"

namespace amine::labels {

double expected_capacity(const chem::AmineProfile& p) {
  const int carbamate = p.n_primary + p.n_secondary;
  const int carbonate = p.n_tertiary + p.n_amidine;
  if (carbamate + carbonate == 0) {
    throw Error(ErrorCode::kNoAmine, "no primary, secondary, tertiary or amidine nitrogen");
  }
  return (carbamate * kCarbamateCapacity + carbonate * kCarbonateCapacity) /
         (carbamate + carbonate);
}

int label_capacity(double measured, const chem::AmineProfile& profile,
                   double ratio_threshold) {
  const double expected = expected_capacity(profile);
  return measured >= ratio_threshold * expected ? 1 : 0;
}

int label_rate(double measured, double threshold) {
  return measured >= threshold ? 1 : 0;
}

double clamp_measurement(double value, const char* what) {
  if (std::isnan(value)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("{} is NaN", what));
  }
  if (value < 0.0) {
    log::warn(fmt::format("negative {} {} clamped to 0", what, value));
    return 0.0;
  }
  return value;
}

}  // namespace amine::labels
