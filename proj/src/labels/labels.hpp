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

#include "chem/amines.hpp"

namespace amine::labels {

inline constexpr double kDefaultRateThreshold = 0.0868;
inline constexpr double kDefaultCapacityRatio = 0.8;

// Expected CO2 per amine group by reaction route.
inline constexpr double kCarbamateCapacity = 0.5;  // primary, secondary
inline constexpr double kCarbonateCapacity = 1.0;  // tertiary, amidine

struct PropertyRecord {
  double absorption_capacity = 0.0;    // mol CO2 / mol amine
  double observed_initial_rate = 0.0;  // mol CO2 / mol amine / s
};

// Count-weighted mean of per-group capacities. Throws NoAmine when the
// profile has no primary, secondary, tertiary or amidine nitrogen.
double expected_capacity(const chem::AmineProfile& profile);

int label_capacity(double measured, const chem::AmineProfile& profile,
                   double ratio_threshold = kDefaultCapacityRatio);

int label_rate(double measured, double threshold = kDefaultRateThreshold);

// Negative measurements (instrument noise) become 0 with a warning naming
// `what`. NaN is rejected.
double clamp_measurement(double value, const char* what);

}  // namespace amine::labels
