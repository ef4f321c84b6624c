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
#include <string>
#include <vector>

#include "chem/amines.hpp"
#include "chem/smiles.hpp"
#include "common/error.hpp"
#include "common/log.hpp"
#include "doctest.h"
#include "labels/labels.hpp"

using namespace amine;
using namespace amine::labels;

namespace {

chem::AmineProfile profile(int primary, int secondary, int tertiary) {
  chem::AmineProfile p;
  p.n_primary = primary;
  p.n_secondary = secondary;
  p.n_tertiary = tertiary;
  return p;
}

}  // namespace

TEST_CASE("expected_capacity by route") {
  CHECK(expected_capacity(profile(1, 0, 0)) == 0.5);
  CHECK(expected_capacity(profile(0, 1, 0)) == 0.5);
  CHECK(expected_capacity(profile(0, 0, 1)) == 1.0);
  CHECK(expected_capacity(profile(1, 0, 1)) == 0.75);
  CHECK(expected_capacity(profile(0, 2, 0)) == 0.5);

  const auto dbn = chem::classify_amines(chem::parse_smiles("C1CN=C2CCCN2C1"));
  CHECK(expected_capacity(dbn) == 1.0);

  chem::AmineProfile amide_only;
  amide_only.n_amide_N = 1;
  try {
    expected_capacity(amide_only);
    FAIL("expected NoAmine");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoAmine);
  }
  CHECK_THROWS_AS(label_capacity(0.5, amide_only), Error);
}

TEST_CASE("label_capacity") {
  CHECK(label_capacity(0.55, profile(1, 0, 0)) == 1);
  CHECK(label_capacity(0.27, profile(1, 0, 0)) == 0);
  CHECK(label_capacity(0.0, profile(0, 0, 1)) == 0);
  CHECK(label_capacity(0.0, profile(1, 0, 0)) == 0);
  CHECK(label_capacity(0.4, profile(1, 0, 0)) == 1);  // boundary is closed
  CHECK(label_capacity(0.79, profile(0, 0, 1)) == 0);
  CHECK(label_capacity(0.5, profile(1, 0, 0), 1.0) == 1);
}

TEST_CASE("label_rate threshold") {
  CHECK(label_rate(0.0868) == 1);
  CHECK(label_rate(0.0867) == 0);
  CHECK(label_rate(0.0) == 0);
  CHECK(label_rate(0.05, 0.05) == 1);
}

TEST_CASE("labels are monotone in the measurement") {
  const auto p = profile(1, 1, 1);
  int previous_cap = 0;
  int previous_rate = 0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = i * 0.001;
    const int cap = label_capacity(x, p);
    const int rate = label_rate(x * 0.1);
    CHECK(cap >= previous_cap);
    CHECK(rate >= previous_rate);
    previous_cap = cap;
    previous_rate = rate;
  }
}

TEST_CASE("negative measurements clamp with a warning") {
  std::vector<std::string> warnings;
  log::set_sink([&](log::Level level, const std::string& message) {
    if (level == log::Level::kWarning) warnings.push_back(message);
  });
  CHECK(clamp_measurement(-0.01, "rate") == 0.0);
  CHECK(clamp_measurement(0.3, "rate") == 0.3);
  log::set_sink({});
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(clamp_measurement(std::nan(""), "rate"), Error);
}
