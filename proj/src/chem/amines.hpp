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

#include "chem/molecule.hpp"

namespace amine::chem {

// Nitrogen census. Every N lands in exactly one of the six main counters;
// n_amidine is a sub-count of n_other_N (amidine/guanidine nitrogens, which
// react like tertiary amines).
struct AmineProfile {
  int n_primary = 0;
  int n_secondary = 0;
  int n_tertiary = 0;
  int n_aromatic_N = 0;
  int n_amide_N = 0;
  int n_other_N = 0;
  int n_amidine = 0;

  int total_nitrogen() const {
    return n_primary + n_secondary + n_tertiary + n_aromatic_N + n_amide_N +
           n_other_N;
  }
  // Nitrogens with a known CO2 stoichiometry.
  int amine_like() const {
    return n_primary + n_secondary + n_tertiary + n_amidine;
  }
};

enum class NitrogenClass {
  kPrimary,
  kSecondary,
  kTertiary,
  kAromatic,
  kAmide,
  kAmidine,
  kOther,
};

// Class of a single nitrogen atom. `atom` must be a nitrogen.
NitrogenClass classify_nitrogen(const Molecule& m, int atom);

AmineProfile classify_amines(const Molecule& m);

}  // namespace amine::chem
