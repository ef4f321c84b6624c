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

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chem/molecule.hpp"

namespace amine::fp {

inline constexpr int kMaxRadius = 4;

struct CountFingerprint {
  std::map<std::string, int> entries;
  int radius = 2;
};

// Canonical key of the subgraph induced by atoms within `radius` bonds of
// `center`. Radius 0 gives the bare atom label, e.g. "C[h4]". The center
// may be an attachment point ('*').
std::string environment_key(const chem::Molecule& m, int center, int radius);

// Counts environment keys of every heavy atom for r = 0..radius.
CountFingerprint fingerprint(const chem::Molecule& m, int radius = 2);

struct DenseFeatures {
  std::vector<std::string> vocabulary;
  Eigen::MatrixXd matrix;
};

// Sorted union of keys as columns. Throws EmptyInput on an empty list.
DenseFeatures vectorize(const std::vector<CountFingerprint>& fps);

// Row of counts in a fixed, sorted vocabulary; keys outside it are dropped.
Eigen::RowVectorXd dense_row(const CountFingerprint& fp,
                             const std::vector<std::string>& vocabulary);

}  // namespace amine::fp
