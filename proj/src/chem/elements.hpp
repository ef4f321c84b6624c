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

#include <optional>
#include <string_view>
#include <vector>

namespace amine::chem {

inline constexpr int kDummyElement = 0;  // attachment point '*'

struct ElementInfo {
  int atomic_number;
  std::string_view symbol;
  int valence_electrons;  // main-group "group" count: C=4, N=5, ...
  int period;
};

std::optional<ElementInfo> element_by_symbol(std::string_view symbol);
const ElementInfo& element_info(int atomic_number);

// Member of the SMILES organic subset (may be written without brackets).
bool is_organic_subset(int atomic_number);

// Valences an atom with this element and formal charge may carry, ascending.
// Charged atoms use the isoelectronic neutral element's valences.
std::vector<int> allowed_valences(int atomic_number, int charge);

}  // namespace amine::chem
