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

#include "chem/elements.hpp"

#include <array>

#include "common/error.hpp"

namespace amine::chem {
namespace {

constexpr std::array<ElementInfo, 20> kElements = {{
    {0, "*", 0, 0},
    {1, "H", 1, 1},
    {3, "Li", 1, 2},
    {5, "B", 3, 2},
    {6, "C", 4, 2},
    {7, "N", 5, 2},
    {8, "O", 6, 2},
    {9, "F", 7, 2},
    {11, "Na", 1, 3},
    {12, "Mg", 2, 3},
    {14, "Si", 4, 3},
    {15, "P", 5, 3},
    {16, "S", 6, 3},
    {17, "Cl", 7, 3},
    {19, "K", 1, 4},
    {20, "Ca", 2, 4},
    {34, "Se", 6, 4},
    {35, "Br", 7, 4},
    {53, "I", 7, 5},
    {33, "As", 5, 4},
}};

}  // namespace

std::optional<ElementInfo> element_by_symbol(std::string_view symbol) {
  for (const auto& e : kElements) {
    if (e.symbol == symbol) return e;
  }
  return std::nullopt;
}

const ElementInfo& element_info(int atomic_number) {
  for (const auto& e : kElements) {
    if (e.atomic_number == atomic_number) return e;
  }
  throw Error(ErrorCode::kUnknownElement,
              "unsupported atomic number " + std::to_string(atomic_number));
}

bool is_organic_subset(int z) {
  switch (z) {
    case 5: case 6: case 7: case 8: case 9:
    case 15: case 16: case 17: case 35: case 53:
      return true;
    default:
      return false;
  }
}

std::vector<int> allowed_valences(int z, int charge) {
  if (z == kDummyElement) return {1};
  const ElementInfo& info = element_info(z);
  if (z == 1) return charge == 0 ? std::vector<int>{1} : std::vector<int>{0};
  // s-block metals: the ion carries no bonds.
  if (info.valence_electrons <= 2 && z != 5) {
    const int v = info.valence_electrons - charge;
    return v >= 0 ? std::vector<int>{v} : std::vector<int>{};
  }
  const int group = info.valence_electrons - charge;
  const bool expanded = info.period >= 3;
  switch (group) {
    case 2: return {2};
    case 3: return {3};
    case 4: return {4};
    case 5: return expanded ? std::vector<int>{3, 5} : std::vector<int>{3};
    case 6: return expanded ? std::vector<int>{2, 4, 6} : std::vector<int>{2};
    case 7: return {1};
    case 8: return {0};
    default: return {};
  }
}

}  // namespace amine::chem
