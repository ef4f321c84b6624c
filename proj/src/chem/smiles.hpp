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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chem/molecule.hpp"

namespace amine::chem {

struct ParseOptions {
  // Accept '.'-separated components in one Molecule. Off by default: the
  // screening data is single-component and salts are rejected.
  bool allow_multi_component = false;
  // Accept '*' attachment points (fragment notation used by rule files).
  bool allow_attachment_points = false;
};

// Parses the supported SMILES subset. Throws ParseError naming the offending
// character offset.
Molecule parse_smiles(std::string_view text, const ParseOptions& options = {});

// Splits a dot-separated SMILES and parses each component on its own.
std::vector<Molecule> parse_components(std::string_view text,
                                       const ParseOptions& options = {});

// Writes SMILES visiting atoms by ascending priority: each component starts
// at its lowest-priority atom and branches are taken in priority order.
// `priority` must be a permutation of atom indices' ranks.
std::string write_smiles(const Molecule& m, std::span<const int> priority);

// Writes SMILES in input atom order.
std::string write_smiles(const Molecule& m);

// Order-invariant identifier: the SMILES written in canonical atom order.
// Stereo markers are not part of the key.
std::string canonical_key(const Molecule& m);

// Convenience: parse then canonicalize.
std::string canonical_key(std::string_view smiles,
                          const ParseOptions& options = {});

}  // namespace amine::chem
