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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chem/molecule.hpp"

namespace amine::gen {

inline constexpr int kDefaultEnvRadius = 1;
inline constexpr int kMaxEnvRadius = 3;

// Fragment replacement lhs -> rhs, both written as canonical SMILES with a
// single '*' attachment point. The environment is taken around the cut
// point on the conserved core.
struct TransformRule {
  std::string lhs;
  std::string rhs;
  std::string environment_key;
  int support = 0;
  int cut_count = 1;
};

// One way of splitting a molecule at an acyclic single bond.
struct Cut {
  int bond = -1;
  chem::Molecule core;      // keeps the attachment atom, '*' in place of the fragment
  chem::Molecule fragment;  // '*' in place of the core
  std::string core_key;
  std::string fragment_key;
  std::string environment_key;
};

// Both directions of every acyclic single bond between heavy atoms, in bond
// order. Stereo marks are dropped from the pieces.
std::vector<Cut> enumerate_cuts(const chem::Molecule& m, int env_radius = kDefaultEnvRadius);

// Joins a core and a fragment at their attachment points with a single bond.
// Throws on a valence violation.
chem::Molecule graft(const chem::Molecule& core, const chem::Molecule& fragment);

// Rules from every pair of molecules that share a core, provided at least
// one of the two fragments is no larger than the core. Input duplicates (same canonical key)
// count once. Rules are sorted by (lhs, rhs, environment).
std::vector<TransformRule> extract_rules(const std::vector<chem::Molecule>& molecules,
                                         int env_radius = kDefaultEnvRadius);

struct Candidate {
  chem::Molecule molecule;
  std::string key;         // canonical key of `molecule`
  std::string parent_key;
  int rule_id = -1;        // index into the rule list passed to apply_rules
  std::map<std::string, std::string> filter_flags;
  std::optional<std::map<std::string, double>> properties;
};

std::vector<Candidate> apply_rules(const chem::Molecule& m,
                                   const std::vector<TransformRule>& rules,
                                   int env_radius = kDefaultEnvRadius);

// Property names used in property tables and thresholds.
inline constexpr const char* kWaterSolubility = "water_solubility";
inline constexpr const char* kPkb = "pkb";
inline constexpr const char* kLd50 = "ld50";

struct FilterThresholds {
  double min_water_solubility = -3.0;  // log10(mol/L)
  double max_pkb = 7.0;
  double min_ld50 = 300.0;             // mg/kg
  bool strict = false;
};

using PropertyTable = std::map<std::string, std::map<std::string, double>>;

// Sets filter_flags valid / duplicate / solubility / pkb / toxicity to
// "pass", "fail" or "unknown" and returns the survivors in input order.
// Property rows are looked up by candidate key; `properties` is filled in.
std::vector<Candidate> filter_candidates(std::vector<Candidate> cands,
                                         const std::set<std::string>& dedupe_against,
                                         const PropertyTable& property_table,
                                         const FilterThresholds& thresholds);

// Rule file: "# aminescreen.rules v1 radius=R" then lhs,rhs,environment_key,support.
std::string format_rules(const std::vector<TransformRule>& rules, int env_radius);
std::vector<TransformRule> parse_rules(const std::string& text, int* env_radius = nullptr);
void write_rules(const std::filesystem::path& path, const std::vector<TransformRule>& rules,
                 int env_radius);
std::vector<TransformRule> read_rules(const std::filesystem::path& path,
                                      int* env_radius = nullptr);

// CSV with a key column ("canonical_key", "key", "smiles" or "inchikey") and
// numeric property columns. SMILES keys are canonicalized; InChIKeys are
// resolved through `inchikey_to_key` when given. Empty cells are skipped.
PropertyTable parse_property_table(const std::string& text,
                                   const std::map<std::string, std::string>& inchikey_to_key = {});
PropertyTable read_property_table(const std::filesystem::path& path,
                                  const std::map<std::string, std::string>& inchikey_to_key = {});

// smiles,parent,rule_id,lhs,rhs,valid,duplicate,solubility,pkb,toxicity
std::string format_candidates(const std::vector<Candidate>& cands,
                              const std::vector<TransformRule>& rules);

}  // namespace amine::gen
