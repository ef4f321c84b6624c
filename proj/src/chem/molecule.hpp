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
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amine::chem {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Directional single-bond markers ('/' and '\'); parsed and kept, never
// interpreted.
enum class BondStereo : std::uint8_t { kNone, kUp, kDown };

inline constexpr std::size_t kNoPosition =
    std::numeric_limits<std::size_t>::max();

struct Atom {
  int element = 6;
  int charge = 0;
  // Attached hydrogens. Taken as given for bracket atoms; computed from the
  // default valence for everything else.
  int hydrogens = 0;
  bool aromatic = false;
  bool bracket = false;
  std::string chirality;  // "@", "@@", ... or empty
  std::size_t source_position = kNoPosition;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  BondStereo stereo = BondStereo::kNone;

  int other(int atom) const { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

// Molecular graph with hydrogens held as per-atom counts. Construction
// computes implicit hydrogens, validates valences and finds ring bonds; the
// object is immutable afterwards.
class Molecule {
 public:
  Molecule() = default;
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds,
           std::string source_text = {});

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond& bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  std::span<const Neighbor> neighbors(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  const std::string& source_text() const { return source_text_; }

  bool is_ring_bond(int bond) const {
    return ring_bond_[static_cast<std::size_t>(bond)];
  }
  // Heavy-atom neighbours, attachment points excluded.
  int heavy_degree(int atom) const;
  int heavy_atom_count() const;
  int component_count() const;
  // Index of the bond between a and b, or -1.
  int find_bond(int a, int b) const;

 private:
  void assign_hydrogens();
  void find_ring_bonds();

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<bool> ring_bond_;
  std::string source_text_;
};

// Sum of bond orders with aromatic bonds counted as one.
int sigma_valence(const Molecule& m, int atom);

// Hydrogen count the atom would receive if written without brackets.
int default_hydrogens(const Molecule& m, int atom);

}  // namespace amine::chem
