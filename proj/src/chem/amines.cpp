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


#include "chem/amines.hpp"

namespace amine::chem {
namespace {

constexpr int kCarbon = 6;
constexpr int kNitrogen = 7;
constexpr int kOxygen = 8;

// True when `carbon` carries a double bond to an atom of `element`, other
// than `skip`.
bool has_double_bond_to(const Molecule& m, int carbon, int element, int skip) {
  for (const Neighbor& nb : m.neighbors(carbon)) {
    if (nb.atom == skip) continue;
    if (m.bond(nb.bond).order == BondOrder::kDouble &&
        m.atom(nb.atom).element == element) {
      return true;
    }
  }
  return false;
}

bool is_amide(const Molecule& m, int n) {
  for (const Neighbor& nb : m.neighbors(n)) {
    if (m.atom(nb.atom).element == kCarbon &&
        has_double_bond_to(m, nb.atom, kOxygen, n)) {
      return true;
    }
  }
  return false;
}

// N-C=N or N=C-N, both ends non-aromatic.
bool is_amidine(const Molecule& m, int n) {
  for (const Neighbor& nb : m.neighbors(n)) {
    const Atom& c = m.atom(nb.atom);
    if (c.element != kCarbon || c.aromatic) continue;
    const BondOrder order = m.bond(nb.bond).order;
    if (order == BondOrder::kSingle &&
        has_double_bond_to(m, nb.atom, kNitrogen, n)) {
      return true;
    }
    if (order == BondOrder::kDouble) {
      for (const Neighbor& far : m.neighbors(nb.atom)) {
        if (far.atom != n && m.atom(far.atom).element == kNitrogen &&
            !m.atom(far.atom).aromatic &&
            m.bond(far.bond).order == BondOrder::kSingle) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

NitrogenClass classify_nitrogen(const Molecule& m, int atom) {
  const Atom& a = m.atom(atom);
  if (is_amide(m, atom)) return NitrogenClass::kAmide;
  if (a.aromatic) return NitrogenClass::kAromatic;
  if (a.charge == 0 && is_amidine(m, atom)) return NitrogenClass::kAmidine;
  if (a.charge != 0) return NitrogenClass::kOther;
  for (const Neighbor& nb : m.neighbors(atom)) {
    if (m.bond(nb.bond).order != BondOrder::kSingle) return NitrogenClass::kOther;
  }
  const int degree = m.heavy_degree(atom);
  if (degree + a.hydrogens != 3) return NitrogenClass::kOther;
  switch (degree) {
    case 1: return NitrogenClass::kPrimary;
    case 2: return NitrogenClass::kSecondary;
    case 3: return NitrogenClass::kTertiary;
    default: return NitrogenClass::kOther;
  }
}

AmineProfile classify_amines(const Molecule& m) {
  AmineProfile p;
  for (int i = 0; i < m.atom_count(); ++i) {
    if (m.atom(i).element != kNitrogen) continue;
    switch (classify_nitrogen(m, i)) {
      case NitrogenClass::kPrimary: ++p.n_primary; break;
      case NitrogenClass::kSecondary: ++p.n_secondary; break;
      case NitrogenClass::kTertiary: ++p.n_tertiary; break;
      case NitrogenClass::kAromatic: ++p.n_aromatic_N; break;
      case NitrogenClass::kAmide: ++p.n_amide_N; break;
      case NitrogenClass::kAmidine:
        ++p.n_other_N;
        ++p.n_amidine;
        break;
      case NitrogenClass::kOther: ++p.n_other_N; break;
    }
  }
  return p;
}

}  // namespace amine::chem
