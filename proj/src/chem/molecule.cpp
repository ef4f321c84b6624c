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

#include "chem/molecule.hpp"

#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "chem/elements.hpp"
#include "common/error.hpp"

namespace amine::chem {
namespace {

int order_value(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle: return 1;
    case BondOrder::kDouble: return 2;
    case BondOrder::kTriple: return 3;
    case BondOrder::kAromatic: return 1;
  }
  return 1;
}

[[noreturn]] void valence_error(const Atom& atom, int index,
                                const std::string& detail) {
  const std::size_t pos =
      atom.source_position == kNoPosition ? 0 : atom.source_position;
  throw ParseError(ErrorCode::kValenceViolation, pos,
                   fmt::format("atom {} ({}): {}", index,
                               element_info(atom.element).symbol, detail));
}

// Smallest allowed valence >= used, or -1.
int target_valence(int element, int charge, int used) {
  for (int v : allowed_valences(element, charge)) {
    if (v >= used) return v;
  }
  return -1;
}

// Pairs every pi-demanding aromatic atom with an aromatic neighbour that
// also demands one (a Kekule structure). Backtracking is fine at molecule
// sizes seen here.
bool kekulize(const Molecule& m, const std::vector<bool>& needs_pi,
              int* unmatched_atom) {
  const int n = m.atom_count();
  std::vector<int> mate(static_cast<std::size_t>(n), -1);
  std::size_t steps = 0;
  constexpr std::size_t kMaxSteps = 1'000'000;

  std::function<bool()> solve = [&]() -> bool {
    if (++steps > kMaxSteps) return false;
    int best = -1;
    int best_options = 1 << 30;
    for (int i = 0; i < n; ++i) {
      if (!needs_pi[static_cast<std::size_t>(i)] ||
          mate[static_cast<std::size_t>(i)] >= 0) {
        continue;
      }
      int options = 0;
      for (const Neighbor& nb : m.neighbors(i)) {
        if (m.bond(nb.bond).order == BondOrder::kAromatic &&
            needs_pi[static_cast<std::size_t>(nb.atom)] &&
            mate[static_cast<std::size_t>(nb.atom)] < 0) {
          ++options;
        }
      }
      if (options < best_options) {
        best = i;
        best_options = options;
      }
    }
    if (best < 0) return true;
    if (best_options == 0) {
      *unmatched_atom = best;
      return false;
    }
    for (const Neighbor& nb : m.neighbors(best)) {
      if (m.bond(nb.bond).order != BondOrder::kAromatic ||
          !needs_pi[static_cast<std::size_t>(nb.atom)] ||
          mate[static_cast<std::size_t>(nb.atom)] >= 0) {
        continue;
      }
      mate[static_cast<std::size_t>(best)] = nb.atom;
      mate[static_cast<std::size_t>(nb.atom)] = best;
      if (solve()) return true;
      mate[static_cast<std::size_t>(best)] = -1;
      mate[static_cast<std::size_t>(nb.atom)] = -1;
    }
    *unmatched_atom = best;
    return false;
  };
  return solve();
}

}  // namespace

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds,
                   std::string source_text)
    : atoms_(std::move(atoms)),
      bonds_(std::move(bonds)),
      source_text_(std::move(source_text)) {
  const std::size_t n = atoms_.size();
  adjacency_.assign(n, {});
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    const Bond& bond = bonds_[b];
    if (bond.begin < 0 || bond.end < 0 || static_cast<std::size_t>(bond.begin) >= n ||
        static_cast<std::size_t>(bond.end) >= n || bond.begin == bond.end) {
      throw Error(ErrorCode::kInvalidArgument, "bond references invalid atom");
    }
    adjacency_[static_cast<std::size_t>(bond.begin)].push_back(
        {bond.end, static_cast<int>(b)});
    adjacency_[static_cast<std::size_t>(bond.end)].push_back(
        {bond.begin, static_cast<int>(b)});
  }
  for (int i = 0; i < static_cast<int>(n); ++i) {
    for (const Neighbor& a : neighbors(i)) {
      for (const Neighbor& b : neighbors(i)) {
        if (a.bond != b.bond && a.atom == b.atom) {
          throw ParseError(ErrorCode::kSyntax,
                           atoms_[static_cast<std::size_t>(i)].source_position ==
                                   kNoPosition
                               ? 0
                               : atoms_[static_cast<std::size_t>(i)].source_position,
                           "duplicate bond between the same atom pair");
        }
      }
    }
  }
  assign_hydrogens();
  find_ring_bonds();
}

int sigma_valence(const Molecule& m, int atom) {
  int total = 0;
  for (const Neighbor& nb : m.neighbors(atom)) {
    total += order_value(m.bond(nb.bond).order);
  }
  return total;
}

int default_hydrogens(const Molecule& m, int atom) {
  const Atom& a = m.atom(atom);
  if (a.element == kDummyElement || !is_organic_subset(a.element) ||
      a.charge != 0) {
    return 0;
  }
  const int used = sigma_valence(m, atom);
  const int target = target_valence(a.element, 0, used);
  if (target < 0) return 0;
  const int pi = (a.aromatic && target - used >= 1) ? 1 : 0;
  return target - used - pi;
}

void Molecule::assign_hydrogens() {
  const int n = atom_count();
  std::vector<bool> needs_pi(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    Atom& a = atoms_[static_cast<std::size_t>(i)];
    const int sigma = sigma_valence(*this, i);
    if (a.element == kDummyElement) {
      a.hydrogens = 0;
      if (sigma != 1) valence_error(a, i, "attachment point needs one bond");
      continue;
    }
    if (a.aromatic) {
      bool has_aromatic_bond = false;
      for (const Neighbor& nb : neighbors(i)) {
        has_aromatic_bond |= bond(nb.bond).order == BondOrder::kAromatic;
      }
      if (!has_aromatic_bond) {
        valence_error(a, i, "aromatic atom outside an aromatic ring");
      }
    }
    if (!a.bracket) {
      const int target = target_valence(a.element, 0, sigma);
      if (target < 0) {
        valence_error(a, i, fmt::format("{} bonds exceed allowed valence", sigma));
      }
      const int pi = (a.aromatic && target - sigma >= 1) ? 1 : 0;
      a.hydrogens = target - sigma - pi;
      needs_pi[static_cast<std::size_t>(i)] = pi == 1;
      continue;
    }
    const int used = sigma + a.hydrogens;
    const auto allowed = allowed_valences(a.element, a.charge);
    int pi = 0;
    if (a.aromatic) {
      const int target = target_valence(a.element, a.charge, used);
      pi = (target >= 0 && target - used >= 1) ? 1 : 0;
    }
    if (std::find(allowed.begin(), allowed.end(), used + pi) == allowed.end()) {
      valence_error(a, i, fmt::format("valence {} not allowed for charge {}",
                                      used + pi, a.charge));
    }
    needs_pi[static_cast<std::size_t>(i)] = pi == 1;
  }
  int unmatched = -1;
  if (!kekulize(*this, needs_pi, &unmatched)) {
    valence_error(atoms_[static_cast<std::size_t>(std::max(unmatched, 0))],
                  std::max(unmatched, 0), "cannot kekulize aromatic system");
  }
}

void Molecule::find_ring_bonds() {
  // A bond is acyclic exactly when it is a bridge (Tarjan low-link).
  const int n = atom_count();
  ring_bond_.assign(bonds_.size(), true);
  std::vector<int> order(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  int counter = 0;
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (order[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    order[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] =
        counter++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto nbrs = neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond) continue;
        auto& child_order = order[static_cast<std::size_t>(nb.atom)];
        if (child_order < 0) {
          child_order = low[static_cast<std::size_t>(nb.atom)] = counter++;
          stack.push_back({nb.atom, nb.bond, 0});
        } else {
          low[static_cast<std::size_t>(f.atom)] =
              std::min(low[static_cast<std::size_t>(f.atom)], child_order);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          const int parent = stack.back().atom;
          low[static_cast<std::size_t>(parent)] =
              std::min(low[static_cast<std::size_t>(parent)],
                       low[static_cast<std::size_t>(done.atom)]);
          if (low[static_cast<std::size_t>(done.atom)] >
              order[static_cast<std::size_t>(parent)]) {
            ring_bond_[static_cast<std::size_t>(done.parent_bond)] = false;
          }
        }
      }
    }
  }
}

int Molecule::heavy_degree(int atom) const {
  int d = 0;
  for (const Neighbor& nb : neighbors(atom)) {
    const int e = this->atom(nb.atom).element;
    if (e != 1 && e != kDummyElement) ++d;
  }
  return d;
}

int Molecule::heavy_atom_count() const {
  return static_cast<int>(std::count_if(
      atoms_.begin(), atoms_.end(),
      [](const Atom& a) { return a.element != 1 && a.element != kDummyElement; }));
}

int Molecule::component_count() const {
  const int n = atom_count();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int components = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++components;
    std::vector<int> stack{i};
    seen[static_cast<std::size_t>(i)] = true;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : neighbors(a)) {
        if (!seen[static_cast<std::size_t>(nb.atom)]) {
          seen[static_cast<std::size_t>(nb.atom)] = true;
          stack.push_back(nb.atom);
        }
      }
    }
  }
  return components;
}

int Molecule::find_bond(int a, int b) const {
  for (const Neighbor& nb : neighbors(a)) {
    if (nb.atom == b) return nb.bond;
  }
  return -1;
}

}  // namespace amine::chem
