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


#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "chem/amines.hpp"
#include "chem/smiles.hpp"
#include "common/error.hpp"
#include "doctest.h"

using namespace amine;
using namespace amine::chem;

namespace {

std::vector<int> hydrogens(const Molecule& m) {
  std::vector<int> h;
  for (const Atom& a : m.atoms()) h.push_back(a.hydrogens);
  return h;
}

ErrorCode parse_error_code(const std::string& s, std::size_t* position) {
  try {
    parse_smiles(s);
  } catch (const ParseError& e) {
    *position = e.position();
    return e.code();
  }
  FAIL("expected a parse error for " << s);
  return ErrorCode::kInternal;
}

// Random amine-flavoured SMILES from a small grammar: chains, branches,
// rings, heteroatoms, carbonyls and aromatic rings. Draws that break valence
// rules are discarded.
std::string random_candidate(std::mt19937& rng) {
  static const std::vector<std::string> atoms = {"C", "C", "C", "N", "O", "N"};
  static const std::vector<std::string> groups = {
      "C",    "N",        "O",          "C(=O)", "N(C)",  "C1CCNCC1",
      "c1ccncc1", "C(N)", "CC(C)(C)", "NC(=N)N", "C(=O)N", "N1CCOCC1"};
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> pick_group(0, static_cast<int>(groups.size()) - 1);
  std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(atoms.size()) - 1);
  std::string s = atoms[static_cast<std::size_t>(pick_atom(rng))];
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const std::string g = groups[static_cast<std::size_t>(pick_group(rng))];
    if (rng() % 3 == 0) {
      s += "(" + g + ")";
      s += atoms[static_cast<std::size_t>(pick_atom(rng))];
    } else {
      s += g;
    }
  }
  return s;
}

std::string random_smiles(std::mt19937& rng) {
  while (true) {
    std::string s = random_candidate(rng);
    try {
      parse_smiles(s);
      return s;
    } catch (const ParseError&) {
    }
  }
}

}  // namespace

TEST_CASE("parse: ethanol and MEA hydrogens") {
  const Molecule ethanol = parse_smiles("CCO");
  CHECK(ethanol.atom_count() == 3);
  CHECK(ethanol.bond_count() == 2);
  CHECK(hydrogens(ethanol) == std::vector<int>{3, 2, 1});

  const Molecule mea = parse_smiles("NCCO");
  CHECK(mea.heavy_atom_count() == 4);
  CHECK(mea.atom(0).hydrogens == 2);
}

TEST_CASE("parse: aromatic rings, brackets, ring closures") {
  const Molecule pyridine = parse_smiles("c1ccncc1");
  CHECK(pyridine.atom_count() == 6);
  CHECK(pyridine.atom(3).hydrogens == 0);
  CHECK(pyridine.atom(0).hydrogens == 1);

  const Molecule pyrrole = parse_smiles("c1cc[nH]c1");
  CHECK(pyrrole.atom(3).hydrogens == 1);

  const Molecule ammonium = parse_smiles("C[NH3+]");
  CHECK(ammonium.atom(1).charge == 1);
  CHECK(ammonium.atom(1).hydrogens == 3);

  const Molecule big_ring = parse_smiles("C%12CCCCC%12");
  CHECK(big_ring.bond_count() == 6);
  for (int b = 0; b < big_ring.bond_count(); ++b) CHECK(big_ring.is_ring_bond(b));

  const Molecule explicit_h = parse_smiles("[H]OC");
  CHECK(explicit_h.atom_count() == 2);
  CHECK(explicit_h.atom(0).hydrogens == 1);

  const Molecule stereo = parse_smiles("C/C=C\\C[C@H](N)O");
  CHECK(stereo.atom(5).chirality.empty());
  CHECK(stereo.atom(4).chirality == "@");
  CHECK(stereo.atom(4).hydrogens == 1);
}

TEST_CASE("parse: errors name the offending position") {
  std::size_t pos = 0;
  CHECK(parse_error_code("C(C", &pos) == ErrorCode::kUnbalancedBranch);
  CHECK(pos == 3);
  CHECK(parse_error_code("CC)C", &pos) == ErrorCode::kUnbalancedBranch);
  CHECK(pos == 2);
  CHECK(parse_error_code("C1CC", &pos) == ErrorCode::kUnclosedRingBond);
  CHECK(pos == 1);
  CHECK(parse_error_code("CXC", &pos) == ErrorCode::kUnknownElement);
  CHECK(pos == 1);
  CHECK(parse_error_code("CC(C)(C)(C)C", &pos) == ErrorCode::kValenceViolation);
  CHECK(pos == 1);
  CHECK(parse_error_code("CN(C)(C)C", &pos) == ErrorCode::kValenceViolation);
  CHECK(parse_error_code("CC.O", &pos) == ErrorCode::kMultiComponent);
  CHECK(pos == 2);
  CHECK(parse_error_code("c1cccc1", &pos) == ErrorCode::kValenceViolation);
  CHECK(parse_error_code("C*", &pos) == ErrorCode::kUnknownElement);
}

TEST_CASE("parse: multi-component input when allowed") {
  ParseOptions options;
  options.allow_multi_component = true;
  const Molecule salt = parse_smiles("C[NH3+].[Cl-]", options);
  CHECK(salt.component_count() == 2);
  const auto parts = parse_components("CCO.N");
  REQUIRE(parts.size() == 2);
  CHECK(parts[1].atom(0).hydrogens == 3);
}

TEST_CASE("canonical_key: order invariance") {
  CHECK(canonical_key("CCO") == canonical_key("OCC"));
  CHECK(canonical_key("NCCO") == canonical_key("OCCN"));
  CHECK(canonical_key("C1CCCCC1N") == canonical_key("NC1CCCCC1"));
  CHECK(canonical_key("c1ccncc1") == canonical_key("n1ccccc1"));
  CHECK(canonical_key("CCO") != canonical_key("COC"));
  CHECK(canonical_key("C[C@H](N)O") == canonical_key("CC(N)O"));
}

TEST_CASE("canonical_key: invariant under random re-rendering") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string s = random_smiles(rng);
    const Molecule m = parse_smiles(s);
    const std::string key = canonical_key(m);
    std::vector<int> order(static_cast<std::size_t>(m.atom_count()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::string rendered = write_smiles(m, order);
    INFO(s << " -> " << rendered);
    CHECK(canonical_key(rendered) == key);
    CHECK(canonical_key(key) == key);
  }
}

TEST_CASE("classify_amines: reference amines") {
  const AmineProfile mea = classify_amines(parse_smiles("NCCO"));
  CHECK(mea.n_primary == 1);
  CHECK(mea.total_nitrogen() == 1);

  const AmineProfile mdea = classify_amines(parse_smiles("OCCN(C)CCO"));
  CHECK(mdea.n_tertiary == 1);
  CHECK(mdea.total_nitrogen() == 1);

  const AmineProfile pz = classify_amines(parse_smiles("C1CNCCN1"));
  CHECK(pz.n_secondary == 2);
  CHECK(pz.total_nitrogen() == 2);

  const AmineProfile amide = classify_amines(parse_smiles("CC(=O)NC"));
  CHECK(amide.n_amide_N == 1);
  CHECK(amide.n_secondary == 0);

  const AmineProfile pyridine = classify_amines(parse_smiles("c1ccncc1"));
  CHECK(pyridine.n_aromatic_N == 1);

  const AmineProfile dbn = classify_amines(parse_smiles("C1CN=C2CCCN2C1"));
  CHECK(dbn.n_other_N == 2);
  CHECK(dbn.n_amidine == 2);

  const AmineProfile ammonium = classify_amines(parse_smiles("C[NH3+]"));
  CHECK(ammonium.n_other_N == 1);
}

TEST_CASE("classify_amines: counts are exhaustive") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Molecule m = parse_smiles(random_smiles(rng));
    int nitrogens = 0;
    for (const Atom& a : m.atoms()) nitrogens += a.element == 7;
    const AmineProfile p = classify_amines(m);
    CHECK(p.total_nitrogen() == nitrogens);
    CHECK(p.n_amidine <= p.n_other_N);
  }
}
