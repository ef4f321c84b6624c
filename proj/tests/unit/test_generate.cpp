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
#include <random>
#include <string>
#include <vector>

#include "chem/smiles.hpp"
#include "common/error.hpp"
#include "doctest.h"
#include "fingerprint/fingerprint.hpp"
#include "generate/mmp.hpp"

using namespace amine;
using namespace amine::gen;
using chem::canonical_key;
using chem::parse_smiles;

namespace {

std::vector<chem::Molecule> mols(std::initializer_list<const char*> smiles) {
  std::vector<chem::Molecule> out;
  for (const char* s : smiles) out.push_back(parse_smiles(s));
  return out;
}

std::string frag(const char* s) {
  chem::ParseOptions o;
  o.allow_attachment_points = true;
  return canonical_key(s, o);
}

std::vector<std::string> keys(const std::vector<Candidate>& cands) {
  std::vector<std::string> out;
  for (const auto& c : cands) out.push_back(c.key);
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Random core as atom tokens; each token is exactly one atom.
std::vector<std::string> random_core(std::mt19937_64& rng) {
  std::vector<std::string> tok;
  std::uniform_int_distribution<int> pick(0, 99);
  const int ring = pick(rng);
  if (ring < 20) {
    tok = {"C1", "C", "C", "C", "C", "C1"};
  } else if (ring < 35) {
    tok = {"c1", "c", "c", "c", "c", "c1"};
  } else if (ring < 45) {
    tok = {"C1", "C", "N", "C", "C1"};
  }
  const int chain = 3 + pick(rng) % 5;
  for (int i = 0; i < chain; ++i) {
    const int r = pick(rng);
    const bool interior = i > 0 && i + 1 < chain && !tok.empty();
    if (interior && r < 12) {
      tok.push_back("N");
    } else if (interior && r < 22) {
      tok.push_back("O");
    } else if (r < 35 && i > 0 && tok.back() != "(C)" && tok.back() != "O") {
      tok.push_back("(C)");
    } else {
      tok.push_back("C");
    }
  }
  return tok;
}

std::string join_with(const std::vector<std::string>& tok, std::size_t at, const std::string& sub) {
  std::string s;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    s += tok[i];
    if (i == at) s += "(" + sub + ")";
  }
  return s;
}

}  // namespace

TEST_CASE("cuts of ethanol") {
  const auto m = parse_smiles("CCO");
  const auto cuts = enumerate_cuts(m);
  CHECK(cuts.size() == 4);
  std::vector<std::pair<std::string, std::string>> got;
  for (const auto& c : cuts) got.emplace_back(c.core_key, c.fragment_key);
  CHECK(std::count(got.begin(), got.end(), std::pair(frag("*CC"), frag("*O"))) == 1);
  CHECK(std::count(got.begin(), got.end(), std::pair(frag("*C"), frag("*CO"))) == 1);
}

TEST_CASE("ring and multiple bonds are not cut") {
  CHECK(enumerate_cuts(parse_smiles("C1CCCCC1")).empty());
  CHECK(enumerate_cuts(parse_smiles("C=O")).empty());
  CHECK(enumerate_cuts(parse_smiles("c1ccccc1")).empty());
  CHECK(enumerate_cuts(parse_smiles("c1ccccc1N")).size() == 2);
}

TEST_CASE("ethanol / ethylamine rule") {
  const auto rules = extract_rules(mols({"CCO", "CCN"}));
  REQUIRE(rules.size() == 2);
  const auto fwd = std::find_if(rules.begin(), rules.end(),
                                [](const TransformRule& r) { return r.lhs == frag("*O"); });
  REQUIRE(fwd != rules.end());
  CHECK(fwd->rhs == frag("*N"));
  CHECK(fwd->support == 1);
  CHECK(fwd->cut_count == 1);
  // radius 1 around the cut point: the dummy and its CH2 neighbour
  const auto core = parse_smiles("*CC", {false, true});
  CHECK(fwd->environment_key == fp::environment_key(core, 0, 1));
  CHECK(fwd->environment_key.find("h2") != std::string::npos);
}

TEST_CASE("no rules from duplicates or a lone molecule") {
  CHECK(extract_rules(mols({"CCO", "OCC"})).empty());
  CHECK(extract_rules(mols({"C"})).empty());
  CHECK(extract_rules({}).empty());
}

TEST_CASE("support counts distinct pairs") {
  // ethyl and propyl cores each pair OH with NH2
  const auto rules = extract_rules(mols({"CCO", "CCN", "CCCO", "CCCN"}));
  const auto fwd = std::find_if(rules.begin(), rules.end(), [](const TransformRule& r) {
    return r.lhs == frag("*O") && r.rhs == frag("*N");
  });
  REQUIRE(fwd != rules.end());
  CHECK(fwd->support == 2);
}

TEST_CASE("propanol becomes propylamine") {
  const auto rules = extract_rules(mols({"CCO", "CCN"}));
  const auto cands = apply_rules(parse_smiles("CCCO"), rules);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].key == canonical_key("CCCN"));
  CHECK(cands[0].parent_key == canonical_key("CCCO"));
  CHECK(rules[static_cast<std::size_t>(cands[0].rule_id)].lhs == frag("*O"));
}

TEST_CASE("no matching environment") {
  const auto rules = extract_rules(mols({"CCO", "CCN"}));
  // OH on a CH (isopropanol) and on an aromatic carbon
  CHECK(apply_rules(parse_smiles("CC(C)O"), rules).empty());
  CHECK(apply_rules(parse_smiles("c1ccccc1O"), rules).empty());
  CHECK(apply_rules(parse_smiles("CCCC"), rules).empty());
  // radius 0 only looks at the attachment point itself
  const auto r0 = extract_rules(mols({"CCO", "CCN"}), 0);
  CHECK(contains(keys(apply_rules(parse_smiles("CC(C)O"), r0, 0)), canonical_key("CC(C)N")));
}

TEST_CASE("graft keeps bracket atoms and aromatic rings") {
  const chem::ParseOptions o{false, true};
  CHECK(canonical_key(graft(parse_smiles("*c1ccccc1", o), parse_smiles("*[NH3+]", o))) ==
        canonical_key("c1ccccc1[NH3+]"));
  CHECK(canonical_key(graft(parse_smiles("C*", o), parse_smiles("*C(=O)O", o))) ==
        canonical_key("CC(=O)O"));
}

TEST_CASE("MMP closure over random pair families") {
  static const std::vector<std::string> subs{
      "O", "N", "C", "F", "Cl", "Br", "CC", "OC", "NC", "N(C)C", "C#N", "C(=O)O",
      "C=O", "S", "CO", "CN", "C(F)(F)F", "[NH3+]", "C(N)=O", "OO"};
  std::mt19937_64 rng(20261016);
  int families = 0;
  int pairs = 0;
  while (families < 100) {
    const auto tok = random_core(rng);
    std::string core_smiles;
    for (const auto& t : tok) core_smiles += t;
    const auto core = parse_smiles(core_smiles);
    std::vector<std::size_t> sites;
    for (int i = 0; i < core.atom_count(); ++i) {
      const auto& a = core.atom(i);
      if (tok[static_cast<std::size_t>(i)][0] != '(' && a.hydrogens > 0 && a.element == 6) {
        sites.push_back(static_cast<std::size_t>(i));
      }
    }
    if (sites.empty()) continue;
    const std::size_t site = sites[rng() % sites.size()];
    std::vector<std::string> family;
    std::vector<std::string> pool = subs;
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int k = 0; k < 3; ++k) family.push_back(join_with(tok, site, pool[static_cast<std::size_t>(k)]));

    for (std::size_t a = 0; a < family.size(); ++a) {
      for (std::size_t b = 0; b < family.size(); ++b) {
        if (a == b) continue;
        const auto A = parse_smiles(family[a]);
        const auto B = parse_smiles(family[b]);
        INFO(family[a], " -> ", family[b]);
        REQUIRE(canonical_key(A) != canonical_key(B));
        const auto rules = extract_rules({A, B});
        const auto cands = apply_rules(A, rules);
        CHECK(contains(keys(cands), canonical_key(B)));
        for (const auto& c : cands) {
          CHECK_NOTHROW(parse_smiles(c.key));
          CHECK(canonical_key(c.key) == c.key);
        }
        ++pairs;
      }
    }
    ++families;
  }
  CHECK(pairs == 600);
}

TEST_CASE("extraction and application are deterministic") {
  const auto set = mols({"NCCO", "NCCN", "CN(C)CCO", "NCC(C)O", "OCCOCCN", "c1ccccc1CN",
                         "c1ccccc1CO", "NC1CCCCC1O", "NC1CCCCC1N"});
  auto reversed = set;
  std::reverse(reversed.begin(), reversed.end());
  const auto r1 = extract_rules(set);
  const auto r2 = extract_rules(set);
  const auto r3 = extract_rules(reversed);
  CHECK(format_rules(r1, 1) == format_rules(r2, 1));
  CHECK(format_rules(r1, 1) == format_rules(r3, 1));
  for (const auto& m : set) {
    CHECK(keys(apply_rules(m, r1)) == keys(apply_rules(m, r2)));
  }
}

TEST_CASE("filter: duplicates, dataset keys, thresholds") {
  const auto rules = extract_rules(mols({"CCO", "CCN", "CCCl"}));
  auto c1 = apply_rules(parse_smiles("CCCO"), rules);
  auto c2 = apply_rules(parse_smiles("OCCC"), rules);
  REQUIRE(c1.size() == 2);
  std::vector<Candidate> all = c1;
  all.insert(all.end(), c2.begin(), c2.end());

  SUBCASE("duplicate pair leaves one survivor") {
    const auto out = filter_candidates(all, {}, {}, {});
    CHECK(out.size() == 2);
    for (const auto& c : out) {
      CHECK(c.filter_flags.at("valid") == "pass");
      CHECK(c.filter_flags.at("duplicate") == "pass");
      CHECK(c.filter_flags.at("toxicity") == "unknown");
      CHECK(!c.properties.has_value());
    }
  }
  SUBCASE("existing key removed") {
    const auto out = filter_candidates(c1, {canonical_key("CCCN")}, {}, {});
    REQUIRE(out.size() == 1);
    CHECK(out[0].key == canonical_key("CCCCl"));
  }
  SUBCASE("strict drops unknown") {
    FilterThresholds t;
    t.strict = true;
    CHECK(filter_candidates(c1, {}, {}, t).empty());
  }
  SUBCASE("LD50 below threshold") {
    PropertyTable props;
    props[canonical_key("CCCN")] = {{kLd50, 50.0}, {kPkb, 3.4}, {kWaterSolubility, 1.0}};
    props[canonical_key("CCCCl")] = {{kLd50, 2000.0}, {kPkb, 3.0}, {kWaterSolubility, 0.0}};
    FilterThresholds t;
    t.strict = true;
    const auto out = filter_candidates(c1, {}, props, t);
    REQUIRE(out.size() == 1);
    CHECK(out[0].key == canonical_key("CCCCl"));
    CHECK(out[0].filter_flags.at("toxicity") == "pass");
    CHECK(out[0].properties->at(kLd50) == 2000.0);
    auto flagged = c1;
    filter_candidates(flagged, {}, props, t);
    t.strict = false;
    CHECK(filter_candidates(c1, {}, props, t).size() == 1);
  }
  SUBCASE("invalid key fails") {
    auto bad = c1;
    bad[0].key = "C(";
    const auto out = filter_candidates(bad, {}, {}, {});
    CHECK(out.size() == 1);
  }
}

TEST_CASE("rule file round trip") {
  const auto rules = extract_rules(mols({"NCCO", "NCCN", "NCCCl"}), 2);
  const std::string text = format_rules(rules, 2);
  CHECK(text.rfind("# aminescreen.rules v1 radius=2\nlhs,rhs,environment_key,support\n", 0) == 0);
  int radius = -1;
  const auto back = parse_rules(text, &radius);
  CHECK(radius == 2);
  REQUIRE(back.size() == rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    CHECK(back[i].lhs == rules[i].lhs);
    CHECK(back[i].rhs == rules[i].rhs);
    CHECK(back[i].environment_key == rules[i].environment_key);
    CHECK(back[i].support == rules[i].support);
  }
  CHECK_THROWS_AS(parse_rules("lhs,rhs,environment_key,support\n"), Error);
  CHECK_THROWS_AS(parse_rules("# aminescreen.rules v1 radius=1\nlhs,rhs,environment_key,support\n*O,*O,x,1\n"),
                  Error);
}

TEST_CASE("property table parsing") {
  const auto t = parse_property_table(
      "smiles,LD50,pKb,WS,note\nOCCN,1500,4.5,0.8,x\nNCCCN,,3.9,,y\n");
  REQUIRE(t.size() == 2);
  CHECK(t.at(canonical_key("NCCO")).at(kLd50) == 1500.0);
  CHECK(t.at(canonical_key("NCCO")).at(kWaterSolubility) == 0.8);
  CHECK(t.at(canonical_key("NCCCN")).count(kLd50) == 0);
  const auto byik = parse_property_table("inchikey,ld50\nHZAXFHJVJLSVMW-UHFFFAOYSA-N,1200\nZZZ,1\n",
                                         {{"HZAXFHJVJLSVMW-UHFFFAOYSA-N", canonical_key("NCCO")}});
  REQUIRE(byik.size() == 1);
  CHECK(byik.at(canonical_key("NCCO")).at(kLd50) == 1200.0);
}

TEST_CASE("candidate CSV") {
  const auto rules = extract_rules(mols({"CCO", "CCN"}));
  auto cands = filter_candidates(apply_rules(parse_smiles("CCCO"), rules), {}, {}, {});
  const std::string csv = format_candidates(cands, rules);
  CHECK(csv.find("smiles,parent,rule_id,lhs,rhs,environment_key,valid,duplicate") == 0);
  CHECK(csv.find(canonical_key("CCCN") + "," + canonical_key("CCCO")) != std::string::npos);
}

TEST_CASE("pairs need one fragment no larger than the shared core") {
  // Ethyl core (2 heavy atoms): F fits, so F <-> COOH is mined both ways.
  const auto rules = extract_rules(mols({"CCF", "CCC(=O)O"}));
  bool forward = false, backward = false;
  for (const auto& r : rules) {
    forward = forward || (r.lhs == "*F" && r.rhs == "*C(=O)O");
    backward = backward || (r.lhs == "*C(=O)O" && r.rhs == "*F");
  }
  CHECK(forward);
  CHECK(backward);
  const auto cands = apply_rules(parse_smiles("CCF"), rules);
  CHECK(contains(keys(cands), canonical_key("CCC(=O)O")));
  // Methyl core against two 2-atom fragments: not a matched pair.
  for (const auto& r : extract_rules(mols({"CCO", "CCN"}))) CHECK(r.lhs.size() <= 2);
}
