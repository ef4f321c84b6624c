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

#include "generate/mmp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>

#include "chem/elements.hpp"
#include "chem/smiles.hpp"
#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/log.hpp"
#include "fingerprint/fingerprint.hpp"

namespace amine::gen {

using chem::Atom;
using chem::Bond;
using chem::BondOrder;
using chem::Molecule;

namespace {

constexpr const char* kRulesFormat = "aminescreen.rules v1";

void check_radius(int r) {
  if (r < 0 || r > kMaxEnvRadius) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("environment radius {} outside [0, {}]", r, kMaxEnvRadius));
  }
}

bool is_heavy(const Atom& a) { return a.element != 1 && a.element != chem::kDummyElement; }

// Atoms reachable from `start` without crossing `cut`.
std::vector<int> side_of(const Molecule& m, int start, int cut) {
  std::vector<bool> seen(static_cast<std::size_t>(m.atom_count()), false);
  std::vector<int> out;
  std::queue<int> q;
  q.push(start);
  seen[static_cast<std::size_t>(start)] = true;
  while (!q.empty()) {
    const int a = q.front();
    q.pop();
    out.push_back(a);
    for (const chem::Neighbor& nb : m.neighbors(a)) {
      if (nb.bond == cut || seen[static_cast<std::size_t>(nb.atom)]) continue;
      seen[static_cast<std::size_t>(nb.atom)] = true;
      q.push(nb.atom);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Induced subgraph on `atoms` plus a '*' bonded to `anchor`. The dummy is
// the last atom.
Molecule piece(const Molecule& m, const std::vector<int>& atoms, int anchor) {
  std::vector<int> local(static_cast<std::size_t>(m.atom_count()), -1);
  std::vector<Atom> out_atoms;
  for (int a : atoms) {
    local[static_cast<std::size_t>(a)] = static_cast<int>(out_atoms.size());
    Atom copy = m.atom(a);
    copy.chirality.clear();
    copy.source_position = chem::kNoPosition;
    out_atoms.push_back(std::move(copy));
  }
  std::vector<Bond> out_bonds;
  for (const Bond& b : m.bonds()) {
    const int la = local[static_cast<std::size_t>(b.begin)];
    const int lb = local[static_cast<std::size_t>(b.end)];
    if (la < 0 || lb < 0) continue;
    out_bonds.push_back({la, lb, b.order, chem::BondStereo::kNone});
  }
  Atom dummy;
  dummy.element = chem::kDummyElement;
  dummy.bracket = true;
  const int d = static_cast<int>(out_atoms.size());
  out_atoms.push_back(dummy);
  out_bonds.push_back({local[static_cast<std::size_t>(anchor)], d, BondOrder::kSingle,
                       chem::BondStereo::kNone});
  return Molecule(std::move(out_atoms), std::move(out_bonds));
}

int dummy_index(const Molecule& m) {
  int found = -1;
  for (int i = 0; i < m.atom_count(); ++i) {
    if (m.atom(i).element != chem::kDummyElement) continue;
    if (found >= 0) throw Error(ErrorCode::kInvalidArgument, "more than one attachment point");
    found = i;
  }
  if (found < 0) throw Error(ErrorCode::kInvalidArgument, "no attachment point");
  return found;
}

int heavy_count(const Molecule& m) {
  return static_cast<int>(std::count_if(m.atoms().begin(), m.atoms().end(), is_heavy));
}

Molecule parse_fragment(const std::string& smiles) {
  chem::ParseOptions opts;
  opts.allow_attachment_points = true;
  Molecule f = chem::parse_smiles(smiles, opts);
  dummy_index(f);
  return f;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<double> to_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

std::vector<Cut> enumerate_cuts(const Molecule& m, int env_radius) {
  check_radius(env_radius);
  std::vector<Cut> cuts;
  for (int b = 0; b < m.bond_count(); ++b) {
    const Bond& bond = m.bond(b);
    if (bond.order != BondOrder::kSingle || m.is_ring_bond(b)) continue;
    if (!is_heavy(m.atom(bond.begin)) || !is_heavy(m.atom(bond.end))) continue;
    const std::vector<int> first = side_of(m, bond.begin, b);
    const std::vector<int> second = side_of(m, bond.end, b);
    for (int dir = 0; dir < 2; ++dir) {
      const bool fwd = dir == 0;
      Cut c;
      c.bond = b;
      c.core = piece(m, fwd ? first : second, fwd ? bond.begin : bond.end);
      c.fragment = piece(m, fwd ? second : first, fwd ? bond.end : bond.begin);
      c.core_key = chem::canonical_key(c.core);
      c.fragment_key = chem::canonical_key(c.fragment);
      c.environment_key = fp::environment_key(c.core, c.core.atom_count() - 1, env_radius);
      cuts.push_back(std::move(c));
    }
  }
  return cuts;
}

Molecule graft(const Molecule& core, const Molecule& fragment) {
  const int dc = dummy_index(core);
  const int df = dummy_index(fragment);
  const int anchor_c = core.neighbors(dc)[0].atom;
  const int anchor_f = fragment.neighbors(df)[0].atom;
  std::vector<Atom> atoms;
  std::vector<int> map_c(static_cast<std::size_t>(core.atom_count()), -1);
  std::vector<int> map_f(static_cast<std::size_t>(fragment.atom_count()), -1);
  for (int i = 0; i < core.atom_count(); ++i) {
    if (i == dc) continue;
    map_c[static_cast<std::size_t>(i)] = static_cast<int>(atoms.size());
    atoms.push_back(core.atom(i));
  }
  for (int i = 0; i < fragment.atom_count(); ++i) {
    if (i == df) continue;
    map_f[static_cast<std::size_t>(i)] = static_cast<int>(atoms.size());
    atoms.push_back(fragment.atom(i));
  }
  std::vector<Bond> bonds;
  auto copy_bonds = [&](const Molecule& src, const std::vector<int>& map) {
    for (const Bond& b : src.bonds()) {
      const int a = map[static_cast<std::size_t>(b.begin)];
      const int c = map[static_cast<std::size_t>(b.end)];
      if (a < 0 || c < 0) continue;
      bonds.push_back({a, c, b.order, b.stereo});
    }
  };
  copy_bonds(core, map_c);
  copy_bonds(fragment, map_f);
  bonds.push_back({map_c[static_cast<std::size_t>(anchor_c)],
                   map_f[static_cast<std::size_t>(anchor_f)], BondOrder::kSingle,
                   chem::BondStereo::kNone});
  return Molecule(std::move(atoms), std::move(bonds));
}

std::vector<TransformRule> extract_rules(const std::vector<Molecule>& molecules,
                                         int env_radius) {
  check_radius(env_radius);
  struct Entry {
    int molecule;
    std::string fragment;
    std::string environment;
    int fragment_size;
    int core_size;
  };
  std::set<std::string> seen_keys;
  std::map<std::string, std::vector<Entry>> by_core;
  int index = 0;
  for (const Molecule& m : molecules) {
    if (!seen_keys.insert(chem::canonical_key(m)).second) continue;
    std::set<std::pair<std::string, std::string>> local;
    for (Cut& c : enumerate_cuts(m, env_radius)) {
      if (!local.insert({c.core_key, c.fragment_key}).second) continue;
      by_core[c.core_key].push_back({index, c.fragment_key, c.environment_key, heavy_count(c.fragment),
                                    heavy_count(c.core)});
    }
    ++index;
  }

  std::map<std::tuple<std::string, std::string, std::string>, std::set<std::pair<int, int>>>
      pairs;
  for (const auto& [core, entries] : by_core) {
    for (const Entry& a : entries) {
      for (const Entry& b : entries) {
        if (a.molecule == b.molecule || a.fragment == b.fragment) continue;
        // The shared part must be the larger side in at least one member.
        if (std::min(a.fragment_size, b.fragment_size) > a.core_size) continue;
        pairs[{a.fragment, b.fragment, a.environment}].insert({a.molecule, b.molecule});
      }
    }
  }
  std::vector<TransformRule> rules;
  rules.reserve(pairs.size());
  for (const auto& [k, who] : pairs) {
    rules.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k),
                     static_cast<int>(who.size()), 1});
  }
  return rules;
}

std::vector<Candidate> apply_rules(const Molecule& m, const std::vector<TransformRule>& rules,
                                   int env_radius) {
  check_radius(env_radius);
  std::map<std::pair<std::string, std::string>, std::vector<int>> index;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    index[{rules[i].lhs, rules[i].environment_key}].push_back(static_cast<int>(i));
  }
  const std::string parent = chem::canonical_key(m);
  std::unordered_map<int, Molecule> rhs_cache;
  std::set<std::string> emitted{parent};
  std::vector<Candidate> out;
  for (const Cut& c : enumerate_cuts(m, env_radius)) {
    const auto it = index.find({c.fragment_key, c.environment_key});
    if (it == index.end()) continue;
    for (int id : it->second) {
      auto cached = rhs_cache.find(id);
      if (cached == rhs_cache.end()) {
        cached = rhs_cache.emplace(id, parse_fragment(rules[static_cast<std::size_t>(id)].rhs))
                     .first;
      }
      Molecule product;
      try {
        product = graft(c.core, cached->second);
      } catch (const Error&) {
        continue;  // valence violation at the graft site
      }
      std::string key = chem::canonical_key(product);
      if (!emitted.insert(key).second) continue;
      Candidate cand;
      cand.molecule = std::move(product);
      cand.key = std::move(key);
      cand.parent_key = parent;
      cand.rule_id = id;
      out.push_back(std::move(cand));
    }
  }
  return out;
}

std::vector<Candidate> filter_candidates(std::vector<Candidate> cands,
                                         const std::set<std::string>& dedupe_against,
                                         const PropertyTable& property_table,
                                         const FilterThresholds& thresholds) {
  std::set<std::string> batch;
  std::vector<Candidate> kept;
  for (Candidate& c : cands) {
    auto& flags = c.filter_flags;
    bool valid = false;
    try {
      valid = !c.key.empty() && chem::canonical_key(c.key) == c.key;
    } catch (const Error&) {
      valid = false;
    }
    flags["valid"] = valid ? "pass" : "fail";
    const bool dup = dedupe_against.contains(c.key) || !batch.insert(c.key).second;
    flags["duplicate"] = dup ? "fail" : "pass";

    const auto row = property_table.find(c.key);
    if (row != property_table.end()) c.properties = row->second;
    auto check = [&](const char* flag, const char* prop, auto ok) {
      if (row == property_table.end()) {
        flags[flag] = "unknown";
        return;
      }
      const auto v = row->second.find(prop);
      flags[flag] = v == row->second.end() ? "unknown" : (ok(v->second) ? "pass" : "fail");
    };
    check("solubility", kWaterSolubility,
          [&](double v) { return v > thresholds.min_water_solubility; });
    check("pkb", kPkb, [&](double v) { return v < thresholds.max_pkb; });
    check("toxicity", kLd50, [&](double v) { return v > thresholds.min_ld50; });

    bool keep = true;
    for (const auto& [name, value] : flags) {
      if (value == "fail" || (value == "unknown" && thresholds.strict)) keep = false;
    }
    if (keep) kept.push_back(std::move(c));
  }
  return kept;
}

std::string format_rules(const std::vector<TransformRule>& rules, int env_radius) {
  std::string out = fmt::format("# {} radius={}\nlhs,rhs,environment_key,support\n",
                                kRulesFormat, env_radius);
  for (const TransformRule& r : rules) {
    out += csv::join({r.lhs, r.rhs, r.environment_key, std::to_string(r.support)});
    out += '\n';
  }
  return out;
}

std::vector<TransformRule> parse_rules(const std::string& text, int* env_radius) {
  const csv::Table t = csv::parse(text);
  int radius = -1;
  for (const std::string& line : t.comments) {
    const auto pos = line.find(kRulesFormat);
    if (pos == std::string::npos) continue;
    const auto r = line.find("radius=", pos);
    if (r != std::string::npos) radius = std::atoi(line.c_str() + r + 7);
  }
  if (radius < 0) throw Error(ErrorCode::kFormat, "rule file lacks the format/version line");
  check_radius(radius);
  const std::vector<std::string> expected{"lhs", "rhs", "environment_key", "support"};
  if (t.header != expected) throw Error(ErrorCode::kFormat, "unexpected rule file header");
  std::vector<TransformRule> rules;
  for (const auto& row : t.rows) {
    if (row.size() != 4) throw Error(ErrorCode::kFormat, "rule row needs 4 fields");
    TransformRule r{row[0], row[1], row[2], 0, 1};
    const auto s = to_double(row[3]);
    if (!s || *s < 0) throw Error(ErrorCode::kFormat, "bad rule support: " + row[3]);
    r.support = static_cast<int>(*s);
    if (r.lhs == r.rhs) throw Error(ErrorCode::kFormat, "rule with lhs == rhs");
    parse_fragment(r.lhs);
    parse_fragment(r.rhs);
    rules.push_back(std::move(r));
  }
  if (env_radius) *env_radius = radius;
  return rules;
}

void write_rules(const std::filesystem::path& path, const std::vector<TransformRule>& rules,
                 int env_radius) {
  csv::write_file(path, format_rules(rules, env_radius));
}

std::vector<TransformRule> read_rules(const std::filesystem::path& path, int* env_radius) {
  return parse_rules(csv::read_text(path), env_radius);
}

PropertyTable parse_property_table(const std::string& text,
                                   const std::map<std::string, std::string>& inchikey_to_key) {
  const csv::Table t = csv::parse(text);
  std::optional<std::size_t> key_col;
  bool key_is_inchikey = false;
  bool key_is_smiles = false;
  std::vector<std::pair<std::size_t, std::string>> props;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    const std::string h = lower(t.header[i]);
    if (h == "canonical_key" || h == "key") {
      key_col = i;
      key_is_smiles = key_is_inchikey = false;
    } else if (h == "smiles" && !key_col) {
      key_col = i;
      key_is_smiles = true;
    } else if (h == "inchikey" && !key_col) {
      key_col = i;
      key_is_inchikey = true;
    } else if (h == "water_solubility" || h == "ws" || h == "logws" || h == "solubility") {
      props.emplace_back(i, kWaterSolubility);
    } else if (h == "pkb") {
      props.emplace_back(i, kPkb);
    } else if (h == "ld50" || h == "catmos_ld50") {
      props.emplace_back(i, kLd50);
    }
  }
  if (!key_col) throw Error(ErrorCode::kFormat, "property table has no key column");
  PropertyTable table;
  for (const auto& row : t.rows) {
    if (*key_col >= row.size()) continue;
    std::string key = row[*key_col];
    if (key_is_inchikey) {
      const auto it = inchikey_to_key.find(key);
      if (it == inchikey_to_key.end()) {
        log::warn("property table: unknown InChIKey " + key);
        continue;
      }
      key = it->second;
    } else if (key_is_smiles) {
      key = chem::canonical_key(key);
    }
    auto& entry = table[key];
    for (const auto& [col, name] : props) {
      if (col >= row.size()) continue;
      if (const auto v = to_double(row[col])) entry[name] = *v;
    }
  }
  return table;
}

PropertyTable read_property_table(const std::filesystem::path& path,
                                  const std::map<std::string, std::string>& inchikey_to_key) {
  return parse_property_table(csv::read_text(path), inchikey_to_key);
}

std::string format_candidates(const std::vector<Candidate>& cands,
                              const std::vector<TransformRule>& rules) {
  static const char* kFlags[] = {"valid", "duplicate", "solubility", "pkb", "toxicity"};
  std::string out =
      "smiles,parent,rule_id,lhs,rhs,environment_key,valid,duplicate,solubility,pkb,toxicity\n";
  for (const Candidate& c : cands) {
    std::vector<std::string> f{c.key, c.parent_key, std::to_string(c.rule_id)};
    if (c.rule_id >= 0 && static_cast<std::size_t>(c.rule_id) < rules.size()) {
      const TransformRule& r = rules[static_cast<std::size_t>(c.rule_id)];
      f.insert(f.end(), {r.lhs, r.rhs, r.environment_key});
    } else {
      f.insert(f.end(), {"", "", ""});
    }
    for (const char* name : kFlags) {
      const auto it = c.filter_flags.find(name);
      f.push_back(it == c.filter_flags.end() ? "" : it->second);
    }
    out += csv::join(f);
    out += '\n';
  }
  return out;
}

}  // namespace amine::gen
