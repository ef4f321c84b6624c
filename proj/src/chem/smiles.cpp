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

#include "chem/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include "chem/canon.hpp"
#include "chem/elements.hpp"
#include "common/error.hpp"

namespace amine::chem {
namespace {

struct PendingBond {
  BondOrder order = BondOrder::kSingle;
  BondStereo stereo = BondStereo::kNone;
  std::size_t position = 0;
};

struct RingOpening {
  int atom;
  std::optional<PendingBond> bond;
  std::size_t position;
};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : text_(text), options_(options) {}

  Molecule run() {
    if (text_.empty()) {
      throw ParseError(ErrorCode::kSyntax, 0, "empty SMILES");
    }
    while (pos_ < text_.size()) step();
    if (!branches_.empty()) {
      throw ParseError(ErrorCode::kUnbalancedBranch, text_.size(),
                       "unclosed '('");
    }
    if (!rings_.empty()) {
      const auto& [digit, opening] = *rings_.begin();
      throw ParseError(ErrorCode::kUnclosedRingBond, opening.position,
                       fmt::format("ring bond {} never closed", digit));
    }
    if (pending_) {
      throw ParseError(ErrorCode::kSyntax, pending_->position,
                       "bond symbol without a following atom");
    }
    if (atoms_.empty()) throw ParseError(ErrorCode::kSyntax, 0, "no atoms");
    fold_hydrogens();
    return Molecule(std::move(atoms_), std::move(bonds_), std::string(text_));
  }

 private:
  void step() {
    const char c = text_[pos_];
    switch (c) {
      case '(':
        if (previous_ < 0) {
          throw ParseError(ErrorCode::kUnbalancedBranch, pos_,
                           "branch without a preceding atom");
        }
        if (pending_) {
          throw ParseError(ErrorCode::kSyntax, pos_, "bond before '('");
        }
        branches_.push_back(previous_);
        ++pos_;
        return;
      case ')':
        if (branches_.empty()) {
          throw ParseError(ErrorCode::kUnbalancedBranch, pos_,
                           "')' without matching '('");
        }
        if (pending_) {
          throw ParseError(ErrorCode::kSyntax, pos_, "bond before ')'");
        }
        previous_ = branches_.back();
        branches_.pop_back();
        ++pos_;
        return;
      case '-': set_bond(BondOrder::kSingle, BondStereo::kNone); return;
      case '=': set_bond(BondOrder::kDouble, BondStereo::kNone); return;
      case '#': set_bond(BondOrder::kTriple, BondStereo::kNone); return;
      case ':': set_bond(BondOrder::kAromatic, BondStereo::kNone); return;
      case '/': set_bond(BondOrder::kSingle, BondStereo::kUp); return;
      case '\\': set_bond(BondOrder::kSingle, BondStereo::kDown); return;
      case '.':
        if (!options_.allow_multi_component) {
          throw ParseError(ErrorCode::kMultiComponent, pos_,
                           "multi-component SMILES not accepted");
        }
        if (pending_ || !branches_.empty()) {
          throw ParseError(ErrorCode::kSyntax, pos_, "misplaced '.'");
        }
        previous_ = -1;
        ++pos_;
        return;
      case '%': {
        if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
          throw ParseError(ErrorCode::kSyntax, pos_, "'%' needs two digits");
        }
        const int digit = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
        ring_bond(digit, pos_);
        pos_ += 3;
        return;
      }
      case '[':
        bracket_atom();
        return;
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ring_bond(c - '0', pos_);
      ++pos_;
      return;
    }
    organic_atom();
  }

  void set_bond(BondOrder order, BondStereo stereo) {
    if (pending_) {
      throw ParseError(ErrorCode::kSyntax, pos_, "two consecutive bond symbols");
    }
    if (previous_ < 0) {
      throw ParseError(ErrorCode::kSyntax, pos_, "bond without a preceding atom");
    }
    pending_ = PendingBond{order, stereo, pos_};
    ++pos_;
  }

  void ring_bond(int digit, std::size_t position) {
    if (previous_ < 0) {
      throw ParseError(ErrorCode::kSyntax, position,
                       "ring bond without a preceding atom");
    }
    auto it = rings_.find(digit);
    if (it == rings_.end()) {
      rings_.emplace(digit, RingOpening{previous_, pending_, position});
      pending_.reset();
      return;
    }
    const RingOpening opening = it->second;
    rings_.erase(it);
    if (opening.atom == previous_) {
      throw ParseError(ErrorCode::kSyntax, position, "ring bond to itself");
    }
    std::optional<PendingBond> bond = pending_;
    if (opening.bond && bond && opening.bond->order != bond->order) {
      throw ParseError(ErrorCode::kSyntax, position,
                       "conflicting ring bond orders");
    }
    if (!bond) bond = opening.bond;
    add_bond(opening.atom, previous_, bond);
    pending_.reset();
  }

  void add_bond(int a, int b, const std::optional<PendingBond>& pending) {
    Bond bond{a, b, BondOrder::kSingle, BondStereo::kNone};
    if (pending) {
      bond.order = pending->order;
      bond.stereo = pending->stereo;
    } else if (atoms_[static_cast<std::size_t>(a)].aromatic &&
               atoms_[static_cast<std::size_t>(b)].aromatic) {
      bond.order = BondOrder::kAromatic;
    }
    bonds_.push_back(bond);
  }

  void add_atom(Atom atom) {
    atoms_.push_back(std::move(atom));
    const int index = static_cast<int>(atoms_.size()) - 1;
    if (previous_ >= 0) add_bond(previous_, index, pending_);
    pending_.reset();
    previous_ = index;
  }

  void organic_atom() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    Atom atom;
    atom.source_position = start;
    if (c == '*') {
      if (!options_.allow_attachment_points) {
        throw ParseError(ErrorCode::kUnknownElement, start,
                         "'*' attachment points are not accepted here");
      }
      atom.element = kDummyElement;
      atom.bracket = true;
      ++pos_;
      add_atom(std::move(atom));
      return;
    }
    std::string symbol(1, c);
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      symbol = "Cl";
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      symbol = "Br";
    }
    bool aromatic = false;
    if (symbol.size() == 1 && std::islower(static_cast<unsigned char>(c))) {
      if (c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's') {
        aromatic = true;
        symbol[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      } else {
        throw_unknown(start);
      }
    }
    const auto info = element_by_symbol(symbol);
    if (!info || !is_organic_subset(info->atomic_number)) throw_unknown(start);
    atom.element = info->atomic_number;
    atom.aromatic = aromatic;
    pos_ += symbol.size();
    add_atom(std::move(atom));
  }

  [[noreturn]] void throw_unknown(std::size_t start) {
    const char c = text_[start];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError(ErrorCode::kUnknownElement, start,
                       fmt::format("unknown element starting with '{}'", c));
    }
    throw ParseError(ErrorCode::kSyntax, start,
                     fmt::format("unexpected character '{}'", c));
  }

  void bracket_atom() {
    const std::size_t start = pos_;
    const std::size_t close = text_.find(']', start);
    if (close == std::string_view::npos) {
      throw ParseError(ErrorCode::kSyntax, start, "unterminated '['");
    }
    std::size_t i = start + 1;
    auto at = [&](std::size_t k) -> char { return k < close ? text_[k] : '\0'; };
    if (std::isdigit(static_cast<unsigned char>(at(i)))) {
      throw ParseError(ErrorCode::kSyntax, i, "isotopes are not supported");
    }
    Atom atom;
    atom.bracket = true;
    atom.source_position = start;
    if (at(i) == '*') {
      if (!options_.allow_attachment_points) {
        throw ParseError(ErrorCode::kUnknownElement, i,
                         "'*' attachment points are not accepted here");
      }
      atom.element = kDummyElement;
      ++i;
    } else {
      std::string symbol;
      const char first = at(i);
      if (!std::isalpha(static_cast<unsigned char>(first))) {
        throw ParseError(ErrorCode::kSyntax, i, "expected element symbol");
      }
      if (std::islower(static_cast<unsigned char>(first))) {
        atom.aromatic = true;
        // Two-letter aromatic symbols: se, as.
        const char second = at(i + 1);
        if ((first == 's' && second == 'e') || (first == 'a' && second == 's')) {
          symbol = {static_cast<char>(std::toupper(static_cast<unsigned char>(first))), second};
          i += 2;
        } else if (first == 'b' || first == 'c' || first == 'n' || first == 'o' ||
                   first == 'p' || first == 's') {
          symbol = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(first))));
          i += 1;
        } else {
          throw ParseError(ErrorCode::kUnknownElement, i,
                           fmt::format("unknown aromatic element '{}'", first));
        }
      } else {
        const char second = at(i + 1);
        if (std::islower(static_cast<unsigned char>(second)) &&
            element_by_symbol(std::string{first, second})) {
          symbol = {first, second};
          i += 2;
        } else {
          symbol = std::string(1, first);
          i += 1;
        }
      }
      const auto info = element_by_symbol(symbol);
      if (!info) {
        throw ParseError(ErrorCode::kUnknownElement, start + 1,
                         fmt::format("unknown element '{}'", symbol));
      }
      atom.element = info->atomic_number;
    }
    if (at(i) == '@') {
      std::size_t j = i;
      while (at(j) == '@') ++j;
      while (std::isupper(static_cast<unsigned char>(at(j))) && at(j) != 'H') ++j;
      while (std::isdigit(static_cast<unsigned char>(at(j)))) ++j;
      atom.chirality = std::string(text_.substr(i, j - i));
      i = j;
    }
    if (at(i) == 'H') {
      ++i;
      int h = 1;
      if (std::isdigit(static_cast<unsigned char>(at(i)))) {
        h = at(i) - '0';
        ++i;
      }
      atom.hydrogens = h;
    }
    if (at(i) == '+' || at(i) == '-') {
      const char sign = at(i);
      int magnitude = 0;
      while (at(i) == sign) {
        ++magnitude;
        ++i;
      }
      if (magnitude == 1 && std::isdigit(static_cast<unsigned char>(at(i)))) {
        magnitude = 0;
        while (std::isdigit(static_cast<unsigned char>(at(i)))) {
          magnitude = magnitude * 10 + (at(i) - '0');
          ++i;
        }
      }
      atom.charge = sign == '+' ? magnitude : -magnitude;
    }
    if (at(i) == ':') {
      ++i;
      while (std::isdigit(static_cast<unsigned char>(at(i)))) ++i;
    }
    if (i != close) {
      throw ParseError(ErrorCode::kSyntax, i, "unexpected text in bracket atom");
    }
    pos_ = close + 1;
    add_atom(std::move(atom));
  }

  // Explicit neutral [H] atoms with one heavy neighbour become hydrogen
  // counts on that neighbour.
  void fold_hydrogens() {
    std::vector<int> degree(atoms_.size(), 0);
    for (const Bond& b : bonds_) {
      ++degree[static_cast<std::size_t>(b.begin)];
      ++degree[static_cast<std::size_t>(b.end)];
    }
    std::vector<bool> drop(atoms_.size(), false);
    for (const Bond& b : bonds_) {
      for (int side = 0; side < 2; ++side) {
        const int h = side == 0 ? b.begin : b.end;
        const int heavy = side == 0 ? b.end : b.begin;
        const Atom& ha = atoms_[static_cast<std::size_t>(h)];
        const Atom& pa = atoms_[static_cast<std::size_t>(heavy)];
        if (ha.element == 1 && ha.charge == 0 && ha.hydrogens == 0 &&
            degree[static_cast<std::size_t>(h)] == 1 && pa.element != 1 &&
            b.order == BondOrder::kSingle) {
          drop[static_cast<std::size_t>(h)] = true;
          if (pa.bracket) ++atoms_[static_cast<std::size_t>(heavy)].hydrogens;
        }
      }
    }
    if (std::find(drop.begin(), drop.end(), true) == drop.end()) return;
    std::vector<int> remap(atoms_.size(), -1);
    std::vector<Atom> kept;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (drop[i]) continue;
      remap[i] = static_cast<int>(kept.size());
      kept.push_back(atoms_[i]);
    }
    std::vector<Bond> kept_bonds;
    for (Bond b : bonds_) {
      if (drop[static_cast<std::size_t>(b.begin)] || drop[static_cast<std::size_t>(b.end)]) {
        continue;
      }
      b.begin = remap[static_cast<std::size_t>(b.begin)];
      b.end = remap[static_cast<std::size_t>(b.end)];
      kept_bonds.push_back(b);
    }
    atoms_ = std::move(kept);
    bonds_ = std::move(kept_bonds);
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  int previous_ = -1;
  std::optional<PendingBond> pending_;
  std::vector<int> branches_;
  std::map<int, RingOpening> rings_;
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
};

std::string atom_token(const Molecule& m, int i) {
  const Atom& a = m.atom(i);
  if (a.element == kDummyElement) return "*";
  std::string symbol(element_info(a.element).symbol);
  if (a.aromatic) {
    for (char& ch : symbol) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  const bool bare = is_organic_subset(a.element) && a.charge == 0 &&
                    default_hydrogens(m, i) == a.hydrogens;
  if (bare) return symbol;
  std::string out = "[" + symbol;
  if (a.hydrogens > 0) {
    out += "H";
    if (a.hydrogens > 1) out += std::to_string(a.hydrogens);
  }
  if (a.charge != 0) {
    out += a.charge > 0 ? "+" : "-";
    const int magnitude = a.charge > 0 ? a.charge : -a.charge;
    if (magnitude > 1) out += std::to_string(magnitude);
  }
  out += "]";
  return out;
}

std::string bond_token(const Molecule& m, int bond) {
  const Bond& b = m.bond(bond);
  const bool both_aromatic = m.atom(b.begin).aromatic && m.atom(b.end).aromatic;
  switch (b.order) {
    case BondOrder::kSingle: return both_aromatic ? "-" : "";
    case BondOrder::kDouble: return "=";
    case BondOrder::kTriple: return "#";
    case BondOrder::kAromatic: return both_aromatic ? "" : ":";
  }
  return "";
}

std::vector<LabeledEdge> molecule_edges(const Molecule& m) {
  std::vector<LabeledEdge> edges;
  edges.reserve(static_cast<std::size_t>(m.bond_count()));
  for (const Bond& b : m.bonds()) {
    edges.push_back({b.begin, b.end, static_cast<int>(b.order)});
  }
  return edges;
}

}  // namespace

Molecule parse_smiles(std::string_view text, const ParseOptions& options) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c > 127 || std::isspace(c) || !std::isprint(c)) {
      throw ParseError(ErrorCode::kSyntax, i, "non-ASCII or whitespace character");
    }
  }
  return Parser(text, options).run();
}

std::vector<Molecule> parse_components(std::string_view text,
                                       const ParseOptions& options) {
  std::vector<Molecule> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    ParseOptions single = options;
    single.allow_multi_component = false;
    try {
      out.push_back(parse_smiles(text.substr(start, dot - start), single));
    } catch (const ParseError& e) {
      throw ParseError(e.code(), e.position() + start, e.what());
    }
    start = dot + 1;
    if (dot == text.size()) break;
  }
  return out;
}

std::string write_smiles(const Molecule& m, std::span<const int> priority) {
  const auto edges = molecule_edges(m);
  DfsTokens tokens{
      [&](int v) { return atom_token(m, v); },
      [&](int e, int, int) { return bond_token(m, e); },
  };
  return dfs_serialize(m.atom_count(), edges, priority, tokens);
}

std::string write_smiles(const Molecule& m) {
  std::vector<int> order(static_cast<std::size_t>(m.atom_count()));
  std::iota(order.begin(), order.end(), 0);
  return write_smiles(m, order);
}

std::string canonical_key(const Molecule& m) {
  LabeledGraph graph;
  graph.edges = molecule_edges(m);
  graph.vertex_labels.reserve(static_cast<std::size_t>(m.atom_count()));
  for (int i = 0; i < m.atom_count(); ++i) {
    const Atom& a = m.atom(i);
    // element | aromatic | charge | H | degree, packed into one sortable key.
    const std::int64_t label =
        ((((static_cast<std::int64_t>(a.element) * 2 + (a.aromatic ? 1 : 0)) * 32 +
           (a.charge + 16)) * 16 + a.hydrogens) * 16) +
        static_cast<std::int64_t>(m.neighbors(i).size());
    graph.vertex_labels.push_back(label);
  }
  const std::vector<int> ranks = canonical_ranks(graph);
  return write_smiles(m, ranks);
}

std::string canonical_key(std::string_view smiles, const ParseOptions& options) {
  return canonical_key(parse_smiles(smiles, options));
}

}  // namespace amine::chem
