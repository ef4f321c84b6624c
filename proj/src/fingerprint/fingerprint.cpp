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


#include "fingerprint/fingerprint.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "chem/canon.hpp"
#include "chem/elements.hpp"
#include "common/error.hpp"

namespace amine::fp {
namespace {

using chem::BondOrder;
using chem::Molecule;

std::string atom_label(const Molecule& m, int i) {
  const chem::Atom& a = m.atom(i);
  if (a.element == chem::kDummyElement) return "*";
  std::string symbol(chem::element_info(a.element).symbol);
  if (a.aromatic) {
    for (char& c : symbol) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (a.charge != 0) symbol += fmt::format("{:+d}", a.charge);
  return fmt::format("{}[h{}]", symbol, a.hydrogens);
}

std::int64_t atom_code(const Molecule& m, int i, bool center) {
  const chem::Atom& a = m.atom(i);
  return (((static_cast<std::int64_t>(center ? 0 : 1) * 128 + a.element) * 2 +
           (a.aromatic ? 1 : 0)) * 32 + (a.charge + 16)) * 16 + a.hydrogens;
}

std::string bond_symbol(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle: return "-";
    case BondOrder::kDouble: return "=";
    case BondOrder::kTriple: return "#";
    case BondOrder::kAromatic: return ":";
  }
  return "-";
}

// Atoms within `radius` bonds of `center`, in BFS order (center first).
std::vector<int> sphere(const Molecule& m, int center, int radius) {
  std::vector<int> dist(static_cast<std::size_t>(m.atom_count()), -1);
  std::vector<int> out{center};
  dist[static_cast<std::size_t>(center)] = 0;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const int v = out[head];
    if (dist[static_cast<std::size_t>(v)] == radius) continue;
    for (const chem::Neighbor& nb : m.neighbors(v)) {
      if (dist[static_cast<std::size_t>(nb.atom)] >= 0) continue;
      dist[static_cast<std::size_t>(nb.atom)] = dist[static_cast<std::size_t>(v)] + 1;
      out.push_back(nb.atom);
    }
  }
  return out;
}

}  // namespace

std::string environment_key(const Molecule& m, int center, int radius) {
  if (radius == 0) return atom_label(m, center);
  const std::vector<int> atoms = sphere(m, center, radius);
  std::vector<int> local(static_cast<std::size_t>(m.atom_count()), -1);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    local[static_cast<std::size_t>(atoms[i])] = static_cast<int>(i);
  }
  chem::LabeledGraph graph;
  std::vector<BondOrder> orders;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    graph.vertex_labels.push_back(atom_code(m, atoms[i], i == 0));
  }
  for (const chem::Bond& b : m.bonds()) {
    const int la = local[static_cast<std::size_t>(b.begin)];
    const int lb = local[static_cast<std::size_t>(b.end)];
    if (la < 0 || lb < 0) continue;
    graph.edges.push_back({la, lb, static_cast<int>(b.order)});
    orders.push_back(b.order);
  }
  const std::vector<int> ranks = chem::canonical_ranks(graph);
  chem::DfsTokens tokens{
      [&](int v) {
        return (v == 0 ? "^" : "") + atom_label(m, atoms[static_cast<std::size_t>(v)]);
      },
      [&](int e, int, int) { return bond_symbol(orders[static_cast<std::size_t>(e)]); },
  };
  return fmt::format("{}|{}", radius,
                     chem::dfs_serialize(static_cast<int>(atoms.size()),
                                         graph.edges, ranks, tokens));
}

CountFingerprint fingerprint(const Molecule& m, int radius) {
  if (radius < 0 || radius > kMaxRadius) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("fingerprint radius {} outside [0, {}]", radius, kMaxRadius));
  }
  CountFingerprint fp;
  fp.radius = radius;
  for (int i = 0; i < m.atom_count(); ++i) {
    const int z = m.atom(i).element;
    if (z == 1 || z == chem::kDummyElement) continue;
    for (int r = 0; r <= radius; ++r) {
      ++fp.entries[environment_key(m, i, r)];
    }
  }
  return fp;
}

DenseFeatures vectorize(const std::vector<CountFingerprint>& fps) {
  if (fps.empty()) throw Error(ErrorCode::kEmptyInput, "no fingerprints to vectorize");
  std::set<std::string> keys;
  for (const auto& fp : fps) {
    for (const auto& [key, count] : fp.entries) keys.insert(key);
  }
  DenseFeatures out;
  out.vocabulary.assign(keys.begin(), keys.end());
  out.matrix.resize(static_cast<Eigen::Index>(fps.size()),
                    static_cast<Eigen::Index>(out.vocabulary.size()));
  for (std::size_t i = 0; i < fps.size(); ++i) {
    out.matrix.row(static_cast<Eigen::Index>(i)) = dense_row(fps[i], out.vocabulary);
  }
  return out;
}

Eigen::RowVectorXd dense_row(const CountFingerprint& fp,
                             const std::vector<std::string>& vocabulary) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(vocabulary.size()));
  for (const auto& [key, count] : fp.entries) {
    const auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), key);
    if (it != vocabulary.end() && *it == key) {
      row(static_cast<Eigen::Index>(it - vocabulary.begin())) = count;
    }
  }
  return row;
}

}  // namespace amine::fp
