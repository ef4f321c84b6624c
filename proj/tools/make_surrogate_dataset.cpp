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

// Writes data/dataset/amines.csv: a 130-row stand-in for the published
// amine set. Structures are real amines; the measured columns are synthetic
// values from a seeded structure score (see rate_score / capacity_ratio)
// and must not be read as measurements.
//
//   make_surrogate_dataset [out.csv]

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "chem/amines.hpp"
#include "chem/smiles.hpp"
#include "common/csv.hpp"
#include "labels/labels.hpp"

using namespace amine;

namespace {

struct Entry {
  const char* smiles;
  const char* name;
};

const Entry kMolecules[] = {
    {"NCCO", "2-aminoethanol"},
    {"OCCNCCO", "2,2'-iminodiethanol"},
    {"CN(CCO)CCO", "2,2'-(methylimino)diethanol"},
    {"CC(C)(N)CO", "2-amino-2-methylpropan-1-ol"},
    {"C1CNCCN1", "piperazine"},
    {"OCCN(CCO)CCO", "2,2',2''-nitrilotriethanol"},
    {"CC(O)CNCC(C)O", "1,1'-iminodipropan-2-ol"},
    {"CNCCO", "2-(methylamino)ethanol"},
    {"CCNCCO", "2-(ethylamino)ethanol"},
    {"CN(C)CCO", "2-(dimethylamino)ethanol"},
    {"CCN(CC)CCO", "2-(diethylamino)ethanol"},
    {"NCCCO", "3-aminopropan-1-ol"},
    {"CC(O)CN", "1-aminopropan-2-ol"},
    {"CCC(N)CO", "2-aminobutan-1-ol"},
    {"NCCCCO", "4-aminobutan-1-ol"},
    {"NCCCCCO", "5-aminopentan-1-ol"},
    {"NCCOCCO", "2-(2-aminoethoxy)ethanol"},
    {"NCCN", "ethane-1,2-diamine"},
    {"NCCCN", "propane-1,3-diamine"},
    {"NCCCCN", "butane-1,4-diamine"},
    {"NCCCCCCN", "hexane-1,6-diamine"},
    {"NCCNCCN", "N-(2-aminoethyl)ethane-1,2-diamine"},
    {"NCCNCCNCCN", "N,N'-bis(2-aminoethyl)ethane-1,2-diamine"},
    {"NCCNCCNCCNCCN", "tetraethylenepentamine"},
    {"NCCNCCO", "2-(2-aminoethylamino)ethanol"},
    {"CNCCN", "N-methylethane-1,2-diamine"},
    {"CN(C)CCN", "N,N-dimethylethane-1,2-diamine"},
    {"CNCCNC", "N,N'-dimethylethane-1,2-diamine"},
    {"CN(C)CCN(C)C", "N,N,N',N'-tetramethylethane-1,2-diamine"},
    {"CN(C)CCCN", "N,N-dimethylpropane-1,3-diamine"},
    {"CCN(CC)CCCN", "N,N-diethylpropane-1,3-diamine"},
    {"CC1CNCCN1", "2-methylpiperazine"},
    {"CN1CCNCC1", "1-methylpiperazine"},
    {"OCCN1CCNCC1", "2-piperazin-1-ylethanol"},
    {"NCCN1CCNCC1", "2-piperazin-1-ylethanamine"},
    {"CN1CCN(C)CC1", "1,4-dimethylpiperazine"},
    {"C1CCNCC1", "piperidine"},
    {"CC1CCCCN1", "2-methylpiperidine"},
    {"OCCC1CCCCN1", "2-piperidin-2-ylethanol"},
    {"NC1CCNCC1", "piperidin-4-amine"},
    {"C1COCCN1", "morpholine"},
    {"CN1CCOCC1", "4-methylmorpholine"},
    {"NCCN1CCOCC1", "2-morpholin-4-ylethanamine"},
    {"C1CCNC1", "pyrrolidine"},
    {"CN1CCCC1", "1-methylpyrrolidine"},
    {"OCC1CCCN1", "pyrrolidin-2-ylmethanol"},
    {"OC1CCNC1", "pyrrolidin-3-ol"},
    {"C1CNCCNC1", "1,4-diazepane"},
    {"NC1CCCCC1", "cyclohexanamine"},
    {"CNC1CCCCC1", "N-methylcyclohexanamine"},
    {"CN(C)C1CCCCC1", "N,N-dimethylcyclohexanamine"},
    {"N[C@@H]1CCCC[C@H]1N", "(1R,2R)-cyclohexane-1,2-diamine"},
    {"NC1(O)CCCCC1", "1-aminocyclohexan-1-ol"},
    {"NC1CCCCC1O", "2-aminocyclohexan-1-ol"},
    {"NC1CCC(O)CC1", "4-aminocyclohexan-1-ol"},
    {"NC1CCCC1", "cyclopentanamine"},
    {"NCc1ccccc1", "phenylmethanamine"},
    {"Nc1ccccc1", "aniline"},
    {"Cc1ccc(N)cc1", "4-methylaniline"},
    {"Nc1ccccc1O", "2-aminophenol"},
    {"NCc1ccc(N)cc1", "4-(aminomethyl)aniline"},
    {"NCc1cccc(CN)c1", "[3-(aminomethyl)phenyl]methanamine"},
    {"NCCc1ccccc1", "2-phenylethanamine"},
    {"COCCN", "2-methoxyethanamine"},
    {"COCCCN", "3-methoxypropan-1-amine"},
    {"CC(C)(C)N", "2-methylpropan-2-amine"},
    {"CC(C)N", "propan-2-amine"},
    {"CCCCN", "butan-1-amine"},
    {"CCCN", "propan-1-amine"},
    {"CCNCC", "N-ethylethanamine"},
    {"CC(C)NC(C)C", "N-propan-2-ylpropan-2-amine"},
    {"CCCNCCC", "N-propylpropan-1-amine"},
    {"CCN(CC)CC", "N,N-diethylethanamine"},
    {"CCN(CCO)CCO", "2,2'-(ethylimino)diethanol"},
    {"CCCCN(CCO)CCO", "2,2'-(butylimino)diethanol"},
    {"CC(N)(CO)CO", "2-amino-2-methylpropane-1,3-diol"},
    {"NC(CO)(CO)CO", "2-amino-2-(hydroxymethyl)propane-1,3-diol"},
    {"NC(CO)CO", "2-aminopropane-1,3-diol"},
    {"NCC(O)CO", "3-aminopropane-1,2-diol"},
    {"CNC[C@H](O)[C@@H](O)[C@H](O)[C@H](O)CO", "N-methyl-D-glucamine"},
    {"NC[C@H](O)[C@@H](O)[C@H](O)[C@H](O)CO", "D-glucamine"},
    {"NCC(=O)O", "2-aminoacetic acid"},
    {"CNCC(=O)O", "2-(methylamino)acetic acid"},
    {"NCCS(=O)(=O)O", "2-aminoethanesulfonic acid"},
    {"NCCC(=O)O", "3-aminopropanoic acid"},
    {"OC(=O)[C@@H]1CCCN1", "L-proline"},
    {"NCCCC[C@H](N)C(=O)O", "L-lysine"},
    {"NC(=N)NCCC[C@H](N)C(=O)O", "L-arginine"},
    {"NC(N)=N", "guanidine"},
    {"C1CCC2=NCCCN2CC1", "1,8-diazabicyclo[5.4.0]undec-7-ene"},
    {"C1CN=C2CCCN2C1", "2,3,4,6,7,8-hexahydropyrrolo[1,2-a]pyrimidine"},
    {"C1CNC2=NCCCN2C1", "1,5,7-triazabicyclo[4.4.0]dec-5-ene"},
    {"CN(C)C(=N)N(C)C", "1,1,3,3-tetramethylguanidine"},
    {"c1c[nH]cn1", "1H-imidazole"},
    {"Cn1ccnc1", "1-methylimidazole"},
    {"Cc1ncc[nH]1", "2-methyl-1H-imidazole"},
    {"c1ccncc1", "pyridine"},
    {"Nc1ccncc1", "pyridin-4-amine"},
    {"NCc1cccnc1", "pyridin-3-ylmethanamine"},
    {"NCCc1c[nH]cn1", "2-(1H-imidazol-5-yl)ethanamine"},
    {"CC(N)=O", "acetamide"},
    {"NC(N)=O", "urea"},
    {"NC=O", "formamide"},
    {"CNC(C)=O", "N-methylacetamide"},
    {"O=C1CCCN1", "pyrrolidin-2-one"},
    {"C1N2CN3CN1CN(C2)C3", "1,3,5,7-tetraazaadamantane"},
    {"C1CN2CCC1CC2", "1-azabicyclo[2.2.2]octane"},
    {"C1CN2CCN1CC2", "1,4-diazabicyclo[2.2.2]octane"},
    {"OC1CN2CCC1CC2", "1-azabicyclo[2.2.2]octan-3-ol"},
    {"CC(C)(C)NCCO", "2-(tert-butylamino)ethanol"},
    {"CC(C)NCCO", "2-(propan-2-ylamino)ethanol"},
    {"CCCCNCCO", "2-(butylamino)ethanol"},
    {"CNCCCN", "N-methylpropane-1,3-diamine"},
    {"NCCCNCCCN", "N-(3-aminopropyl)propane-1,3-diamine"},
    {"CN(CCCN)CCCN", "N-(3-aminopropyl)-N-methylpropane-1,3-diamine"},
    {"NCCN(CCN)CCN", "tris(2-aminoethyl)amine"},
    {"CCC(N)(CO)CO", "2-amino-2-ethylpropane-1,3-diol"},
    {"CC(C)(O)CN", "1-amino-2-methylpropan-2-ol"},
    {"CC(C)C(N)CO", "2-amino-3-methylbutan-1-ol"},
    {"CC(C)(O)CCN", "4-amino-2-methylbutan-2-ol"},
    {"CN(C)CCCO", "3-(dimethylamino)propan-1-ol"},
    {"CC(O)CN(C)C", "1-(dimethylamino)propan-2-ol"},
    {"CC(O)CN(CC(C)O)CC(C)O", "1,1',1''-nitrilotripropan-2-ol"},
    {"CCN(CC)CCN", "N,N-diethylethane-1,2-diamine"},
    {"CC1CCNCC1", "4-methylpiperidine"},
    {"CCCCC(CC)CN", "2-ethylhexan-1-amine"},
    {"CCCCCCCCN", "octan-1-amine"},
    {"NCCS", "2-aminoethanethiol"},
};

const Entry kPolymers[] = {
    {"*CCN*", "poly(ethyleneimine)"},
    {"*CC(CN)*", "poly(allylamine)"},
};

struct Descriptors {
  chem::AmineProfile profile;
  int ring_secondary = 0;
  int hindered = 0;  // primary/secondary N on a branched acyclic carbon
  int hydroxyl = 0;
  int acid = 0;
  int heavy = 0;
};

Descriptors describe(const chem::Molecule& m) {
  Descriptors d;
  d.profile = chem::classify_amines(m);
  d.heavy = m.heavy_atom_count();
  for (int i = 0; i < m.atom_count(); ++i) {
    const auto& a = m.atom(i);
    if (a.element == 7 && a.charge == 0 && !a.aromatic) {
      const auto c = chem::classify_nitrogen(m, i);
      const bool reactive = c == chem::NitrogenClass::kPrimary || c == chem::NitrogenClass::kSecondary;
      bool ring = false, branched = false;
      for (const auto& nb : m.neighbors(i)) {
        ring |= m.is_ring_bond(nb.bond);
        const auto& b = m.atom(nb.atom);
        branched |= b.element == 6 && !b.aromatic && !m.is_ring_bond(nb.bond) && m.heavy_degree(nb.atom) >= 3;
      }
      if (c == chem::NitrogenClass::kSecondary && ring) ++d.ring_secondary;
      if (reactive && branched) ++d.hindered;
    }
    if (a.element == 8 && a.hydrogens == 1) {
      bool carboxyl = false;
      for (const auto& nb : m.neighbors(i)) {
        for (const auto& nb2 : m.neighbors(nb.atom)) {
          carboxyl |= m.bond(nb2.bond).order == chem::BondOrder::kDouble && m.atom(nb2.atom).element == 8;
        }
      }
      ++(carboxyl ? d.acid : d.hydroxyl);
    }
  }
  return d;
}

// Latent kinetic score; positive rate class when >= 0 before noise.
double rate_score(const Descriptors& d) {
  const auto& p = d.profile;
  const int open_secondary = p.n_secondary - d.ring_secondary;
  double z = 0.9 * std::min(p.n_primary, 2) + 0.5 * std::min(open_secondary, 2) +
             1.1 * std::min(d.ring_secondary, 2) + 1.2 * std::min(p.n_amidine, 1) - 1.0 * d.hindered -
             0.5 * d.acid - 0.04 * std::max(0, d.heavy - 8) - 0.4;
  if (p.n_tertiary > 0 && p.n_primary + p.n_secondary == 0) z -= 0.9;
  if (p.amine_like() == 0) z -= 1.2;
  return z;
}

// Measured / expected capacity before noise.
double capacity_ratio(const Descriptors& d) {
  const auto& p = d.profile;
  double r = 0.62 + 0.12 * std::min(d.hydroxyl, 2) + 0.45 * std::min(d.hindered, 1) - 0.2 * d.acid;
  if (p.n_tertiary > 0) r += 0.15;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : "data/dataset/amines.csv";
  std::mt19937_64 rng(130);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Row {
    std::string smiles, name;
    double capacity, rate;
    bool rate_positive;
    std::string split = "train";
  };
  std::vector<Row> rows;
  for (const auto& e : kMolecules) {
    const auto d = describe(chem::parse_smiles(e.smiles));
    const double z = rate_score(d) + 0.35 * noise(rng);
    const double rate = z >= 0 ? 0.0868 + 0.06 * z + 0.01 * unit(rng) : std::max(0.004, 0.0868 + 0.04 * z);
    double capacity;
    if (d.profile.amine_like() == 0) {
      capacity = 0.02 + 0.18 * unit(rng);
    } else {
      const double r = std::max(0.1, capacity_ratio(d) + 0.12 * noise(rng));
      capacity = r * labels::expected_capacity(d.profile);
    }
    rows.push_back({e.smiles, e.name, capacity, rate, rate >= 0.0868});
  }
  // 6/5 validation and 12/8 test rows by rate class.
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < rows.size(); ++i) (rows[i].rate_positive ? pos : neg).push_back(i);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  for (std::size_t k = 0; k < 6; ++k) rows[pos[k]].split = "validate";
  for (std::size_t k = 0; k < 5; ++k) rows[neg[k]].split = "validate";
  for (std::size_t k = 6; k < 18; ++k) rows[pos[k]].split = "test";
  for (std::size_t k = 5; k < 13; ++k) rows[neg[k]].split = "test";
  for (const auto& e : kPolymers) {
    rows.push_back({e.smiles, e.name, 0.3 + 0.3 * unit(rng), 0.01 + 0.09 * unit(rng), false});
  }

  std::string text = "smiles,inchikey,iupac_name,absorption_capacity,observed_initial_rate,split\n";
  for (const auto& r : rows) {
    text += csv::join({r.smiles, "", r.name, fmt::format("{:.4f}", r.capacity),
                       fmt::format("{:.4f}", r.rate), r.split});
    text += '\n';
  }
  csv::write_file(out, text);
  std::printf("%zu rows (%zu rate-positive molecules)\n", rows.size(), pos.size());
  return 0;
}
