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
#include <array>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chem/smiles.hpp"
#include "common/error.hpp"
#include "doctest.h"
#include "fingerprint/fingerprint.hpp"
#include "fingerprint/pca.hpp"

using namespace amine;
using namespace amine::fp;

namespace {

// Rooted induced subgraph as plain arrays, built without any of the
// library's canonicalization code.
struct Sphere {
  std::vector<std::array<int, 4>> labels;  // element, aromatic, charge, H
  std::vector<std::vector<int>> bond;      // order or 0
};

Sphere sphere_of(const chem::Molecule& m, int center, int radius) {
  std::vector<int> dist(static_cast<std::size_t>(m.atom_count()), -1);
  std::vector<int> atoms{center};
  dist[static_cast<std::size_t>(center)] = 0;
  for (std::size_t h = 0; h < atoms.size(); ++h) {
    const int v = atoms[h];
    if (dist[static_cast<std::size_t>(v)] == radius) continue;
    for (const auto& nb : m.neighbors(v)) {
      if (dist[static_cast<std::size_t>(nb.atom)] < 0) {
        dist[static_cast<std::size_t>(nb.atom)] = dist[static_cast<std::size_t>(v)] + 1;
        atoms.push_back(nb.atom);
      }
    }
  }
  Sphere s;
  const std::size_t n = atoms.size();
  s.bond.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = m.atom(atoms[i]);
    s.labels.push_back({a.element, a.aromatic ? 1 : 0, a.charge, a.hydrogens});
    for (std::size_t j = 0; j < n; ++j) {
      const int b = m.find_bond(atoms[i], atoms[j]);
      if (b >= 0) s.bond[i][j] = static_cast<int>(m.bond(b).order);
    }
  }
  return s;
}

// Brute force: try every bijection fixing the root.
bool rooted_isomorphic(const Sphere& a, const Sphere& b) {
  const std::size_t n = a.labels.size();
  if (n != b.labels.size() || a.labels[0] != b.labels[0]) return false;
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::vector<int> map{0};
    map.insert(map.end(), perm.begin(), perm.end());
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = a.labels[i] == b.labels[static_cast<std::size_t>(map[i])];
      for (std::size_t j = 0; j < n && ok; ++j) {
        ok = a.bond[i][j] ==
             b.bond[static_cast<std::size_t>(map[i])][static_cast<std::size_t>(map[j])];
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("fingerprint: methane and ethane") {
  const CountFingerprint methane = fingerprint(chem::parse_smiles("C"), 0);
  REQUIRE(methane.entries.size() == 1);
  CHECK(methane.entries.begin()->first == "C[h4]");
  CHECK(methane.entries.begin()->second == 1);

  const CountFingerprint ethane = fingerprint(chem::parse_smiles("CC"), 1);
  int radius_one_keys = 0;
  for (const auto& [key, count] : ethane.entries) {
    CHECK(count == 2);
    radius_one_keys += key.rfind("1|", 0) == 0;
  }
  CHECK(radius_one_keys == 1);
  CHECK(ethane.entries.size() == 2);
}

TEST_CASE("fingerprint: order invariance") {
  CHECK(fingerprint(chem::parse_smiles("CCO"), 2).entries ==
        fingerprint(chem::parse_smiles("OCC"), 2).entries);
  std::mt19937 rng(3);
  for (const char* s : {"OCCN(C)CCO", "C1CNCCN1", "NCC(C)(C)O", "c1ccncc1CN",
                        "CN1CCN(CCO)CC1", "NC(=O)CCN"}) {
    const chem::Molecule m = chem::parse_smiles(s);
    const auto reference = fingerprint(m, 3).entries;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> order(static_cast<std::size_t>(m.atom_count()));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      const std::string rendered = chem::write_smiles(m, order);
      CHECK(fingerprint(chem::parse_smiles(rendered), 3).entries == reference);
    }
  }
}

TEST_CASE("fingerprint: keys agree with brute-force isomorphism classes") {
  for (const char* s : {"CC", "CCO", "NCCO", "CC(C)C", "C1CC1", "OCCN(C)CCO",
                        "C1CNCCN1", "NC(=O)C", "c1ccncc1", "CC(=O)NCCN"}) {
    const chem::Molecule m = chem::parse_smiles(s);
    for (int r = 0; r <= 2; ++r) {
      std::vector<Sphere> spheres;
      std::vector<std::string> keys;
      for (int i = 0; i < m.atom_count(); ++i) {
        spheres.push_back(sphere_of(m, i, r));
        keys.push_back(environment_key(m, i, r));
      }
      for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t j = 0; j < keys.size(); ++j) {
          INFO(s << " r=" << r << " atoms " << i << "," << j);
          CHECK((keys[i] == keys[j]) == rooted_isomorphic(spheres[i], spheres[j]));
        }
      }
    }
  }
}

TEST_CASE("fingerprint: radius bounds") {
  CHECK_THROWS_AS(fingerprint(chem::parse_smiles("C"), 5), Error);
  CHECK_THROWS_AS(fingerprint(chem::parse_smiles("C"), -1), Error);
}

TEST_CASE("vectorize") {
  CountFingerprint a, b;
  a.entries = {{"a", 1}};
  b.entries = {{"b", 2}};
  const DenseFeatures both = vectorize({a, b});
  CHECK(both.vocabulary == std::vector<std::string>{"a", "b"});
  CHECK(both.matrix.isApprox((Eigen::MatrixXd(2, 2) << 1, 0, 0, 2).finished()));

  const DenseFeatures single = vectorize({b});
  CHECK(single.matrix.rows() == 1);
  CHECK(single.matrix(0, 0) == 2);

  const DenseFeatures same = vectorize({a, a});
  CHECK(same.matrix.cols() == 1);
  CHECK(same.matrix.col(0).sum() == 2);

  CHECK_THROWS_AS(vectorize({}), Error);
}

TEST_CASE("pca: rank-one data") {
  Eigen::MatrixXd X(5, 3);
  for (int i = 0; i < 5; ++i) X.row(i) << 1.0 + i, 2.0 + 2 * i, -1.0 - 3 * i;
  const PCAModel model = fit_pca(X, 0.95);
  CHECK(model.n_components() == 1);
  CHECK(model.explained_variance_ratio(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pca: isotropic sample against covariance eigenvalues") {
  std::mt19937 rng(5);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(400, 2);
  for (int i = 0; i < X.rows(); ++i) X.row(i) << normal(rng), normal(rng);
  // Independent route: eigen-decomposition of the sample covariance.
  const Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / (X.rows() - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::Vector2d values = eig.eigenvalues().reverse();
  const PCAModel model = fit_pca(X, 0.95);
  CHECK(model.n_components() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(model.explained_variance(i) == doctest::Approx(values(i)).epsilon(1e-10));
    CHECK(model.explained_variance_ratio(i) ==
          doctest::Approx(values(i) / values.sum()).epsilon(1e-10));
  }
}

TEST_CASE("pca: invariants on random count data") {
  std::mt19937 rng(9);
  std::poisson_distribution<int> counts(1.5);
  Eigen::MatrixXd X(60, 25);
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = 0; j < X.cols(); ++j) X(i, j) = counts(rng) * (j % 5 + 1);
  }
  for (double target : {0.5, 0.8, 0.95, 1.0}) {
    const PCAModel model = fit_pca(X, target);
    const Eigen::Index k = model.n_components();
    const Eigen::MatrixXd gram = model.components * model.components.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-8);
    for (Eigen::Index i = 1; i < k; ++i) {
      CHECK(model.explained_variance_ratio(i) <= model.explained_variance_ratio(i - 1));
    }
    const double cumulative = model.explained_variance_ratio.sum();
    CHECK(cumulative >= target - 1e-12);
    CHECK(cumulative - model.explained_variance_ratio(k - 1) < target);
    for (Eigen::Index i = 0; i < k; ++i) {
      Eigen::Index arg = 0;
      model.components.row(i).cwiseAbs().maxCoeff(&arg);
      CHECK(model.components(i, arg) > 0);
    }
    const Eigen::MatrixXd Z = transform(model, X);
    CHECK(Z.colwise().mean().cwiseAbs().maxCoeff() < 1e-8);

    // Reconstruction error equals the discarded variance share.
    const Eigen::MatrixXd centered = X.rowwise() - model.mean;
    double residual = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      residual += (inverse_transform(model, Z.row(i)) - X.row(i)).squaredNorm();
    }
    const double fraction = residual / centered.squaredNorm();
    CHECK(fraction <= 1.0 - target + 1e-9);
    CHECK(fraction == doctest::Approx(1.0 - cumulative).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("pca: transform edge cases and persistence") {
  std::vector<CountFingerprint> fps;
  for (const char* s : {"NCCO", "OCCN(C)CCO", "C1CNCCN1", "NCC(C)(C)O"}) {
    fps.push_back(fingerprint(chem::parse_smiles(s), 2));
  }
  const DenseFeatures dense = vectorize(fps);
  const PCAModel model = fit_pca(dense.matrix, 0.95, dense.vocabulary);
  CHECK(transform(model, Eigen::RowVectorXd(model.mean)).cwiseAbs().maxCoeff() < 1e-12);

  CountFingerprint unseen;
  unseen.entries = {{"9|never", 3}};
  const Eigen::RowVectorXd expected =
      -model.mean * model.components.transpose();
  CHECK((transform(model, unseen) - expected).cwiseAbs().maxCoeff() < 1e-12);

  const PCAModel back = pca_from_json(pca_to_json(model));
  CHECK(back.vocabulary == model.vocabulary);
  CHECK(back.components == model.components);
  CHECK(back.mean == model.mean);
  CHECK(back.explained_variance_ratio == model.explained_variance_ratio);
  CHECK(pca_to_json(back) == pca_to_json(model));

  CHECK_THROWS_AS(pca_from_json("{\"format\":\"other\"}"), Error);
  CHECK_THROWS_AS(transform(model, Eigen::RowVectorXd(Eigen::RowVectorXd::Zero(2))), Error);
}

TEST_CASE("pca: degenerate input") {
  Eigen::MatrixXd same(3, 2);
  same << 1, 2, 1, 2, 1, 2;
  try {
    fit_pca(same, 0.95);
    FAIL("expected DegenerateData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateData);
  }
}
