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


#include <cmath>
#include <random>
#include <set>

#include "common/error.hpp"
#include "common/log.hpp"
#include "doctest.h"
#include "learn/boosting.hpp"
#include "learn/classifier.hpp"
#include "learn/gaussian_process.hpp"
#include "learn/grid_search.hpp"
#include "learn/kernels.hpp"
#include "learn/linear.hpp"
#include "learn/metrics.hpp"
#include "learn/svm.hpp"

using namespace amine;
using namespace amine::learn;

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

MetricsReport from_counts(int tp, int fn, int tn, int fp) {
  return metrics_from_confusion(Confusion{tp, fp, tn, fn});
}

// Two Gaussian blobs in `p` dimensions, shifted apart by `gap`.
void blobs(int n, int p, double gap, std::uint64_t seed, Matrix& X, Labels& y) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  X.resize(n, p);
  y.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = i % 2;
    for (int j = 0; j < p; ++j) X(i, j) = nd(rng) + (i % 2 ? gap : 0.0);
  }
}

ClassifierSpec spec(Kind kind, Json params = Json::object()) { return {kind, std::move(params)}; }

std::vector<ClassifierSpec> one_of_each() {
  return {
      spec(Kind::kDecisionTree, {{"max_depth", 3}}),
      spec(Kind::kQDA, {{"reg_param", 0.5}}),
      spec(Kind::kGaussianNB, {{"priors", {0.67, 0.33}}}),
      spec(Kind::kGaussianProcess, {{"kernel", "1**2 * Matern(length_scale=0.6, nu=0.5) + WhiteKernel(noise_level=0.1)"}}),
      spec(Kind::kAdaBoost, {{"n_estimators", 20}, {"learning_rate", 1.25}}),
      spec(Kind::kMLP, {{"alpha", 1e-5}, {"batch_size", 10}, {"hidden_layer_sizes", {16, 8}}, {"learning_rate", "constant"}}),
      spec(Kind::kExtraTrees, {{"max_depth", 7}, {"n_estimators", 50}, {"max_features", "sqrt"}}),
      spec(Kind::kLogisticRegression, {{"penalty", "elasticnet"}, {"C", 1.0}, {"l1_ratio", 0.5}}),
      spec(Kind::kKNearestNeighbors, {{"n_neighbors", 5}, {"p", 1.5}, {"weights", "distance"}}),
      spec(Kind::kSupportVector, {{"kernel", "rbf"}, {"C", 0.5}, {"gamma", "scale"}, {"degree", 2}}),
  };
}

}  // namespace

TEST_CASE("metrics reproduce the worked confusion matrices") {
  auto r = from_counts(5, 1, 3, 2);
  CHECK(round2(r.accuracy) == doctest::Approx(0.73));
  CHECK(round2(r.sensitivity) == doctest::Approx(0.83));
  CHECK(round2(r.specificity) == doctest::Approx(0.60));
  CHECK(round2(r.roc_auc_balanced) == doctest::Approx(0.72));
  CHECK(round2(r.mcc) == doctest::Approx(0.45));

  r = from_counts(4, 2, 5, 0);
  CHECK(round2(r.accuracy) == doctest::Approx(0.82));
  CHECK(round2(r.sensitivity) == doctest::Approx(0.67));
  CHECK(round2(r.specificity) == doctest::Approx(1.00));
  CHECK(round2(r.roc_auc_balanced) == doctest::Approx(0.83));
  CHECK(round2(r.mcc) == doctest::Approx(0.69));

  // Independent MCC oracle.
  const double mcc = (5.0 * 3 - 2.0 * 1) / std::sqrt(7.0 * 6 * 5 * 4);
  CHECK(from_counts(5, 1, 3, 2).mcc == doctest::Approx(mcc).epsilon(1e-14));

  r = from_counts(1, 1, 1, 1);
  CHECK(r.mcc == 0.0);
  CHECK_FALSE(r.mcc_undefined);
}

TEST_CASE("evaluate on perfect and degenerate predictions") {
  const std::vector<int> y{1, 0, 1, 1, 0};
  const auto r = evaluate(y, y, {0.9, 0.2, 0.8, 0.7, 0.1});
  CHECK(r.accuracy == 1.0);
  CHECK(r.mcc == 1.0);
  CHECK(r.roc_auc_balanced == 1.0);
  CHECK(r.roc_auc_rank == 1.0);

  const auto all_ones = evaluate(y, {1, 1, 1, 1, 1}, {0.6, 0.6, 0.6, 0.6, 0.6});
  CHECK(all_ones.mcc == 0.0);
  CHECK(all_ones.mcc_undefined);
  CHECK(all_ones.roc_auc_rank == 0.5);

  CHECK_THROWS_AS(evaluate({1, 0}, {1}, {0.5, 0.5}), Error);
  try {
    evaluate({1, 0}, {1}, {0.5, 0.5});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLengthMismatch);
  }
}

TEST_CASE("rank AUC matches a pairwise-count oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> level(0, 5);  // coarse levels force ties
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> y;
    std::vector<double> p;
    for (int i = 0; i < 15; ++i) {
      y.push_back(coin(rng));
      p.push_back(level(rng) / 5.0);
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[i] == 1 && y[j] == 0) {
          den += 1;
          num += p[i] > p[j] ? 1.0 : (p[i] == p[j] ? 0.5 : 0.0);
        }
    const double auc = rank_auc(y, p);
    if (den == 0) {
      CHECK(std::isnan(auc));
    } else {
      CHECK(auc == doctest::Approx(num / den).epsilon(1e-12));
    }
  }
}

TEST_CASE("kind names and hyperparameter vocabulary") {
  CHECK(parse_kind("DNN") == Kind::kMLP);
  CHECK(parse_kind("ExtraTreesClassifier") == Kind::kExtraTrees);
  CHECK(parse_kind("Logistic_Regression") == Kind::kLogisticRegression);
  CHECK(parse_kind("Nearest_neighbours") == Kind::kKNearestNeighbors);
  CHECK(parse_kind("Support_vector") == Kind::kSupportVector);
  for (Kind k : all_kinds()) CHECK(parse_kind(kind_name(k)) == k);
  CHECK_THROWS_AS(parse_kind("RandomForest"), Error);
  CHECK_THROWS_AS(validate_spec(spec(Kind::kQDA, {{"max_depth", 3}})), Error);
  CHECK_NOTHROW(validate_spec(spec(Kind::kQDA, {{"reg_param", 0.5}})));
}

TEST_CASE("fit examples") {
  SUBCASE("separable logistic regression") {
    Matrix X(6, 2);
    X << 0, 0, 1, 0, 0, 1, 3, 3, 4, 3, 3, 4;
    const Labels y{0, 0, 0, 1, 1, 1};
    const auto m = ClassifierModel::fit(spec(Kind::kLogisticRegression, {{"C", 1.0}}), X, y);
    CHECK(m.predict(X) == y);
  }
  SUBCASE("constant features give the majority class") {
    const Matrix X = Matrix::Constant(7, 3, 2.5);
    const Labels y{1, 1, 1, 1, 0, 0, 0};
    const auto m = ClassifierModel::fit(spec(Kind::kDecisionTree), X, y);
    CHECK(m.predict(X) == Labels(7, 1));
  }
  SUBCASE("XOR memorized by 1-NN") {
    Matrix X(4, 2);
    X << 0, 0, 1, 1, 0, 1, 1, 0;
    const Labels y{0, 0, 1, 1};
    const auto m = ClassifierModel::fit(spec(Kind::kKNearestNeighbors, {{"n_neighbors", 1}}), X, y);
    CHECK(m.predict(X) == y);
  }
  SUBCASE("training errors") {
    Matrix X = Matrix::Ones(3, 2);
    CHECK_THROWS_AS(ClassifierModel::fit(spec(Kind::kGaussianNB), X, {1, 1, 1}), Error);
    X(0, 0) = std::nan("");
    try {
      ClassifierModel::fit(spec(Kind::kGaussianNB), X, {1, 0, 1});
      FAIL("expected NonFiniteFeature");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNonFiniteFeature);
    }
  }
}

TEST_CASE("predict_proba examples") {
  Matrix X;
  Labels y;
  blobs(30, 2, 3.0, 11, X, y);

  SUBCASE("distance-weighted kNN at a training positive") {
    const auto m = ClassifierModel::fit(
        spec(Kind::kKNearestNeighbors, {{"n_neighbors", 7}, {"weights", "distance"}}), X, y);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      if (y[static_cast<std::size_t>(i)] == 1) CHECK(m.predict_proba(Eigen::RowVectorXd(X.row(i))) == 1.0);
    }
  }
  SUBCASE("logistic regression on its hyperplane") {
    GIVEN("a fitted model") {
      LogisticRegressionClassifier lr(Json{{"C", 1.0}});
      lr.fit(X, y, 0);
      const Vector& w = lr.coefficients();
      // Point on w.x + b = 0 along w.
      const Eigen::RowVectorXd x0 = (-lr.intercept() / w.squaredNorm()) * w.transpose();
      CHECK(lr.predict_proba(Matrix(x0))(0) == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("GP far from the data returns to the latent prior") {
    const auto m = ClassifierModel::fit(
        spec(Kind::kGaussianProcess, {{"kernel", "1.0 * RBF(1.0) + WhiteKernel(noise_level=0.5)"}}), X, y);
    Eigen::RowVectorXd far(2);
    far << 1e3, -1e3;
    // Zero-mean latent prior: the far-field probability is sigmoid(0).
    CHECK(m.predict_proba(far) == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("dimension mismatch") {
    const auto m = ClassifierModel::fit(spec(Kind::kGaussianNB), X, y);
    try {
      m.predict_proba(Matrix(Matrix::Zero(2, 3)));
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDimensionMismatch);
    }
  }
}

TEST_CASE("every kind: probabilities in range, threshold consistency, round trip") {
  Matrix X;
  Labels y;
  blobs(40, 4, 1.5, 5, X, y);
  Matrix Q;
  Labels unused;
  blobs(25, 4, 1.0, 99, Q, unused);
  for (const auto& s : one_of_each()) {
    CAPTURE(kind_name(s.kind));
    const auto m = ClassifierModel::fit(s, X, y, 7);
    const Vector p = m.predict_proba(Q);
    const Labels pred = m.predict(Q);
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      CHECK(p(i) >= 0.0);
      CHECK(p(i) <= 1.0);
      CHECK(pred[static_cast<std::size_t>(i)] == (p(i) >= 0.5 ? 1 : 0));
    }
    // Separated blobs: every kind should beat chance on its training set.
    const Labels train_pred = m.predict(X);
    int hits = 0;
    for (std::size_t i = 0; i < y.size(); ++i) hits += train_pred[i] == y[i];
    CHECK(hits >= 28);

    const std::string text = m.to_json();
    const auto back = ClassifierModel::from_json(text);
    CHECK(back.to_json() == text);
    const Vector p2 = back.predict_proba(Q);
    for (Eigen::Index i = 0; i < p.size(); ++i) CHECK(p2(i) == p(i));

    // Same seed, same model.
    CHECK(ClassifierModel::fit(s, X, y, 7).to_json() == text);
  }
}

TEST_CASE("model file validation") {
  CHECK_THROWS_AS(ClassifierModel::from_json("{}"), Error);
  CHECK_THROWS_AS(ClassifierModel::from_json("not json"), Error);
  CHECK_THROWS_AS(ClassifierModel::from_json(R"({"format":"aminescreen.model","version":9})"), Error);
}

TEST_CASE("AdaBoost staged training error never increases on separable data") {
  Matrix X;
  Labels y;
  blobs(40, 3, 4.0, 21, X, y);
  AdaBoostClassifier ab(Json{{"n_estimators", 50}, {"learning_rate", 0.5}});
  ab.fit(X, y, 0);
  int previous = static_cast<int>(y.size()) + 1;
  for (const Labels& stage : ab.staged_predict(X)) {
    int errors = 0;
    for (std::size_t i = 0; i < y.size(); ++i) errors += stage[i] != y[i];
    CHECK(errors <= previous);
    previous = errors;
  }
  CHECK(previous == 0);
}

TEST_CASE("kernel strings parse with bounds and the square notation") {
  auto k = parse_kernel("1**2 * Matern(length_scale=0.6, nu=0.5) + WhiteKernel(noise_level=0.1)");
  auto hs = k->hyperparameters();
  REQUIRE(hs.size() == 3);
  CHECK(hs[0]->value == 1.0);
  CHECK(hs[1]->value == 0.6);
  CHECK(hs[2]->value == 0.1);

  k = parse_kernel(
      "Matern(length_scale=0.6, length_scale_bounds=(1e-7, 1e7), nu=0.5) + "
      "WhiteKernel(noise_level=0.1, noise_level_bounds=(1e-8, 1))");
  hs = k->hyperparameters();
  CHECK(hs[0]->lower == 1e-7);
  CHECK(hs[1]->upper == 1.0);

  k = parse_kernel("C(2.0, constant_value_bounds=\"fixed\") * RBF(1.5)");
  CHECK(k->free_hyperparameters().size() == 1);

  CHECK_THROWS_AS(parse_kernel("Matern(nu=3.5)"), Error);
  CHECK_THROWS_AS(parse_kernel("Linear(1.0)"), Error);
  CHECK_THROWS_AS(parse_kernel("RBF(1.0) +"), Error);
  CHECK_THROWS_AS(parse_kernel("RBF(foo=1)"), Error);
}

TEST_CASE("kernel gradients match finite differences") {
  Matrix X(6, 2);
  X << 0, 0, 0.3, 1.1, -0.7, 0.2, 1.5, -0.4, 0.9, 0.9, -1.2, -0.8;
  for (const char* text : {"1.3 * RBF(0.8) + WhiteKernel(noise_level=0.2)",
                           "2.0 * Matern(length_scale=0.7, nu=0.5)",
                           "Matern(length_scale=1.2, nu=1.5) * 0.5",
                           "Matern(length_scale=0.9, nu=2.5) + WhiteKernel(noise_level=0.3)"}) {
    CAPTURE(text);
    auto k = parse_kernel(text);
    const Vector theta = k->theta();
    std::vector<Matrix> grads;
    k->gram(X, &grads);
    REQUIRE(grads.size() == static_cast<std::size_t>(theta.size()));
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      const double h = 1e-6;
      Vector tp = theta, tm = theta;
      tp(j) += h;
      tm(j) -= h;
      k->set_theta(tp);
      const Matrix Kp = k->gram(X, nullptr);
      k->set_theta(tm);
      const Matrix Km = k->gram(X, nullptr);
      k->set_theta(theta);
      const Matrix fd = (Kp - Km) / (2 * h);
      CHECK((fd - grads[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("GP Laplace log-marginal gradient matches central differences") {
  // 10-point toy problem.
  Matrix X(10, 1);
  X << -2.0, -1.6, -1.1, -0.5, -0.1, 0.2, 0.7, 1.0, 1.4, 2.1;
  const Labels y{0, 0, 1, 0, 0, 1, 1, 0, 1, 1};
  for (const char* text : {"1.0 * RBF(1.0)", "1.5 * Matern(length_scale=0.6, nu=0.5) + WhiteKernel(noise_level=0.1)",
                           "2.0 * Matern(length_scale=0.8, nu=2.5)"}) {
    CAPTURE(text);
    auto k = parse_kernel(text);
    const Vector theta = k->theta();
    const LaplaceResult r = laplace(*k, X, y, true);
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      const double h = 1e-5;
      Vector tp = theta, tm = theta;
      tp(j) += h;
      tm(j) -= h;
      k->set_theta(tp);
      const double fp = laplace(*k, X, y, false).log_marginal;
      k->set_theta(tm);
      const double fm = laplace(*k, X, y, false).log_marginal;
      k->set_theta(theta);
      const double fd = (fp - fm) / (2 * h);
      const double g = r.gradient(j);
      CHECK(std::abs(g - fd) / std::max(std::abs(fd), 1e-8) < 1e-4);
    }
  }
}

TEST_CASE("GP hyperparameter optimization does not decrease the evidence") {
  Matrix X;
  Labels y;
  blobs(30, 2, 2.0, 4, X, y);
  auto k = parse_kernel("1.0 * RBF(1.0) + WhiteKernel(noise_level=0.5)");
  const double before = laplace(*k, X, y, false).log_marginal;
  optimize_hyperparameters(*k, X, y);
  const double after = laplace(*k, X, y, false).log_marginal;
  CHECK(after >= before);
  const Matrix bounds = k->theta_bounds();
  const Vector theta = k->theta();
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    CHECK(theta(i) >= bounds(i, 0));
    CHECK(theta(i) <= bounds(i, 1));
  }
}

TEST_CASE("SMO solution satisfies the dual constraints") {
  Matrix X;
  Labels y;
  blobs(30, 2, 1.0, 8, X, y);
  SvmKernel kern;
  kern.gamma = 0.5;
  const Matrix K = kern.matrix(X, X);
  Vector s(30);
  for (int i = 0; i < 30; ++i) s(i) = y[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
  const double C = 0.7;
  const SvmSolution sol = solve_svc(K, s, C, 1e-6);
  CHECK(std::abs(sol.alpha.dot(s)) < 1e-9);
  CHECK(sol.alpha.minCoeff() >= 0.0);
  CHECK(sol.alpha.maxCoeff() <= C);
  // KKT: margins of free vectors equal 1.
  const Vector f = K * sol.alpha.cwiseProduct(s) - Vector::Constant(30, sol.rho);
  for (int i = 0; i < 30; ++i) {
    const double m = s(i) * f(i);
    if (sol.alpha(i) > 1e-8 && sol.alpha(i) < C - 1e-8) CHECK(m == doctest::Approx(1.0).epsilon(1e-4));
    if (sol.alpha(i) == 0.0) CHECK(m >= 1.0 - 1e-4);
    if (sol.alpha(i) == C) CHECK(m <= 1.0 + 1e-4);
  }
}

TEST_CASE("Platt sigmoid is increasing in the decision value") {
  const Vector f = (Vector(8) << -2, -1.5, -1, -0.2, 0.1, 0.8, 1.2, 2).finished();
  const Labels y{0, 0, 0, 1, 0, 1, 1, 1};
  const auto [A, B] = fit_platt(f, y);
  CHECK(A < 0);
  CHECK(std::isfinite(B));
}

TEST_CASE("grid expansion order and file validation") {
  const Json j = Json::parse(R"({"Nearest_neighbours": {"n_neighbors": [1, 3], "weights": ["uniform", "distance"]},
                                "QDA": {"reg_param": [0.0]}})");
  const auto grids = grids_from_json(j);
  REQUIRE(grids.size() == 2);
  CHECK(grids[0].kind == Kind::kKNearestNeighbors);
  const auto pts = expand_grid(grids[0]);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].dump() == R"({"n_neighbors":1,"weights":"uniform"})");
  CHECK(pts[1].dump() == R"({"n_neighbors":1,"weights":"distance"})");
  CHECK(pts[2].dump() == R"({"n_neighbors":3,"weights":"uniform"})");
  CHECK_THROWS_AS(grids_from_json(Json::parse(R"({"QDA": {"alpha": [1]}})")), Error);
}

TEST_CASE("grid search") {
  SUBCASE("single point grid returns that point") {
    Matrix X;
    Labels y;
    blobs(20, 2, 2.0, 1, X, y);
    Grid g{Kind::kQDA, {{"reg_param", {Json(0.5)}}}};
    const auto r = grid_search_cv(g, X, y, {5, 0, 1});
    CHECK(r.best.hyperparameters.dump() == R"({"reg_param":0.5})");
    CHECK(r.scores.size() == 1);
  }
  SUBCASE("kNN k=1 against k=large on a 12-point separable set") {
    Matrix X(12, 2);
    Labels y;
    for (int i = 0; i < 12; ++i) {
      const int cls = i < 6 ? 0 : 1;
      X(i, 0) = cls * 10.0 + (i % 6) * 0.1;
      X(i, 1) = (i % 3) * 0.05;
      y.push_back(cls);
    }
    Grid g{Kind::kKNearestNeighbors, {{"n_neighbors", {Json(1), Json(11)}}}};
    const int folds = 3;
    const auto r = grid_search_cv(g, X, y, {folds, 42, 1});
    CHECK(r.best.hyperparameters["n_neighbors"] == 1);
    CHECK(r.scores[0].mean_accuracy == 1.0);
    // Hand oracle for k=11 (>= training size): every query sees the whole
    // training fold, so it predicts 1 iff positives are at least half.
    const auto assign = stratified_folds(y, folds, 42);
    for (int k = 0; k < folds; ++k) {
      int pos = 0, tot = 0, hits = 0, test = 0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (assign[i] != k) {
          ++tot;
          pos += y[i];
        }
      }
      const int guess = 2 * pos >= tot ? 1 : 0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (assign[i] == k) {
          ++test;
          hits += y[i] == guess;
        }
      }
      CHECK(r.scores[1].fold_accuracy[static_cast<std::size_t>(k)] == doctest::Approx(double(hits) / test));
    }
  }
  SUBCASE("folds are reduced to the minority count with a warning") {
    Matrix X;
    Labels y;
    blobs(20, 2, 3.0, 2, X, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = i < 3 ? 1 : 0;
    std::vector<std::string> warnings;
    log::set_sink([&](log::Level level, const std::string& m) {
      if (level == log::Level::kWarning) warnings.push_back(m);
    });
    Grid g{Kind::kGaussianNB, {}};
    const auto r = grid_search_cv(g, X, y, {10, 0, 1});
    log::set_sink({});
    CHECK(r.folds_used == 3);
    CHECK(warnings.size() == 1);
    CHECK_THROWS_AS(grid_search_cv(g, X, y, {1, 0, 1}), Error);
  }
  SUBCASE("results do not depend on the thread count") {
    Matrix X;
    Labels y;
    blobs(30, 3, 1.0, 6, X, y);
    Grid g{Kind::kDecisionTree, {{"max_depth", {Json(1), Json(2), Json(3)}}, {"max_features", {Json("sqrt"), Json(nullptr)}}}};
    const auto a = grid_search_cv(g, X, y, {5, 9, 1});
    const auto b = grid_search_cv(g, X, y, {5, 9, 4});
    for (std::size_t i = 0; i < a.scores.size(); ++i) CHECK(a.scores[i].fold_accuracy == b.scores[i].fold_accuracy);
    CHECK(a.best.hyperparameters == b.best.hyperparameters);
  }
}

TEST_CASE("stratified folds balance each class") {
  Labels y;
  for (int i = 0; i < 23; ++i) y.push_back(i % 3 == 0);
  const auto f = stratified_folds(y, 4, 1);
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<int> count(4, 0);
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] == cls) ++count[static_cast<std::size_t>(f[i])];
    CHECK(*std::max_element(count.begin(), count.end()) - *std::min_element(count.begin(), count.end()) <= 1);
  }
  CHECK(stratified_folds(y, 4, 1) == f);
}

TEST_CASE("soft voting averages member probabilities") {
  Matrix X;
  Labels y;
  blobs(30, 2, 2.0, 3, X, y);
  std::vector<ClassifierModel> members{ClassifierModel::fit(spec(Kind::kGaussianNB), X, y),
                                       ClassifierModel::fit(spec(Kind::kDecisionTree, {{"max_depth", 2}}), X, y)};
  const VotingEnsemble ens(members);
  const Vector p = ens.predict_proba(X);
  const Vector expect = 0.5 * (members[0].predict_proba(X) + members[1].predict_proba(X));
  CHECK((p - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(ens.predict(X) == threshold(p));
}
