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


#include "learn/grid_search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/log.hpp"

namespace amine::learn {

std::vector<Grid> grids_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "grid file must map kinds to parameter grids");
  std::vector<Grid> out;
  for (const auto& kind_item : j.items()) {
    Grid g;
    g.kind = parse_kind(kind_item.key());
    const Json& params = kind_item.value();
    if (!params.is_object()) {
      throw Error(ErrorCode::kFormat, fmt::format("grid for {} must be an object", kind_item.key()));
    }
    const auto& allowed = hyperparameter_names(g.kind);
    for (const auto& item : params.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    fmt::format("{} does not take hyperparameter '{}'", kind_name(g.kind), item.key()));
      }
      std::vector<Json> values;
      if (item.value().is_array()) {
        for (const Json& v : item.value()) values.push_back(v);
      } else {
        values.push_back(item.value());
      }
      if (values.empty()) {
        throw Error(ErrorCode::kFormat, fmt::format("empty value list for {}.{}", kind_name(g.kind), item.key()));
      }
      g.axes.emplace_back(item.key(), std::move(values));
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Json> expand_grid(const Grid& grid) {
  std::vector<Json> points{Json::object()};
  for (const auto& [name, values] : grid.axes) {
    std::vector<Json> next;
    next.reserve(points.size() * values.size());
    for (const Json& p : points) {
      for (const Json& v : values) {
        Json q = p;
        q[name] = v;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

GridSearchResult grid_search_cv(const Grid& grid, const Matrix& X, const Labels& y,
                                const GridSearchOptions& options) {
  check_training_data(X, y);
  if (options.folds < 2) throw Error(ErrorCode::kInvalidArgument, "grid search needs at least 2 folds");
  const auto positives = static_cast<int>(std::count(y.begin(), y.end(), 1));
  const int minority = std::min(positives, static_cast<int>(y.size()) - positives);
  int folds = options.folds;
  if (folds > minority) {
    log::warn(fmt::format("{}: {} folds exceed the minority class count {}; using {} folds",
                          kind_name(grid.kind), folds, minority, std::max(2, minority)));
    folds = std::max(2, minority);
  }

  const std::vector<int> assignment = stratified_folds(y, folds, options.seed);
  struct Split {
    Matrix Xtr, Xte;
    Labels ytr, yte;
  };
  std::vector<Split> splits(static_cast<std::size_t>(folds));
  for (int k = 0; k < folds; ++k) {
    std::vector<Eigen::Index> tr, te;
    for (std::size_t i = 0; i < y.size(); ++i) {
      (assignment[i] == k ? te : tr).push_back(static_cast<Eigen::Index>(i));
    }
    Split& s = splits[static_cast<std::size_t>(k)];
    s.Xtr = X(tr, Eigen::placeholders::all);
    s.Xte = X(te, Eigen::placeholders::all);
    for (auto i : tr) s.ytr.push_back(y[static_cast<std::size_t>(i)]);
    for (auto i : te) s.yte.push_back(y[static_cast<std::size_t>(i)]);
  }

  GridSearchResult result;
  result.folds_used = folds;
  for (Json& p : expand_grid(grid)) {
    ClassifierSpec spec{grid.kind, p};
    make_classifier(spec);  // rejects bad values before any work starts
    result.scores.push_back({std::move(p), std::vector<double>(static_cast<std::size_t>(folds), 0.0), 0.0});
  }

  const std::size_t tasks = result.scores.size() * static_cast<std::size_t>(folds);
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      const std::size_t point = t / static_cast<std::size_t>(folds);
      const int k = static_cast<int>(t % static_cast<std::size_t>(folds));
      const Split& s = splits[static_cast<std::size_t>(k)];
      GridPointScore& score = result.scores[point];
      try {
        // A training fold can lose a class when the minority is tiny.
        if (std::count(s.ytr.begin(), s.ytr.end(), 1) == 0 ||
            std::count(s.ytr.begin(), s.ytr.end(), 0) == 0) {
          const int only = s.ytr.front();
          const auto hits = std::count(s.yte.begin(), s.yte.end(), only);
          score.fold_accuracy[static_cast<std::size_t>(k)] = double(hits) / double(s.yte.size());
          continue;
        }
        const auto model = ClassifierModel::fit({grid.kind, score.hyperparameters}, s.Xtr, s.ytr,
                                                mix_seed(options.seed, static_cast<std::uint64_t>(k)));
        const Labels pred = model.predict(s.Xte);
        int hits = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == s.yte[i];
        score.fold_accuracy[static_cast<std::size_t>(k)] = double(hits) / double(s.yte.size());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNonConvergence && e.code() != ErrorCode::kDegenerateData) {
          std::lock_guard<std::mutex> lock(mutex);
          if (!failure) failure = std::current_exception();
          next.store(tasks);
          return;
        }
        std::lock_guard<std::mutex> lock(mutex);
        log::warn(fmt::format("{} {} fold {}: {}; scored as 0", kind_name(grid.kind),
                              score.hyperparameters.dump(), k, e.what()));
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  double best = -1.0;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < result.scores.size(); ++i) {
    auto& s = result.scores[i];
    double sum = 0.0;
    for (double a : s.fold_accuracy) sum += a;
    s.mean_accuracy = sum / folds;
    if (s.mean_accuracy > best + 1e-12) {
      best = s.mean_accuracy;
      best_index = i;
    }
  }
  result.best = {grid.kind, result.scores[best_index].hyperparameters};
  result.best_score = best;
  return result;
}

}  // namespace amine::learn
