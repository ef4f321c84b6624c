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
#include <cmath>
#include <filesystem>
#include <map>
#include <string>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "doctest.h"
#include "pipeline/config.hpp"
#include "pipeline/dataset.hpp"
#include "pipeline/prediction.hpp"
#include "pipeline/training.hpp"

using namespace amine;
using namespace amine::pipeline;

namespace {

const char* kDataset = AMINE_DATA_DIR "/dataset/amines.csv";

// Defaults with one grid point per kind and 3 folds: a quick but complete run.
PipelineConfig quick_config() {
  PipelineConfig c;
  c.folds = 3;
  c.grid_file.clear();
  return c;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("amine_pipeline_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const TrainingResult& quick_training() {
  static const TrainingResult result = run_training(ingest(kDataset).records, quick_config());
  return result;
}

}  // namespace

TEST_CASE("ingest shipped dataset") {
  const auto r = ingest(kDataset);
  CHECK(r.records.size() == 130);
  CHECK(r.eligible_count() == 128);
  CHECK(r.diagnostics.empty());
  const auto polymers = std::count_if(r.records.begin(), r.records.end(),
                                      [](const auto& rec) { return !rec.eligible; });
  CHECK(polymers == 2);
}

TEST_CASE("ingest empty input") {
  const auto r = ingest_text("");
  CHECK(r.records.empty());
  CHECK(r.diagnostics.empty());
}

TEST_CASE("ingest per-row diagnostics") {
  const std::string text =
      "smiles,absorption_capacity,observed_initial_rate\n"
      "NCCO,0.5,0.1\n"
      "OCCN,0.4,0.1\n"      // same molecule as line 2
      "C(C,0.5,0.1\n"       // bad SMILES
      "NCCN,-0.2,0.1\n"     // negative
      "NCCCN,abc,0.1\n"     // non-numeric
      "CN,0.3,\n";
  const auto r = ingest_text(text);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].smiles == "NCCO");
  CHECK(r.records[1].smiles == "CN");
  CHECK_FALSE(r.records[1].observed_initial_rate.has_value());
  REQUIRE(r.diagnostics.size() == 4);
  CHECK(r.diagnostics[0].line == 3);
  CHECK(r.diagnostics[0].message.find("duplicate") != std::string::npos);
  CHECK(r.diagnostics[1].line == 4);
  CHECK(r.diagnostics[2].line == 5);
  CHECK(r.diagnostics[3].line == 6);
}

TEST_CASE("ingest column mapping") {
  const auto r = ingest_text("SMILES,AC\nNCCO,0.5\n", {{"smiles", "SMILES"}, {"absorption_capacity", "AC"}});
  REQUIRE(r.records.size() == 1);
  CHECK(*r.records[0].absorption_capacity == doctest::Approx(0.5));
}

TEST_CASE("config round trip and overrides") {
  PipelineConfig c;
  c.seed = 42;
  c.fingerprint_radius = 1;
  c.rate_threshold = 0.05;
  c.columns["smiles"] = "SMILES";
  c.filter.strict = true;
  const auto text = config_to_json(c);
  const auto back = config_from_json(text);
  CHECK(config_to_json(back) == text);
  CHECK(back.seed == 42);
  CHECK(back.filter.strict);

  set_config_value(c, "folds", "5");
  CHECK(c.folds == 5);
  set_config_value(c, "calibration_file", "x.cal");
  CHECK(c.calibration_file == "x.cal");
  CHECK_THROWS_AS(set_config_value(c, "no_such_key", "1"), Error);
}

TEST_CASE("default config file loads") {
  const auto c = load_config(AMINE_DATA_DIR "/config/default.json");
  CHECK(c.rate_threshold == 0.0868);
  CHECK(c.capacity_ratio_threshold == 0.8);
  CHECK(c.pca_variance == 0.95);
  CHECK(std::filesystem::exists(c.grid_file));
  CHECK(std::filesystem::exists(c.calibration_file));
}

TEST_CASE("degenerate config rejected") {
  PipelineConfig c;
  c.folds = 1;
  try {
    validate_config(c);
    FAIL("folds=1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  CHECK_THROWS_AS(run_training(ingest(kDataset).records, c), Error);
}

TEST_CASE("quadrants") {
  CHECK(quadrant(0.9, 0.9) == 'B');
  CHECK(quadrant(0.4, 0.6) == 'A');
  CHECK(quadrant(0.6, 0.4) == 'D');
  CHECK(quadrant(0.1, 0.2) == 'C');
  CHECK(quadrant(0.5, 0.5) == 'B');
  CHECK(quadrant(0.4999999, 0.5) == 'A');

  std::vector<Prediction> preds(3);
  preds[0] = {"CN", "CN", "", 0.4, 0.6, 'A', 0.24, 0};
  preds[1] = {"CCN", "CCN", "", 0.9, 0.9, 'B', 0.81, 0};
  preds[2] = {"CCCN", "CCCN", "", 0.5, 0.5, 'B', 0.25, 0};
  const auto r = ranked(preds);
  CHECK(r[0].key == "CCN");
  CHECK(r[0].rank == 1);
  CHECK(r[1].key == "CCCN");
  CHECK(r[2].rank == 3);
}

TEST_CASE("default split sampler") {
  auto records = ingest_text(csv::read_text(kDataset)).records;
  for (auto& r : records) r.split = Split::kNone;
  PipelineConfig c;
  REQUIRE(assign_default_splits(records, c));
  std::map<Split, std::pair<int, int>> counts;  // rate positives, negatives
  for (const auto& r : records) {
    const auto y = label_of(r, kRate, c);
    if (!y) continue;
    (*y ? counts[r.split].first : counts[r.split].second)++;
  }
  CHECK(counts[Split::kTest] == std::make_pair(12, 8));
  CHECK(counts[Split::kValidate] == std::make_pair(6, 5));
  // Seeded: same draw twice, and the sampler leaves existing splits alone.
  auto again = records;
  for (auto& r : again) r.split = Split::kNone;
  assign_default_splits(again, c);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i].split == again[i].split);
  CHECK_FALSE(assign_default_splits(again, c));
}

TEST_CASE("training produces 22 metric rows") {
  const auto& result = quick_training();
  CHECK(result.validation.size() == 22);
  int ensembles = 0;
  for (const auto& row : result.validation) {
    CHECK(row.report.confusion.total() == 11);
    if (row.model == "Ensemble") ++ensembles;
  }
  CHECK(ensembles == 2);
  const auto text = format_metrics(result.validation);
  CHECK(std::count(text.begin(), text.end(), '\n') == 23);
  CHECK(result.bundle.best.size() == 2);
}

TEST_CASE("bundle save/load reproduces predictions") {
  const auto& result = quick_training();
  const auto dir = temp_dir("bundle");
  save_bundle(result.bundle, dir);
  CHECK(std::filesystem::exists(dir / "bundle.json"));
  CHECK(std::filesystem::exists(dir / "pca.json"));
  const auto loaded = load_bundle(dir);
  const auto records = ingest(kDataset).records;
  const auto a = format_predictions(run_prediction(result.bundle, records));
  const auto b = format_predictions(run_prediction(loaded, records));
  CHECK(a == b);
  CHECK(format_metrics(evaluate_bundle(result.bundle, records, Split::kTest)) ==
        format_metrics(evaluate_bundle(loaded, records, Split::kTest)));
  std::filesystem::remove_all(dir);
}

TEST_CASE("prediction report invariants") {
  const auto& result = quick_training();
  const auto records = ingest(kDataset).records;
  const auto preds = ranked(run_prediction(result.bundle, records));
  CHECK(preds.size() == 128);
  std::map<char, int> quadrants;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto& p = preds[i];
    CHECK(p.quadrant == quadrant(p.p_capacity, p.p_rate));
    CHECK(p.score == doctest::Approx(p.p_capacity * p.p_rate));
    CHECK(p.rank == int(i) + 1);
    if (i > 0) CHECK(preds[i - 1].score >= p.score);
    quadrants[p.quadrant]++;
  }
  int total = 0;
  for (const auto& [q, n] : quadrants) total += n;
  CHECK(total == 128);
  const auto svg = scatter_svg(preds);
  CHECK(svg.rfind("<svg", 0) == 0);
  const auto report = render_report(result.validation, evaluate_bundle(result.bundle, records, Split::kTest),
                                    preds, result.bundle.best);
  CHECK(report.find("observed_initial_rate") != std::string::npos);
}

TEST_CASE("training is deterministic") {
  const auto& first = quick_training();
  const auto second = run_training(ingest(kDataset).records, quick_config());
  CHECK(format_metrics(first.validation) == format_metrics(second.validation));
  const auto records = ingest(kDataset).records;
  CHECK(format_predictions(run_prediction(first.bundle, records)) ==
        format_predictions(run_prediction(second.bundle, records)));
}

TEST_CASE("features csv") {
  const auto records = ingest(kDataset).records;
  const auto pca = fit_feature_pca(rows_in(records, Split::kTrain), PipelineConfig{});
  const auto text = format_features(pca, records);
  const auto table = csv::parse(text);
  CHECK(table.rows.size() == 128);
  CHECK(table.header.size() == std::size_t(pca.n_components()) + 2);
}
