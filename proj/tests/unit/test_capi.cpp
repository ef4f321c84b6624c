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


// Exercises the shared library through its public header only.

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aminescreen/aminescreen.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* kDataset = AMINE_DATA_DIR "/dataset/amines.csv";

std::string take(char* s) {
  std::string out = s ? s : "";
  amn_string_free(s);
  return out;
}

fs::path temp_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("amine_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("status names and error state") {
  CHECK(std::strlen(amn_version()) > 0);
  CHECK(std::string(amn_status_name(AMN_OK)) == "OK");
  CHECK(amn_status_is_input_error(AMN_E_SYNTAX));
  CHECK_FALSE(amn_status_is_input_error(AMN_E_INTERNAL));
  CHECK_FALSE(amn_status_is_input_error(AMN_OK));

  amn_molecule* m = nullptr;
  CHECK(amn_molecule_parse("C(C", &m) == AMN_E_UNBALANCED_BRANCH);
  CHECK(m == nullptr);
  CHECK(amn_last_error_position() == 3);
  CHECK(std::strlen(amn_last_error()) > 0);
  CHECK(amn_molecule_parse("CC(C)(C)(C)C", &m) == AMN_E_VALENCE_VIOLATION);
  CHECK(amn_molecule_parse("CXC", &m) != AMN_OK);

  // A successful call clears the previous message.
  REQUIRE(amn_molecule_parse("CC", &m) == AMN_OK);
  CHECK(std::string(amn_last_error()).empty());
  CHECK(amn_last_error_position() == -1);
  amn_molecule_free(m);
}

TEST_CASE("null arguments are rejected") {
  CHECK(amn_molecule_parse(nullptr, nullptr) == AMN_E_INVALID_ARGUMENT);
  CHECK(amn_config_new(nullptr) == AMN_E_INVALID_ARGUMENT);
  CHECK(amn_dataset_size(nullptr) == 0);
  char* out = nullptr;
  CHECK(amn_bundle_report(nullptr, nullptr, &out) == AMN_E_INVALID_ARGUMENT);
  // Free functions accept NULL.
  amn_config_free(nullptr);
  amn_bundle_free(nullptr);
  amn_string_free(nullptr);
}

TEST_CASE("molecules and labels") {
  amn_molecule* a = nullptr;
  amn_molecule* b = nullptr;
  REQUIRE(amn_molecule_parse("NCCO", &a) == AMN_OK);
  REQUIRE(amn_molecule_parse("OCCN", &b) == AMN_OK);
  char* ka = nullptr;
  char* kb = nullptr;
  REQUIRE(amn_molecule_canonical_key(a, &ka) == AMN_OK);
  REQUIRE(amn_molecule_canonical_key(b, &kb) == AMN_OK);
  CHECK(take(ka) == take(kb));

  amn_amine_profile p{};
  REQUIRE(amn_molecule_amine_profile(a, &p) == AMN_OK);
  CHECK(p.n_primary == 1);
  CHECK(p.n_tertiary == 0);

  int y = -1;
  REQUIRE(amn_label_rate(0.0868, 0.0868, &y) == AMN_OK);
  CHECK(y == 1);
  REQUIRE(amn_label_rate(0.0867, 0.0868, &y) == AMN_OK);
  CHECK(y == 0);
  REQUIRE(amn_label_capacity(a, 0.45, 0.8, &y) == AMN_OK);
  CHECK(y == 1);
  REQUIRE(amn_label_capacity(a, 0.35, 0.8, &y) == AMN_OK);
  CHECK(y == 0);

  amn_molecule* none = nullptr;
  REQUIRE(amn_molecule_parse("CCO", &none) == AMN_OK);
  CHECK(amn_label_capacity(none, 0.5, 0.8, &y) == AMN_E_NO_AMINE);
  amn_molecule_free(none);
  amn_molecule_free(a);
  amn_molecule_free(b);
}

TEST_CASE("config") {
  amn_config* cfg = nullptr;
  REQUIRE(amn_config_load(AMINE_DATA_DIR "/config/default.json", &cfg) == AMN_OK);
  CHECK(amn_config_set(cfg, "seed", "11") == AMN_OK);
  CHECK(amn_config_set(cfg, "calibration_file", "x.cal") == AMN_OK);
  CHECK(amn_config_set(cfg, "bogus", "1") != AMN_OK);
  CHECK(amn_config_set(cfg, "folds", "1") == AMN_E_INVALID_ARGUMENT);
  char* json = nullptr;
  REQUIRE(amn_config_to_json(cfg, &json) == AMN_OK);
  const std::string text = take(json);
  CHECK(text.find("\"seed\": 11") != std::string::npos);
  CHECK(text.find("\"folds\": 10") != std::string::npos);
  amn_config_free(cfg);

  amn_config* missing = nullptr;
  CHECK(amn_config_load("/nonexistent/config.json", &missing) == AMN_E_IO);
}

TEST_CASE("dataset ingest") {
  amn_dataset* ds = nullptr;
  REQUIRE(amn_dataset_ingest(kDataset, nullptr, &ds) == AMN_OK);
  CHECK(amn_dataset_size(ds) == 130);
  CHECK(amn_dataset_eligible(ds) == 128);
  CHECK(amn_dataset_rejected(ds) == 0);
  char* csv = nullptr;
  REQUIRE(amn_dataset_records_csv(ds, &csv) == AMN_OK);
  CHECK(take(csv).find("smiles") == 0);
  amn_dataset_free(ds);

  CHECK(amn_dataset_ingest("/nonexistent.csv", nullptr, &ds) == AMN_E_IO);
}

TEST_CASE("log callback") {
  std::vector<std::string> seen;
  amn_set_log_callback(
      [](int level, const char* msg, void* user) {
        if (level == 1) static_cast<std::vector<std::string>*>(user)->push_back(msg);
      },
      &seen);
  const auto dir = temp_dir("log");
  {
    std::ofstream(dir / "empty.csv") << "";
  }
  amn_dataset* ds = nullptr;
  REQUIRE(amn_dataset_ingest((dir / "empty.csv").c_str(), nullptr, &ds) == AMN_OK);
  CHECK(amn_dataset_size(ds) == 0);
  CHECK_FALSE(seen.empty());
  amn_dataset_free(ds);
  amn_set_log_callback(nullptr, nullptr);
  fs::remove_all(dir);
}

TEST_CASE("signal simulate and analyze") {
  amn_calibration* cal = nullptr;
  REQUIRE(amn_calibration_load(AMINE_DATA_DIR "/calibration/mea_fixture.cal", &cal) == AMN_OK);
  const auto dir = temp_dir("signal");
  const auto trace = (dir / "mea.csv").string();
  REQUIRE(amn_signal_simulate(cal, 0.55, 0.0868 / 0.55, 1e-3, 3600, 2000, 0.0, 1, trace.c_str()) == AMN_OK);
  amn_absorption r{};
  REQUIRE(amn_signal_analyze(cal, trace.c_str(), 1e-3, nullptr, nullptr, &r) == AMN_OK);
  CHECK(r.alpha == doctest::Approx(0.55).epsilon(0.02));
  CHECK(r.initial_rate == doctest::Approx(0.0868).epsilon(0.05));
  CHECK(r.fit_kind != nullptr);

  CHECK(amn_signal_analyze(cal, trace.c_str(), 1e-3, "quadratic", nullptr, &r) != AMN_OK);
  CHECK(amn_signal_analyze(cal, (dir / "missing.csv").c_str(), 1e-3, nullptr, nullptr, &r) == AMN_E_IO);
  amn_calibration_free(cal);
  fs::remove_all(dir);
}

TEST_CASE("generate") {
  const auto dir = temp_dir("generate");
  {
    std::ofstream(dir / "src.csv") << "smiles\nCCO\nCCN\nCCCO\n";
    std::ofstream(dir / "props.csv") << "smiles,water_solubility,pkb,ld50\nCCCN,0.5,3.4,500\n";
  }
  amn_dataset* ds = nullptr;
  REQUIRE(amn_dataset_ingest((dir / "src.csv").c_str(), nullptr, &ds) == AMN_OK);
  amn_generate_summary s{};
  REQUIRE(amn_generate(nullptr, ds, (dir / "props.csv").c_str(), (dir / "rules.csv").c_str(),
                       (dir / "cands.csv").c_str(), &s) == AMN_OK);
  CHECK(s.rules >= 2);
  CHECK(s.kept <= s.generated);
  const auto cands = slurp(dir / "cands.csv");
  amn_molecule* propylamine = nullptr;
  REQUIRE(amn_molecule_parse("CCCN", &propylamine) == AMN_OK);
  char* key = nullptr;
  REQUIRE(amn_molecule_canonical_key(propylamine, &key) == AMN_OK);
  CHECK(cands.find("\n" + take(key) + ",") != std::string::npos);
  amn_molecule_free(propylamine);
  CHECK(slurp(dir / "rules.csv").rfind("# aminescreen.rules v1", 0) == 0);
  amn_dataset_free(ds);
  fs::remove_all(dir);
}

TEST_CASE("train, save, load, predict, report") {
  amn_config* cfg = nullptr;
  REQUIRE(amn_config_new(&cfg) == AMN_OK);
  REQUIRE(amn_config_set(cfg, "folds", "3") == AMN_OK);
  amn_dataset* ds = nullptr;
  REQUIRE(amn_dataset_ingest(kDataset, cfg, &ds) == AMN_OK);

  const auto dir = temp_dir("train");
  int n_components = 0;
  REQUIRE(amn_fingerprint(cfg, ds, (dir / "fp").c_str(), &n_components) == AMN_OK);
  CHECK(n_components > 0);
  CHECK(fs::exists(dir / "fp" / "pca.json"));
  CHECK(fs::exists(dir / "fp" / "features.csv"));

  amn_bundle* bundle = nullptr;
  REQUIRE(amn_train(cfg, ds, &bundle) == AMN_OK);
  char* text = nullptr;
  REQUIRE(amn_bundle_validation_csv(bundle, &text) == AMN_OK);
  const auto metrics = take(text);
  CHECK(std::count(metrics.begin(), metrics.end(), '\n') == 23);

  REQUIRE(amn_bundle_save(bundle, (dir / "bundle").c_str()) == AMN_OK);
  amn_bundle* loaded = nullptr;
  REQUIRE(amn_bundle_load((dir / "bundle").c_str(), &loaded) == AMN_OK);

  char* a = nullptr;
  char* b = nullptr;
  char* svg = nullptr;
  REQUIRE(amn_bundle_predict(bundle, ds, nullptr, 1, &a, &svg) == AMN_OK);
  REQUIRE(amn_bundle_predict(loaded, ds, nullptr, 1, &b, nullptr) == AMN_OK);
  const auto pa = take(a);
  CHECK(pa == take(b));
  CHECK(std::count(pa.begin(), pa.end(), '\n') == 129);
  CHECK(take(svg).rfind("<svg", 0) == 0);

  REQUIRE(amn_bundle_predict(loaded, ds, "test", 0, &a, nullptr) == AMN_OK);
  const auto test_rows = take(a);
  CHECK(std::count(test_rows.begin(), test_rows.end(), '\n') == 21);
  CHECK(amn_bundle_predict(loaded, ds, "nonsense", 0, &a, nullptr) != AMN_OK);

  REQUIRE(amn_bundle_evaluate(loaded, ds, "test", &text) == AMN_OK);
  CHECK(take(text).find("observed_initial_rate,Ensemble,20,") != std::string::npos);
  REQUIRE(amn_bundle_report(loaded, ds, &text) == AMN_OK);
  CHECK(take(text).find("#") == 0);

  amn_bundle_free(loaded);
  amn_bundle_free(bundle);
  amn_dataset_free(ds);
  amn_config_free(cfg);
  fs::remove_all(dir);
}
