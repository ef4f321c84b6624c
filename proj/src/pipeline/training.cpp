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

#include "pipeline/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include <fmt/format.h>

#include "chem/amines.hpp"
#include "chem/smiles.hpp"
#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/log.hpp"
#include "labels/labels.hpp"
#include "learn/grid_search.hpp"

namespace amine::pipeline {

using learn::ClassifierModel;
using learn::Json;
using learn::Kind;
using learn::Labels;
using learn::Matrix;
using learn::Vector;

namespace {

constexpr const char* kBundleFormat = "aminescreen.bundle";
constexpr int kBundleVersion = 1;

std::uint64_t property_salt(const std::string& p) { return p == kCapacity ? 1 : 2; }

struct LabeledSet {
  Matrix X;
  Labels y;
};

LabeledSet labeled(const ModelBundle& b, const std::vector<const DatasetRecord*>& rows,
                   const std::string& property) {
  std::vector<const DatasetRecord*> kept;
  LabeledSet s;
  for (const auto* r : rows) {
    if (const auto y = label_of(*r, property, b.config)) {
      kept.push_back(r);
      s.y.push_back(*y);
    }
  }
  s.X = b.features(kept);
  return s;
}

std::map<std::string, std::vector<learn::Grid>> load_grids(const PipelineConfig& c) {
  std::map<std::string, std::vector<learn::Grid>> out;
  if (c.grid_file.empty()) {
    log::info("no grid file: every kind is trained at its default hyperparameters");
    return out;
  }
  Json j;
  try {
    j = Json::parse(csv::read_text(c.grid_file));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, fmt::format("grid file {}: {}", c.grid_file, e.what()));
  }
  if (j.contains(kCapacity) || j.contains(kRate)) {
    for (const auto& p : properties()) {
      if (j.contains(p)) out[p] = learn::grids_from_json(j[p]);
    }
  } else {
    const auto g = learn::grids_from_json(j);
    for (const auto& p : properties()) out[p] = g;
  }
  return out;
}

learn::Grid grid_for(const std::map<std::string, std::vector<learn::Grid>>& grids,
                     const std::string& property, Kind kind) {
  const auto it = grids.find(property);
  if (it != grids.end()) {
    for (const auto& g : it->second) {
      if (g.kind == kind) return g;
    }
  }
  learn::Grid g;
  g.kind = kind;
  return g;
}

std::vector<ClassifierModel> ensemble_members(const ModelBundle& b, const std::string& property) {
  std::vector<ClassifierModel> members;
  const auto it = b.config.ensembles.find(property);
  if (it == b.config.ensembles.end()) return members;
  const auto& models = b.models.at(property);
  for (const auto& name : it->second) {
    const std::string kind(learn::kind_name(learn::parse_kind(name)));
    const auto m = models.find(kind);
    if (m == models.end()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("ensemble member {} not trained", kind));
    }
    members.push_back(m->second);
  }
  return members;
}

MetricsRow metrics_row(const std::string& property, const std::string& model,
                       const LabeledSet& data, const Vector& proba) {
  MetricsRow row;
  row.property = property;
  row.model = model;
  const std::vector<double> p(proba.data(), proba.data() + proba.size());
  row.report = learn::evaluate(data.y, learn::threshold(proba), p);
  row.cv_accuracy = std::numeric_limits<double>::quiet_NaN();
  return row;
}

void check_split(const LabeledSet& s, const std::string& property, const char* split) {
  if (s.y.empty()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("no labeled {} rows for {}", split, property));
  }
}

// Higher validation accuracy, then MCC, then rank AUC; earlier kind on ties.
bool better(const learn::MetricsReport& a, const learn::MetricsReport& b) {
  auto key = [](const learn::MetricsReport& m) {
    const double auc = std::isnan(m.roc_auc_rank) ? 0.0 : m.roc_auc_rank;
    return std::tuple(std::round(m.accuracy * 1e9), std::round(m.mcc * 1e9), std::round(auc * 1e9));
  };
  return key(a) > key(b);
}

}  // namespace

std::vector<const DatasetRecord*> rows_in(const std::vector<DatasetRecord>& records, Split s) {
  std::vector<const DatasetRecord*> out;
  for (const auto& r : records) {
    if (r.eligible && r.split == s) out.push_back(&r);
  }
  return out;
}

fp::PCAModel fit_feature_pca(const std::vector<const DatasetRecord*>& rows, const PipelineConfig& config) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no eligible rows to fingerprint");
  std::vector<fp::CountFingerprint> fps;
  for (const auto* r : rows) {
    fps.push_back(fp::fingerprint(chem::parse_smiles(r->key), config.fingerprint_radius));
  }
  const fp::DenseFeatures dense = fp::vectorize(fps);
  fp::PCAModel pca = fp::fit_pca(dense.matrix, config.pca_variance, dense.vocabulary);
  pca.fingerprint_radius = config.fingerprint_radius;
  return pca;
}

std::string format_features(const fp::PCAModel& pca, const std::vector<DatasetRecord>& records) {
  std::string out = "canonical_key,split";
  for (int k = 0; k < pca.n_components(); ++k) out += fmt::format(",pc{}", k + 1);
  out += '\n';
  for (const auto& r : records) {
    if (!r.eligible) continue;
    const auto z = fp::transform(pca, fp::fingerprint(chem::parse_smiles(r.key), pca.fingerprint_radius));
    std::vector<std::string> f{r.key, split_name(r.split)};
    for (Eigen::Index k = 0; k < z.size(); ++k) f.push_back(csv::format_double(z(k)));
    out += csv::join(f);
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& properties() {
  static const std::vector<std::string> p{kCapacity, kRate};
  return p;
}

bool assign_default_splits(std::vector<DatasetRecord>& records, const PipelineConfig& config) {
  for (const auto& r : records) {
    if (r.split != Split::kNone) return false;
  }
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].split = Split::kTrain;
    const auto y = label_of(records[i], kRate, config);
    if (y) (*y ? pos : neg).push_back(i);
  }
  learn::Rng rng(learn::mix_seed(config.seed, 0x5e1ec7));
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  auto take = [&](std::vector<std::size_t>& from, std::size_t n, Split s) {
    for (std::size_t k = 0; k < n && !from.empty(); ++k) {
      records[from.back()].split = s;
      from.pop_back();
    }
  };
  take(pos, 12, Split::kTest);
  take(neg, 8, Split::kTest);
  take(pos, 6, Split::kValidate);
  take(neg, 5, Split::kValidate);
  log::info("dataset has no split column; drew a seeded 20-row test and 11-row validation set");
  return true;
}

std::optional<int> label_of(const DatasetRecord& r, const std::string& property,
                            const PipelineConfig& config) {
  if (!r.eligible) return std::nullopt;
  if (property == kRate) {
    if (!r.observed_initial_rate) return std::nullopt;
    return labels::label_rate(*r.observed_initial_rate, config.rate_threshold);
  }
  if (property != kCapacity) throw Error(ErrorCode::kInvalidArgument, "unknown property " + property);
  if (!r.absorption_capacity) return std::nullopt;
  const auto profile = chem::classify_amines(chem::parse_smiles(r.key));
  if (profile.amine_like() == 0) return 0;
  return labels::label_capacity(*r.absorption_capacity, profile, config.capacity_ratio_threshold);
}

Matrix ModelBundle::features(const std::vector<const DatasetRecord*>& records) const {
  Matrix X(static_cast<Eigen::Index>(records.size()), pca.n_components());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto fpr = fp::fingerprint(chem::parse_smiles(records[i]->key), pca.fingerprint_radius);
    X.row(static_cast<Eigen::Index>(i)) = fp::transform(pca, fpr);
  }
  return X;
}

Vector ModelBundle::predict_proba(const std::string& property, const Matrix& X) const {
  const auto& models_p = models.at(property);
  const auto sel = config.predict_model.find(property);
  const std::string choice = sel == config.predict_model.end() ? "best" : sel->second;
  if (choice == "ensemble") return learn::VotingEnsemble(ensemble_members(*this, property)).predict_proba(X);
  const std::string kind =
      choice == "best" ? best.at(property) : std::string(learn::kind_name(learn::parse_kind(choice)));
  const auto it = models_p.find(kind);
  if (it == models_p.end()) throw Error(ErrorCode::kInvalidArgument, "no trained model " + kind);
  return it->second.predict_proba(X);
}

TrainingResult run_training(std::vector<DatasetRecord> records, const PipelineConfig& config) {
  validate_config(config);
  assign_default_splits(records, config);
  auto train_rows = rows_in(records, Split::kTrain);
  auto val_rows = rows_in(records, Split::kValidate);
  if (train_rows.empty()) throw Error(ErrorCode::kInvalidArgument, "no eligible training rows");
  if (val_rows.empty()) {
    // Seeded stratified hold-out from the training rows.
    std::vector<const DatasetRecord*> pos, neg, rest;
    for (const auto* r : train_rows) {
      const auto y = label_of(*r, kRate, config);
      (y ? (*y ? pos : neg) : rest).push_back(r);
    }
    learn::Rng rng(learn::mix_seed(config.seed, 0xa11d));
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);
    train_rows = rest;
    for (auto* group : {&pos, &neg}) {
      const auto n_val = static_cast<std::size_t>(
          std::llround(config.validation_fraction * static_cast<double>(group->size())));
      for (std::size_t i = 0; i < group->size(); ++i) {
        (i < n_val ? val_rows : train_rows).push_back((*group)[i]);
      }
    }
    log::info(fmt::format("no validation rows; held out {} training rows", val_rows.size()));
  }

  TrainingResult result;
  ModelBundle& b = result.bundle;
  b.config = config;
  b.pca = fit_feature_pca(train_rows, config);
  log::info(fmt::format("PCA: {} fingerprint keys -> {} components", b.pca.n_features(),
                        b.pca.n_components()));

  const auto grids = load_grids(config);
  for (const auto& property : properties()) {
    const LabeledSet train = labeled(b, train_rows, property);
    const LabeledSet val = labeled(b, val_rows, property);
    check_split(train, property, "training");
    check_split(val, property, "validation");
    auto& models = b.models[property];
    const learn::MetricsReport* best_report = nullptr;
    std::size_t first_row = result.validation.size();
    for (std::size_t k = 0; k < learn::all_kinds().size(); ++k) {
      const Kind kind = learn::all_kinds()[k];
      const std::string name(learn::kind_name(kind));
      const auto started = std::chrono::steady_clock::now();
      learn::GridSearchOptions opts;
      opts.folds = config.folds;
      opts.threads = config.threads;
      opts.seed = learn::mix_seed(config.seed, property_salt(property) * 100 + k);
      const auto search = learn::grid_search_cv(grid_for(grids, property, kind), train.X, train.y, opts);
      auto model = ClassifierModel::fit(search.best, train.X, train.y,
                                        learn::mix_seed(opts.seed, 0xf17));
      MetricsRow row = metrics_row(property, name, val, model.predict_proba(val.X));
      row.cv_accuracy = search.best_score;
      row.hyperparameters = search.best.hyperparameters.dump();
      log::info(fmt::format(
          "{} {}: cv {:.3f} validation {:.3f} ({:.1f} s)", property, name, search.best_score,
          row.report.accuracy,
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()));
      models.emplace(name, std::move(model));
      result.validation.push_back(std::move(row));
    }
    for (std::size_t i = first_row; i < result.validation.size(); ++i) {
      const auto& r = result.validation[i];
      if (!best_report || better(r.report, *best_report)) {
        best_report = &r.report;
        b.best[property] = r.model;
      }
    }
    const auto members = ensemble_members(b, property);
    if (!members.empty()) {
      result.validation.push_back(metrics_row(property, "Ensemble", val,
                                              learn::VotingEnsemble(members).predict_proba(val.X)));
    }
  }
  return result;
}

std::vector<MetricsRow> evaluate_bundle(const ModelBundle& b, const std::vector<DatasetRecord>& records,
                                        Split split) {
  const auto rows = rows_in(records, split);
  std::vector<MetricsRow> out;
  for (const auto& property : properties()) {
    const LabeledSet data = labeled(b, rows, property);
    if (data.y.empty()) {
      log::warn(fmt::format("no labeled {} rows for {}", split_name(split), property));
      continue;
    }
    for (const Kind kind : learn::all_kinds()) {
      const std::string name(learn::kind_name(kind));
      const auto it = b.models.at(property).find(name);
      if (it == b.models.at(property).end()) continue;
      MetricsRow row = metrics_row(property, name, data, it->second.predict_proba(data.X));
      row.hyperparameters = it->second.spec().hyperparameters.dump();
      out.push_back(std::move(row));
    }
    const auto members = ensemble_members(b, property);
    if (!members.empty()) {
      out.push_back(metrics_row(property, "Ensemble", data,
                                learn::VotingEnsemble(members).predict_proba(data.X)));
    }
  }
  return out;
}

std::string format_metrics(const std::vector<MetricsRow>& rows) {
  std::string out =
      "property,model,n,tp,fp,tn,fn,accuracy,sensitivity,specificity,roc_auc_balanced,roc_auc_rank,"
      "mcc,cv_accuracy,hyperparameters\n";
  auto num = [](double v) { return std::isnan(v) ? std::string() : csv::format_double(v); };
  for (const auto& r : rows) {
    const auto& m = r.report;
    const auto& c = m.confusion;
    out += csv::join({r.property, r.model, std::to_string(c.total()), std::to_string(c.tp),
                      std::to_string(c.fp), std::to_string(c.tn), std::to_string(c.fn),
                      num(m.accuracy), num(m.sensitivity), num(m.specificity),
                      num(m.roc_auc_balanced), num(m.roc_auc_rank), num(m.mcc), num(r.cv_accuracy),
                      r.hyperparameters});
    out += '\n';
  }
  return out;
}

void save_bundle(const ModelBundle& b, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "models");
  fp::save_pca(b.pca, dir / "pca.json");
  Json j;
  j["format"] = kBundleFormat;
  j["version"] = kBundleVersion;
  j["config"] = Json::parse(config_to_json(b.config));
  j["pca"] = "pca.json";
  for (const auto& [property, models] : b.models) {
    Json& p = j["properties"][property];
    p["best"] = b.best.at(property);
    for (const Kind kind : learn::all_kinds()) {
      const std::string name(learn::kind_name(kind));
      const auto it = models.find(name);
      if (it == models.end()) continue;
      const std::string file = fmt::format("models/{}.{}.json", property, name);
      csv::write_file(dir / file, it->second.to_json() + "\n");
      p["models"][name] = file;
    }
  }
  csv::write_file(dir / "bundle.json", j.dump(2) + "\n");
}

ModelBundle load_bundle(const std::filesystem::path& dir) {
  Json j;
  try {
    j = Json::parse(csv::read_text(dir / "bundle.json"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bundle.json: ") + e.what());
  }
  if (j.value("format", "") != kBundleFormat || j.value("version", 0) != kBundleVersion) {
    throw Error(ErrorCode::kFormat, "not an aminescreen model bundle (format/version)");
  }
  ModelBundle b;
  b.config = config_from_json(j.at("config").dump());
  b.pca = fp::load_pca(dir / j.at("pca").get<std::string>());
  for (const auto& [property, p] : j.at("properties").items()) {
    b.best[property] = p.at("best").get<std::string>();
    for (const auto& [name, file] : p.at("models").items()) {
      b.models[property].emplace(
          name, ClassifierModel::from_json(csv::read_text(dir / file.get<std::string>())));
    }
  }
  for (const auto& property : properties()) {
    if (!b.models.contains(property)) throw Error(ErrorCode::kFormat, "bundle lacks " + property);
  }
  return b;
}

}  // namespace amine::pipeline
