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

#include "aminescreen/aminescreen.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <map>
#include <new>
#include <set>
#include <string>

#include "chem/amines.hpp"
#include "chem/smiles.hpp"
#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/log.hpp"
#include "generate/mmp.hpp"
#include "labels/labels.hpp"
#include "pipeline/config.hpp"
#include "pipeline/dataset.hpp"
#include "pipeline/prediction.hpp"
#include "pipeline/training.hpp"
#include "signal/absorption.hpp"

struct amn_config {
  amine::pipeline::PipelineConfig value;
};
struct amn_molecule {
  amine::chem::Molecule value;
};
struct amn_dataset {
  amine::pipeline::IngestResult value;
};
struct amn_bundle {
  amine::pipeline::ModelBundle value;
  std::vector<amine::pipeline::MetricsRow> validation;
};
struct amn_calibration {
  amine::signal::Calibration value;
};

namespace {

using namespace amine;

thread_local std::string g_error;
thread_local long g_error_position = -1;

amn_status fail(amn_status s, const std::string& message, long position = -1) {
  g_error = message;
  g_error_position = position;
  return s;
}

// Runs `body`, mapping exceptions to status codes.
template <typename F>
amn_status guard(F&& body) {
  g_error.clear();
  g_error_position = -1;
  try {
    body();
    return AMN_OK;
  } catch (const ParseError& e) {
    return fail(static_cast<amn_status>(e.code()), e.what(), static_cast<long>(e.position()));
  } catch (const Error& e) {
    return fail(static_cast<amn_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AMN_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AMN_E_INTERNAL, e.what());
  } catch (...) {
    return fail(AMN_E_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const pipeline::PipelineConfig& config_or_default(const amn_config* cfg) {
  static const pipeline::PipelineConfig defaults;
  return cfg ? cfg->value : defaults;
}

std::vector<pipeline::DatasetRecord> records_of(const amn_dataset* ds, const pipeline::PipelineConfig& cfg) {
  auto records = ds->value.records;
  pipeline::assign_default_splits(records, cfg);
  return records;
}

}  // namespace

extern "C" {

const char* amn_version(void) { return "1.0.0"; }

const char* amn_status_name(amn_status status) {
  if (status == AMN_OK) return "OK";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* amn_last_error(void) { return g_error.c_str(); }

long amn_last_error_position(void) { return g_error_position; }

int amn_status_is_input_error(amn_status status) {
  return status != AMN_OK && status != AMN_E_INTERNAL;
}

void amn_string_free(char* s) { std::free(s); }

void amn_set_log_callback(amn_log_fn fn, void* user) {
  if (!fn) {
    log::set_sink({});
    return;
  }
  log::set_sink([fn, user](log::Level level, const std::string& message) {
    fn(level == log::Level::kWarning ? 1 : 0, message.c_str(), user);
  });
}

amn_status amn_config_new(amn_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new amn_config{};
  });
}

amn_status amn_config_load(const char* path, amn_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    auto cfg = std::make_unique<amn_config>();
    cfg->value = pipeline::load_config(path);
    *out = cfg.release();
  });
}

amn_status amn_config_set(amn_config* cfg, const char* key, const char* value) {
  return guard([&] {
    require(cfg, "cfg");
    require(key, "key");
    require(value, "value");
    auto copy = cfg->value;
    pipeline::set_config_value(copy, key, value);
    cfg->value = std::move(copy);
  });
}

amn_status amn_config_to_json(const amn_config* cfg, char** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = dup(pipeline::config_to_json(cfg->value));
  });
}

void amn_config_free(amn_config* cfg) { delete cfg; }

amn_status amn_molecule_parse(const char* smiles, amn_molecule** out) {
  return guard([&] {
    require(smiles, "smiles");
    require(out, "out");
    *out = new amn_molecule{chem::parse_smiles(smiles)};
  });
}

amn_status amn_molecule_canonical_key(const amn_molecule* mol, char** out) {
  return guard([&] {
    require(mol, "mol");
    require(out, "out");
    *out = dup(chem::canonical_key(mol->value));
  });
}

amn_status amn_molecule_amine_profile(const amn_molecule* mol, amn_amine_profile* out) {
  return guard([&] {
    require(mol, "mol");
    require(out, "out");
    const auto p = chem::classify_amines(mol->value);
    *out = {p.n_primary, p.n_secondary, p.n_tertiary, p.n_aromatic_N, p.n_amide_N, p.n_other_N, p.n_amidine};
  });
}

void amn_molecule_free(amn_molecule* mol) { delete mol; }

amn_status amn_label_rate(double measured, double threshold, int* out) {
  return guard([&] {
    require(out, "out");
    *out = labels::label_rate(measured, threshold);
  });
}

amn_status amn_label_capacity(const amn_molecule* mol, double measured, double ratio_threshold, int* out) {
  return guard([&] {
    require(mol, "mol");
    require(out, "out");
    *out = labels::label_capacity(measured, chem::classify_amines(mol->value), ratio_threshold);
  });
}

amn_status amn_dataset_ingest(const char* path, const amn_config* cfg, amn_dataset** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new amn_dataset{pipeline::ingest(path, config_or_default(cfg).columns)};
  });
}

size_t amn_dataset_size(const amn_dataset* ds) { return ds ? ds->value.records.size() : 0; }

size_t amn_dataset_eligible(const amn_dataset* ds) { return ds ? ds->value.eligible_count() : 0; }

size_t amn_dataset_rejected(const amn_dataset* ds) { return ds ? ds->value.diagnostics.size() : 0; }

amn_status amn_dataset_records_csv(const amn_dataset* ds, char** out) {
  return guard([&] {
    require(ds, "ds");
    require(out, "out");
    *out = dup(pipeline::format_records(ds->value.records));
  });
}

amn_status amn_dataset_diagnostics_csv(const amn_dataset* ds, char** out) {
  return guard([&] {
    require(ds, "ds");
    require(out, "out");
    *out = dup(pipeline::format_diagnostics(ds->value.diagnostics));
  });
}

void amn_dataset_free(amn_dataset* ds) { delete ds; }

amn_status amn_fingerprint(const amn_config* cfg, const amn_dataset* ds, const char* out_dir, int* n_components) {
  return guard([&] {
    require(ds, "ds");
    require(out_dir, "out_dir");
    const auto& config = config_or_default(cfg);
    const auto records = records_of(ds, config);
    auto rows = pipeline::rows_in(records, pipeline::Split::kTrain);
    if (rows.empty()) {
      for (const auto& r : records) {
        if (r.eligible) rows.push_back(&r);
      }
    }
    const auto pca = pipeline::fit_feature_pca(rows, config);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    fp::save_pca(pca, dir / "pca.json");
    csv::write_file(dir / "features.csv", pipeline::format_features(pca, records));
    if (n_components) *n_components = pca.n_components();
  });
}

amn_status amn_train(const amn_config* cfg, const amn_dataset* ds, amn_bundle** out) {
  return guard([&] {
    require(ds, "ds");
    require(out, "out");
    auto result = pipeline::run_training(ds->value.records, config_or_default(cfg));
    *out = new amn_bundle{std::move(result.bundle), std::move(result.validation)};
  });
}

amn_status amn_bundle_save(const amn_bundle* bundle, const char* dir) {
  return guard([&] {
    require(bundle, "bundle");
    require(dir, "dir");
    pipeline::save_bundle(bundle->value, dir);
  });
}

amn_status amn_bundle_load(const char* dir, amn_bundle** out) {
  return guard([&] {
    require(dir, "dir");
    require(out, "out");
    *out = new amn_bundle{pipeline::load_bundle(dir), {}};
  });
}

amn_status amn_bundle_validation_csv(const amn_bundle* bundle, char** out) {
  return guard([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = dup(pipeline::format_metrics(bundle->validation));
  });
}

amn_status amn_bundle_evaluate(const amn_bundle* bundle, const amn_dataset* ds, const char* split, char** out) {
  return guard([&] {
    require(bundle, "bundle");
    require(ds, "ds");
    require(split, "split");
    require(out, "out");
    const auto records = records_of(ds, bundle->value.config);
    *out = dup(pipeline::format_metrics(
        pipeline::evaluate_bundle(bundle->value, records, pipeline::parse_split(split))));
  });
}

amn_status amn_bundle_predict(const amn_bundle* bundle, const amn_dataset* ds, const char* split, int ranked,
                              char** csv_out, char** svg) {
  return guard([&] {
    require(bundle, "bundle");
    require(ds, "ds");
    require(csv_out, "csv");
    auto records = records_of(ds, bundle->value.config);
    if (split) {
      const auto s = pipeline::parse_split(split);
      std::erase_if(records, [&](const auto& r) { return r.split != s; });
    }
    auto preds = pipeline::run_prediction(bundle->value, records);
    if (ranked) preds = pipeline::ranked(std::move(preds));
    std::string text = pipeline::format_predictions(preds);
    std::string picture = svg ? pipeline::scatter_svg(preds) : std::string();
    char* c = dup(text);
    if (svg) {
      try {
        *svg = dup(picture);
      } catch (...) {
        std::free(c);
        throw;
      }
    }
    *csv_out = c;
  });
}

amn_status amn_bundle_report(const amn_bundle* bundle, const amn_dataset* ds, char** out) {
  return guard([&] {
    require(bundle, "bundle");
    require(ds, "ds");
    require(out, "out");
    auto records = records_of(ds, bundle->value.config);
    const auto validation = pipeline::evaluate_bundle(bundle->value, records, pipeline::Split::kValidate);
    const auto test = pipeline::evaluate_bundle(bundle->value, records, pipeline::Split::kTest);
    std::erase_if(records, [](const auto& r) { return r.split != pipeline::Split::kTest; });
    const auto preds = pipeline::run_prediction(bundle->value, records);
    *out = dup(pipeline::render_report(validation, test, preds, bundle->value.best));
  });
}

void amn_bundle_free(amn_bundle* bundle) { delete bundle; }

amn_status amn_calibration_default(amn_calibration** out) {
  return guard([&] {
    require(out, "out");
    *out = new amn_calibration{};
  });
}

amn_status amn_calibration_load(const char* path, amn_calibration** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new amn_calibration{signal::read_calibration(path)};
  });
}

void amn_calibration_free(amn_calibration* cal) { delete cal; }

amn_status amn_signal_analyze(const amn_calibration* cal, const char* trace_path, double n_amine,
                              const char* fit_kind, const char* rate_method, amn_absorption* out) {
  return guard([&] {
    require(cal, "cal");
    require(trace_path, "trace_path");
    require(out, "out");
    signal::AbsorptionOptions opts;
    if (fit_kind) opts.fit_kind = fit_kind;
    if (rate_method) opts.rate_method = rate_method;
    const auto r = signal::compute_absorption(signal::read_trace(trace_path), cal->value, n_amine, opts);
    out->alpha = r.alpha;
    out->initial_rate = r.initial_rate;
    out->total_mol_co2 = r.total_mol_co2;
    out->k_c = r.k_c;
    out->fit_rss = r.fit_rss;
    out->rolloff_index = r.rolloff_index;
    out->fit_kind = signal::fit_kind_name(r.fit_kind).data();
    out->fit_fell_back = r.fit_fell_back;
    out->depleted_throughout = r.depleted_throughout;
    out->cumulative_fallback = r.cumulative_fallback;
  });
}

amn_status amn_signal_simulate(const amn_calibration* cal, double alpha, double k_c, double n_amine,
                               double duration_s, size_t samples, double noise, uint64_t seed,
                               const char* out_path) {
  return guard([&] {
    require(cal, "cal");
    require(out_path, "out_path");
    signal::SimulationOptions opts;
    opts.duration_s = duration_s;
    opts.samples = samples;
    opts.noise = noise;
    opts.seed = seed;
    csv::write_file(out_path,
                    signal::format_trace(signal::simulate_trace(alpha, k_c, n_amine, cal->value, opts)));
  });
}

amn_status amn_generate(const amn_config* cfg, const amn_dataset* source, const char* property_table,
                        const char* rules_path, const char* candidates_path, amn_generate_summary* out) {
  return guard([&] {
    require(source, "source");
    require(rules_path, "rules_path");
    require(candidates_path, "candidates_path");
    const auto& config = config_or_default(cfg);
    std::vector<chem::Molecule> mols;
    std::set<std::string> keys;
    std::map<std::string, std::string> by_inchikey;
    for (const auto& r : source->value.records) {
      keys.insert(r.key);
      if (!r.eligible) continue;
      mols.push_back(chem::parse_smiles(r.key));
      if (!r.inchikey.empty()) by_inchikey[r.inchikey] = r.key;
    }
    const auto rules = gen::extract_rules(mols, config.env_radius);
    std::vector<gen::Candidate> cands;
    for (const auto& m : mols) {
      auto c = gen::apply_rules(m, rules, config.env_radius);
      cands.insert(cands.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    }
    const std::size_t generated = cands.size();
    const gen::PropertyTable props =
        property_table ? gen::read_property_table(property_table, by_inchikey) : gen::PropertyTable{};
    const auto kept = gen::filter_candidates(std::move(cands), keys, props, config.filter);
    gen::write_rules(rules_path, rules, config.env_radius);
    csv::write_file(candidates_path, gen::format_candidates(kept, rules));
    if (out) *out = {rules.size(), generated, kept.size()};
  });
}

}  // extern "C"
