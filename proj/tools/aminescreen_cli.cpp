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

// aminescreen: command-line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aminescreen/aminescreen.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

// Carries a failed status up to main().
struct Failure {
  amn_status status;
  std::string message;
};

void check(amn_status s, const std::string& context) {
  if (s == AMN_OK) return;
  std::string msg = context + ": " + amn_status_name(s);
  const std::string detail = amn_last_error();
  if (!detail.empty()) msg += ": " + detail;
  if (amn_last_error_position() >= 0) msg += " (at " + std::to_string(amn_last_error_position()) + ")";
  throw Failure{s, msg};
}

void input_error(const std::string& message) { throw Failure{AMN_E_INVALID_ARGUMENT, message}; }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Config = std::unique_ptr<amn_config, Deleter<amn_config, amn_config_free>>;
using Dataset = std::unique_ptr<amn_dataset, Deleter<amn_dataset, amn_dataset_free>>;
using Bundle = std::unique_ptr<amn_bundle, Deleter<amn_bundle, amn_bundle_free>>;
using Calibration = std::unique_ptr<amn_calibration, Deleter<amn_calibration, amn_calibration_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  amn_string_free(s);
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{AMN_E_IO, "cannot write " + path.string()};
  out << text;
  if (!out) throw Failure{AMN_E_IO, "write failed: " + path.string()};
}

struct Globals {
  std::string config_path;
  std::optional<long long> seed;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  bool verbose = false;
};

Config make_config(const Globals& g) {
  amn_config* raw = nullptr;
  if (g.config_path.empty()) {
    check(amn_config_new(&raw), "config");
  } else {
    check(amn_config_load(g.config_path.c_str(), &raw), g.config_path);
  }
  Config cfg(raw);
  if (g.seed) check(amn_config_set(cfg.get(), "seed", std::to_string(*g.seed).c_str()), "--seed");
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) input_error("--set expects key=value, got '" + kv + "'");
    check(amn_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()), "--set " + kv);
  }
  return cfg;
}

nlohmann::json config_json(const amn_config* cfg) {
  char* text = nullptr;
  check(amn_config_to_json(cfg, &text), "config");
  return nlohmann::json::parse(take(text));
}

Dataset load_dataset(const std::string& path, const amn_config* cfg) {
  amn_dataset* raw = nullptr;
  check(amn_dataset_ingest(path.c_str(), cfg, &raw), path);
  Dataset ds(raw);
  if (amn_dataset_rejected(ds.get()) > 0) {
    std::cerr << path << ": " << amn_dataset_rejected(ds.get()) << " row(s) rejected\n";
  }
  return ds;
}

Bundle load_bundle(const std::string& dir) {
  amn_bundle* raw = nullptr;
  check(amn_bundle_load(dir.c_str(), &raw), dir);
  return Bundle(raw);
}

Calibration load_calibration(const std::string& explicit_path, const amn_config* cfg) {
  std::string path = explicit_path;
  if (path.empty()) {
    const auto j = config_json(cfg);
    if (j.contains("calibration_file") && j["calibration_file"].is_string()) {
      path = j["calibration_file"].get<std::string>();
    }
  }
  amn_calibration* raw = nullptr;
  if (path.empty()) {
    check(amn_calibration_default(&raw), "calibration");
  } else {
    check(amn_calibration_load(path.c_str(), &raw), path);
  }
  return Calibration(raw);
}

void log_to_stderr(int level, const char* message, void* user) {
  const bool verbose = *static_cast<bool*>(user);
  if (level == 0 && !verbose) return;
  std::fprintf(stderr, "%s%s\n", level == 1 ? "warning: " : "", message);
}

// One row of an analyze-signal batch.
struct TraceJob {
  std::string path;
  double n_amine;
};

std::vector<TraceJob> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{AMN_E_IO, "cannot open " + path};
  std::vector<TraceJob> jobs;
  std::string line;
  std::getline(in, line);
  if (line.rfind("trace,n_amine", 0) != 0) {
    throw Failure{AMN_E_FORMAT, path + ": expected header 'trace,n_amine'"};
  }
  const fs::path base = fs::path(path).parent_path();
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Failure{AMN_E_FORMAT, path + ":" + std::to_string(lineno) + ": missing n_amine"};
    TraceJob job;
    const fs::path trace = line.substr(0, comma);
    job.path = (trace.is_absolute() ? trace : base / trace).string();
    try {
      std::size_t used = 0;
      const std::string value = line.substr(comma + 1);
      job.n_amine = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw Failure{AMN_E_FORMAT, path + ":" + std::to_string(lineno) + ": bad n_amine"};
    }
    jobs.push_back(job);
  }
  return jobs;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amine screening for CO2 capture: fingerprints, classifiers, signal analysis, candidate generation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(amn_version()));

  Globals g;
  app.add_option("--config", g.config_path, "Pipeline config JSON")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Override the config seed");
  app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--set", g.overrides, "Override a config key (key=value, value as JSON)");
  app.add_flag("-v,--verbose", g.verbose, "Print progress messages");

  std::string dataset;
  std::string bundle_dir;
  std::string split;
  bool svg = false;

  auto* ingest = app.add_subcommand("ingest", "Validate a dataset; writes records.csv and diagnostics.csv");
  ingest->add_option("dataset", dataset, "Dataset CSV")->required();

  auto* fingerprint = app.add_subcommand("fingerprint", "Fingerprint + PCA; writes pca.json and features.csv");
  fingerprint->add_option("dataset", dataset, "Dataset CSV")->required();

  auto* train = app.add_subcommand("train", "Grid search, fit and validate all models; writes the bundle and validation_metrics.csv");
  train->add_option("dataset", dataset, "Dataset CSV")->required();
  train->add_option("--bundle", bundle_dir, "Bundle directory (default <out-dir>/bundle)");

  auto* validate = app.add_subcommand("validate", "Score a trained bundle on a split; writes <split>_metrics.csv");
  validate->add_option("dataset", dataset, "Dataset CSV")->required();
  validate->add_option("--bundle", bundle_dir, "Bundle directory (default <out-dir>/bundle)");
  validate->add_option("--split", split, "Split to score")->default_val("test");

  auto* predict = app.add_subcommand("predict", "Class probabilities and quadrants in input order; writes predictions.csv");
  auto* rank = app.add_subcommand("rank", "Predictions sorted by joint probability; writes ranking.csv");
  for (auto* sub : {predict, rank}) {
    sub->add_option("dataset", dataset, "Dataset CSV")->required();
    sub->add_option("--bundle", bundle_dir, "Bundle directory (default <out-dir>/bundle)");
    sub->add_option("--split", split, "Only rows of this split");
    sub->add_flag("--svg", svg, "Also write a scatter plot");
  }

  std::vector<std::string> traces;
  std::string manifest;
  std::string calibration;
  std::optional<double> n_amine;
  std::string fit_kind = "auto";
  std::string rate_method = "fit";
  auto* analyze = app.add_subcommand("analyze-signal", "Absorption capacity and initial rate from detector traces; writes signal_results.csv");
  analyze->add_option("traces", traces, "Trace CSV files");
  analyze->add_option("--manifest", manifest, "CSV with columns trace,n_amine")->check(CLI::ExistingFile);
  analyze->add_option("--n-amine", n_amine, "Moles of amine loaded (for positional traces)");
  analyze->add_option("--calibration", calibration, "Calibration file (default from config)");
  analyze->add_option("--fit-kind", fit_kind, "auto, exponential, logistic or linear")->capture_default_str();
  analyze->add_option("--rate-method", rate_method, "fit or slope")->capture_default_str();

  double alpha = 0.0, k_c = 0.0, sim_n_amine = 1e-3, duration = 3600.0, noise = 0.0;
  std::size_t samples = 1000;
  std::string trace_out = "trace.csv";
  auto* simulate = app.add_subcommand("simulate-signal", "Synthesize a detector trace");
  simulate->add_option("--alpha", alpha, "mol CO2 / mol amine")->required();
  simulate->add_option("--kc", k_c, "First-order rate constant, 1/s")->required();
  simulate->add_option("--n-amine", sim_n_amine, "Moles of amine")->capture_default_str();
  simulate->add_option("--duration", duration, "Seconds")->capture_default_str();
  simulate->add_option("--samples", samples, "Number of samples")->capture_default_str();
  simulate->add_option("--noise", noise, "Relative Gaussian noise per channel")->capture_default_str();
  simulate->add_option("--calibration", calibration, "Calibration file (default from config)");
  simulate->add_option("-o,--output", trace_out, "File name under --out-dir")->capture_default_str();

  std::string property_table;
  auto* generate = app.add_subcommand("generate", "Mine transformation rules and propose filtered candidates; writes rules.csv and candidates.csv");
  generate->add_option("dataset", dataset, "Source molecules (dataset CSV)")->required();
  generate->add_option("--properties", property_table, "Property table CSV for the filters")->check(CLI::ExistingFile);

  auto* report = app.add_subcommand("report", "Markdown summary of a trained bundle; writes report.md");
  report->add_option("dataset", dataset, "Dataset CSV")->required();
  report->add_option("--bundle", bundle_dir, "Bundle directory (default <out-dir>/bundle)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  amn_set_log_callback(log_to_stderr, &g.verbose);
  const fs::path out(g.out_dir);
  if (bundle_dir.empty()) bundle_dir = (out / "bundle").string();

  try {
    Config cfg = make_config(g);
    fs::create_directories(out);

    if (*ingest) {
      Dataset ds = load_dataset(dataset, cfg.get());
      char* text = nullptr;
      check(amn_dataset_records_csv(ds.get(), &text), "records");
      write_text(out / "records.csv", take(text));
      check(amn_dataset_diagnostics_csv(ds.get(), &text), "diagnostics");
      write_text(out / "diagnostics.csv", take(text));
      std::cout << amn_dataset_size(ds.get()) << " rows, " << amn_dataset_eligible(ds.get()) << " eligible, "
                << amn_dataset_rejected(ds.get()) << " rejected\n";
    } else if (*fingerprint) {
      Dataset ds = load_dataset(dataset, cfg.get());
      int n = 0;
      check(amn_fingerprint(cfg.get(), ds.get(), out.string().c_str(), &n), "fingerprint");
      std::cout << n << " principal components\n";
    } else if (*train) {
      Dataset ds = load_dataset(dataset, cfg.get());
      amn_bundle* raw = nullptr;
      check(amn_train(cfg.get(), ds.get(), &raw), "train");
      Bundle b(raw);
      check(amn_bundle_save(b.get(), bundle_dir.c_str()), bundle_dir);
      char* text = nullptr;
      check(amn_bundle_validation_csv(b.get(), &text), "metrics");
      write_text(out / "validation_metrics.csv", take(text));
      std::cout << "bundle written to " << bundle_dir << "\n";
    } else if (*validate) {
      Dataset ds = load_dataset(dataset, cfg.get());
      Bundle b = load_bundle(bundle_dir);
      char* text = nullptr;
      check(amn_bundle_evaluate(b.get(), ds.get(), split.c_str(), &text), "validate");
      write_text(out / (split + "_metrics.csv"), take(text));
    } else if (*predict || *rank) {
      Dataset ds = load_dataset(dataset, cfg.get());
      Bundle b = load_bundle(bundle_dir);
      char* text = nullptr;
      char* picture = nullptr;
      const std::string stem = *rank ? "ranking" : "predictions";
      check(amn_bundle_predict(b.get(), ds.get(), split.empty() ? nullptr : split.c_str(), *rank ? 1 : 0, &text,
                               svg ? &picture : nullptr),
            stem);
      write_text(out / (stem + ".csv"), take(text));
      if (svg) write_text(out / (stem + ".svg"), take(picture));
    } else if (*analyze) {
      std::vector<TraceJob> jobs;
      if (!manifest.empty()) jobs = read_manifest(manifest);
      if (!traces.empty()) {
        if (!n_amine) input_error("--n-amine is required with positional traces");
        for (const auto& t : traces) jobs.push_back({t, *n_amine});
      }
      if (jobs.empty()) input_error("no traces given (positional files or --manifest)");
      Calibration cal = load_calibration(calibration, cfg.get());
      std::ostringstream csv;
      csv << "trace,n_amine,alpha,initial_rate,total_mol_co2,k_c,fit_kind,fit_rss,rolloff_index,"
             "fit_fell_back,depleted_throughout,cumulative_fallback,status\n";
      int failures = 0;
      for (const auto& job : jobs) {
        amn_absorption r{};
        const amn_status s = amn_signal_analyze(cal.get(), job.path.c_str(), job.n_amine, fit_kind.c_str(),
                                                rate_method.c_str(), &r);
        csv << job.path << ',' << fmt_double(job.n_amine) << ',';
        if (s != AMN_OK) {
          // A bad trace is reported in its row; the rest of the batch still runs.
          if (!amn_status_is_input_error(s)) check(s, job.path);
          std::cerr << job.path << ": " << amn_status_name(s) << ": " << amn_last_error() << "\n";
          csv << ",,,,,,,,,," << amn_status_name(s) << "\n";
          ++failures;
          continue;
        }
        csv << fmt_double(r.alpha) << ',' << fmt_double(r.initial_rate) << ',' << fmt_double(r.total_mol_co2)
            << ',' << fmt_double(r.k_c) << ',' << r.fit_kind << ',' << fmt_double(r.fit_rss) << ','
            << r.rolloff_index << ',' << r.fit_fell_back << ',' << r.depleted_throughout << ','
            << r.cumulative_fallback << ",OK\n";
      }
      write_text(out / "signal_results.csv", csv.str());
      if (failures > 0) return kExitInput;
    } else if (*simulate) {
      Calibration cal = load_calibration(calibration, cfg.get());
      const auto j = config_json(cfg.get());
      const auto seed = j.value("seed", std::uint64_t{0});
      check(amn_signal_simulate(cal.get(), alpha, k_c, sim_n_amine, duration, samples, noise, seed,
                                (out / trace_out).string().c_str()),
            "simulate-signal");
    } else if (*generate) {
      Dataset ds = load_dataset(dataset, cfg.get());
      amn_generate_summary summary{};
      check(amn_generate(cfg.get(), ds.get(), property_table.empty() ? nullptr : property_table.c_str(),
                         (out / "rules.csv").string().c_str(), (out / "candidates.csv").string().c_str(), &summary),
            "generate");
      std::cout << summary.rules << " rules, " << summary.generated << " candidates, " << summary.kept
                << " kept\n";
    } else if (*report) {
      Dataset ds = load_dataset(dataset, cfg.get());
      Bundle b = load_bundle(bundle_dir);
      char* text = nullptr;
      check(amn_bundle_report(b.get(), ds.get(), &text), "report");
      write_text(out / "report.md", take(text));
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return amn_status_is_input_error(f.status) ? kExitInput : kExitInternal;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
