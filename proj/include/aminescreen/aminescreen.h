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

/* C interface to the amine screening toolkit. All objects are opaque
 * handles released with their *_free function. Functions return AMN_OK or
 * an error code; amn_last_error() then holds a message for the calling
 * thread. Strings returned through char** are owned by the caller and must
 * be released with amn_string_free. */

#ifndef AMINESCREEN_AMINESCREEN_H_
#define AMINESCREEN_AMINESCREEN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(AMN_BUILDING_LIBRARY)
#define AMN_API __attribute__((visibility("default")))
#else
#define AMN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amn_status {
  AMN_OK = 0,
  AMN_E_INVALID_ARGUMENT = 1,
  AMN_E_IO = 2,
  AMN_E_UNBALANCED_BRANCH = 3,
  AMN_E_UNCLOSED_RING_BOND = 4,
  AMN_E_UNKNOWN_ELEMENT = 5,
  AMN_E_VALENCE_VIOLATION = 6,
  AMN_E_SYNTAX = 7,
  AMN_E_MULTI_COMPONENT = 8,
  AMN_E_EMPTY_INPUT = 9,
  AMN_E_DEGENERATE_DATA = 10,
  AMN_E_DIMENSION_MISMATCH = 11,
  AMN_E_LENGTH_MISMATCH = 12,
  AMN_E_SINGLE_CLASS_TRAINING = 13,
  AMN_E_NON_FINITE_FEATURE = 14,
  AMN_E_NO_AMINE = 15,
  AMN_E_ZERO_REFERENCE = 16,
  AMN_E_ABSORBANCE_EXCEEDS_A = 17,
  AMN_E_NON_CONVERGENCE = 18,
  AMN_E_FORMAT = 19,
  AMN_E_INTERNAL = 20
} amn_status;

typedef struct amn_config amn_config;
typedef struct amn_molecule amn_molecule;
typedef struct amn_dataset amn_dataset;
typedef struct amn_bundle amn_bundle;
typedef struct amn_calibration amn_calibration;

AMN_API const char* amn_version(void);
AMN_API const char* amn_status_name(amn_status status);
/* Message of the last failing call on this thread ("" if none). */
AMN_API const char* amn_last_error(void);
/* Byte offset of the last SMILES parse error, or -1. */
AMN_API long amn_last_error_position(void);
/* Non-zero when the status describes bad input rather than a library fault. */
AMN_API int amn_status_is_input_error(amn_status status);
AMN_API void amn_string_free(char* s);

/* level: 0 info, 1 warning. A NULL callback restores stderr warnings. */
typedef void (*amn_log_fn)(int level, const char* message, void* user);
AMN_API void amn_set_log_callback(amn_log_fn fn, void* user);

/* ---- configuration ---- */
AMN_API amn_status amn_config_new(amn_config** out);
AMN_API amn_status amn_config_load(const char* path, amn_config** out);
/* value is JSON text; a bare word is taken as a string. */
AMN_API amn_status amn_config_set(amn_config* cfg, const char* key, const char* value);
AMN_API amn_status amn_config_to_json(const amn_config* cfg, char** out);
AMN_API void amn_config_free(amn_config* cfg);

/* ---- molecules and labels ---- */
typedef struct amn_amine_profile {
  int n_primary, n_secondary, n_tertiary, n_aromatic_N, n_amide_N, n_other_N, n_amidine;
} amn_amine_profile;

AMN_API amn_status amn_molecule_parse(const char* smiles, amn_molecule** out);
AMN_API amn_status amn_molecule_canonical_key(const amn_molecule* mol, char** out);
AMN_API amn_status amn_molecule_amine_profile(const amn_molecule* mol, amn_amine_profile* out);
AMN_API void amn_molecule_free(amn_molecule* mol);

AMN_API amn_status amn_label_rate(double measured, double threshold, int* out);
AMN_API amn_status amn_label_capacity(const amn_molecule* mol, double measured, double ratio_threshold,
                                      int* out);

/* ---- datasets ---- */
/* Column renames and the default split sampler come from cfg (may be NULL). */
AMN_API amn_status amn_dataset_ingest(const char* path, const amn_config* cfg, amn_dataset** out);
AMN_API size_t amn_dataset_size(const amn_dataset* ds);
AMN_API size_t amn_dataset_eligible(const amn_dataset* ds);
AMN_API size_t amn_dataset_rejected(const amn_dataset* ds);
/* Cleaned records and per-row diagnostics as CSV text. */
AMN_API amn_status amn_dataset_records_csv(const amn_dataset* ds, char** out);
AMN_API amn_status amn_dataset_diagnostics_csv(const amn_dataset* ds, char** out);
AMN_API void amn_dataset_free(amn_dataset* ds);

/* Fingerprints + PCA of the eligible training rows. Writes pca.json and
 * features.csv (PCA coordinates of every eligible row) into out_dir. */
AMN_API amn_status amn_fingerprint(const amn_config* cfg, const amn_dataset* ds, const char* out_dir,
                                   int* n_components);

/* ---- training, evaluation, prediction ---- */
AMN_API amn_status amn_train(const amn_config* cfg, const amn_dataset* ds, amn_bundle** out);
AMN_API amn_status amn_bundle_save(const amn_bundle* bundle, const char* dir);
AMN_API amn_status amn_bundle_load(const char* dir, amn_bundle** out);
/* Validation metrics recorded at training time (empty for loaded bundles). */
AMN_API amn_status amn_bundle_validation_csv(const amn_bundle* bundle, char** out);
/* Metrics of all stored models and ensembles on one split ("validate", "test", ...). */
AMN_API amn_status amn_bundle_evaluate(const amn_bundle* bundle, const amn_dataset* ds, const char* split,
                                       char** out);
/* Predictions for the eligible rows of ds (split NULL = all rows). ranked != 0
 * sorts by joint probability. svg (may be NULL) receives a scatter plot. */
AMN_API amn_status amn_bundle_predict(const amn_bundle* bundle, const amn_dataset* ds, const char* split,
                                      int ranked, char** csv, char** svg);
/* Markdown summary: validation and test metrics plus test-split ranking. */
AMN_API amn_status amn_bundle_report(const amn_bundle* bundle, const amn_dataset* ds, char** out);
AMN_API void amn_bundle_free(amn_bundle* bundle);

/* ---- signal analysis ---- */
typedef struct amn_absorption {
  double alpha;
  double initial_rate;
  double total_mol_co2;
  double k_c;
  double fit_rss;
  size_t rolloff_index;
  const char* fit_kind; /* static string */
  int fit_fell_back;
  int depleted_throughout;
  int cumulative_fallback;
} amn_absorption;

AMN_API amn_status amn_calibration_default(amn_calibration** out);
AMN_API amn_status amn_calibration_load(const char* path, amn_calibration** out);
AMN_API void amn_calibration_free(amn_calibration* cal);

/* fit_kind: "auto", "exponential", "logistic", "linear" (NULL = auto);
 * rate_method: "fit" or "slope" (NULL = fit). */
AMN_API amn_status amn_signal_analyze(const amn_calibration* cal, const char* trace_path, double n_amine,
                                      const char* fit_kind, const char* rate_method, amn_absorption* out);
AMN_API amn_status amn_signal_simulate(const amn_calibration* cal, double alpha, double k_c, double n_amine,
                                       double duration_s, size_t samples, double noise, uint64_t seed,
                                       const char* out_path);

/* ---- candidate generation ---- */
typedef struct amn_generate_summary {
  size_t rules;
  size_t generated;
  size_t kept;
} amn_generate_summary;

/* Mines rules from the eligible rows of source, applies them to the same
 * rows, filters against the source keys and the optional property table
 * (CSV, may be NULL), and writes the rule file and candidate CSV. */
AMN_API amn_status amn_generate(const amn_config* cfg, const amn_dataset* source, const char* property_table,
                                const char* rules_path, const char* candidates_path,
                                amn_generate_summary* out);

#ifdef __cplusplus
}
#endif

#endif  /* AMINESCREEN_AMINESCREEN_H_ */
