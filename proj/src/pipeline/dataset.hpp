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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace amine::pipeline {

enum class Split { kTrain, kValidate, kTest, kNone };

const char* split_name(Split s);
// Accepts train/validate/validation/val/test/none and an empty cell (none).
Split parse_split(const std::string& s);

struct DatasetRecord {
  std::size_t line = 0;  // 1-based line in the source file
  std::string smiles;
  std::string key;       // canonical key; empty for skipped rows
  std::string inchikey;
  std::string iupac_name;
  std::optional<double> absorption_capacity;
  std::optional<double> observed_initial_rate;
  Split split = Split::kNone;
  // False for rows the fingerprint cannot describe (polymer repeat units).
  bool eligible = true;
  std::string note;
};

struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<DatasetRecord> records;
  std::vector<Diagnostic> diagnostics;  // rejected rows

  std::size_t eligible_count() const;
};

// Schema: smiles, inchikey, iupac_name, absorption_capacity,
// observed_initial_rate, split. Only smiles is required. `columns` maps a
// schema name to the header used in the file. Rows are validated one by
// one; bad SMILES, negative or non-numeric values and repeated canonical
// keys are reported and dropped. Rows with '*' are kept but not eligible.
IngestResult ingest_text(const std::string& text,
                         const std::map<std::string, std::string>& columns = {});
IngestResult ingest(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& columns = {});

std::string format_records(const std::vector<DatasetRecord>& records);
std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics);

}  // namespace amine::pipeline
