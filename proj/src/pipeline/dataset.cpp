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

#include "pipeline/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "chem/smiles.hpp"
#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/log.hpp"

namespace amine::pipeline {

const char* split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValidate: return "validate";
    case Split::kTest: return "test";
    case Split::kNone: return "none";
  }
  return "none";
}

Split parse_split(const std::string& raw) {
  std::string s;
  for (char c : raw) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "train" || s == "training") return Split::kTrain;
  if (s == "validate" || s == "validation" || s == "val") return Split::kValidate;
  if (s == "test") return Split::kTest;
  if (s.empty() || s == "none") return Split::kNone;
  throw Error(ErrorCode::kInvalidArgument, "unknown split '" + raw + "'");
}

std::size_t IngestResult::eligible_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.eligible; }));
}

namespace {

std::optional<double> measurement(const std::string& cell, const char* what) {
  if (cell.empty()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("{} '{}' is not a number", what, cell));
  }
  if (v < 0) throw Error(ErrorCode::kInvalidArgument, fmt::format("negative {} {}", what, cell));
  return v;
}

}  // namespace

IngestResult ingest_text(const std::string& text, const std::map<std::string, std::string>& columns) {
  IngestResult out;
  const csv::Table t = csv::parse(text);
  if (t.header.empty()) {
    log::warn("dataset is empty");
    return out;
  }
  auto col = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = columns.find(name);
    return t.column(it == columns.end() ? name : it->second);
  };
  const auto c_smiles = col("smiles");
  if (!c_smiles) throw Error(ErrorCode::kFormat, "dataset has no smiles column");
  const auto c_ik = col("inchikey");
  const auto c_name = col("iupac_name");
  const auto c_cap = col("absorption_capacity");
  const auto c_rate = col("observed_initial_rate");
  const auto c_split = col("split");
  // header plus comment lines precede the first data row
  const std::size_t first_line = t.comments.size() + 2;

  std::set<std::string> keys;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    auto cell = [&](const std::optional<std::size_t>& c) -> std::string {
      return c && *c < row.size() ? row[*c] : std::string();
    };
    DatasetRecord r;
    r.line = first_line + i;
    try {
      r.smiles = cell(c_smiles);
      r.inchikey = cell(c_ik);
      r.iupac_name = cell(c_name);
      r.absorption_capacity = measurement(cell(c_cap), "absorption_capacity");
      r.observed_initial_rate = measurement(cell(c_rate), "observed_initial_rate");
      r.split = parse_split(cell(c_split));
      if (r.smiles.empty()) throw Error(ErrorCode::kInvalidArgument, "empty smiles");
      if (r.smiles.find('*') != std::string::npos) {
        chem::ParseOptions o;
        o.allow_attachment_points = true;
        r.key = chem::canonical_key(r.smiles, o);
        r.eligible = false;
        r.note = "polymer repeat unit";
      } else {
        r.key = chem::canonical_key(r.smiles);
      }
      if (!keys.insert(r.key).second) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate canonical key " + r.key);
      }
    } catch (const Error& e) {
      out.diagnostics.push_back({r.line, e.what()});
      continue;
    }
    out.records.push_back(std::move(r));
  }
  for (const auto& d : out.diagnostics) log::warn(fmt::format("line {}: {}", d.line, d.message));
  return out;
}

IngestResult ingest(const std::filesystem::path& path, const std::map<std::string, std::string>& columns) {
  return ingest_text(csv::read_text(path), columns);
}

std::string format_records(const std::vector<DatasetRecord>& records) {
  std::string out =
      "smiles,canonical_key,inchikey,iupac_name,absorption_capacity,observed_initial_rate,split,"
      "eligible,note\n";
  auto num = [](const std::optional<double>& v) { return v ? csv::format_double(*v) : std::string(); };
  for (const auto& r : records) {
    out += csv::join({r.smiles, r.key, r.inchikey, r.iupac_name, num(r.absorption_capacity),
                      num(r.observed_initial_rate), split_name(r.split), r.eligible ? "1" : "0",
                      r.note});
    out += '\n';
  }
  return out;
}

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out = "line,message\n";
  for (const auto& d : diagnostics) {
    out += csv::join({std::to_string(d.line), d.message});
    out += '\n';
  }
  return out;
}

}  // namespace amine::pipeline
