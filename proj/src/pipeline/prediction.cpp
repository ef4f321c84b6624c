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

#include "pipeline/prediction.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "common/csv.hpp"

namespace amine::pipeline {

char quadrant(double p_capacity, double p_rate) {
  const bool cap = p_capacity >= 0.5;
  const bool rate = p_rate >= 0.5;
  if (cap && rate) return 'B';
  if (cap) return 'D';
  if (rate) return 'A';
  return 'C';
}

void assign_ranks(std::vector<Prediction>& preds) {
  std::vector<std::size_t> order(preds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (preds[a].score != preds[b].score) return preds[a].score > preds[b].score;
    return preds[a].key < preds[b].key;
  });
  for (std::size_t r = 0; r < order.size(); ++r) preds[order[r]].rank = static_cast<int>(r + 1);
}

std::vector<Prediction> run_prediction(const ModelBundle& bundle,
                                       const std::vector<DatasetRecord>& records) {
  std::vector<const DatasetRecord*> rows;
  for (const auto& r : records) {
    if (r.eligible) rows.push_back(&r);
  }
  std::vector<Prediction> out;
  if (rows.empty()) return out;
  const learn::Matrix X = bundle.features(rows);
  const learn::Vector pc = bundle.predict_proba(kCapacity, X);
  const learn::Vector pr = bundle.predict_proba(kRate, X);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Prediction p;
    p.smiles = rows[i]->smiles;
    p.key = rows[i]->key;
    p.name = rows[i]->iupac_name;
    p.p_capacity = pc(static_cast<Eigen::Index>(i));
    p.p_rate = pr(static_cast<Eigen::Index>(i));
    p.quadrant = quadrant(p.p_capacity, p.p_rate);
    p.score = p.p_capacity * p.p_rate;
    out.push_back(std::move(p));
  }
  assign_ranks(out);
  return out;
}

std::vector<Prediction> ranked(std::vector<Prediction> predictions) {
  assign_ranks(predictions);
  std::sort(predictions.begin(), predictions.end(),
            [](const Prediction& a, const Prediction& b) { return a.rank < b.rank; });
  return predictions;
}

std::string format_predictions(const std::vector<Prediction>& predictions) {
  std::string out = "rank,smiles,canonical_key,name,p_capacity,p_rate,score,quadrant\n";
  for (const auto& p : predictions) {
    out += csv::join({std::to_string(p.rank), p.smiles, p.key, p.name,
                      csv::format_double(p.p_capacity), csv::format_double(p.p_rate),
                      csv::format_double(p.score), std::string(1, p.quadrant)});
    out += '\n';
  }
  return out;
}

std::string scatter_svg(const std::vector<Prediction>& predictions) {
  constexpr double kSize = 400, kPad = 50;
  auto x = [&](double p) { return kPad + p * kSize; };
  auto y = [&](double p) { return kPad + (1.0 - p) * kSize; };
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect x=\"{1}\" y=\"{1}\" width=\"{2}\" height=\"{2}\" fill=\"none\" stroke=\"black\"/>\n",
      kSize + 2 * kPad, kPad, kSize);
  s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n",
                   x(0.5), y(0.0), y(1.0));
  s += fmt::format("<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n",
                   y(0.5), x(0.0), x(1.0));
  const std::pair<char, std::pair<double, double>> labels[] = {
      {'A', {0.25, 0.75}}, {'B', {0.75, 0.75}}, {'C', {0.25, 0.25}}, {'D', {0.75, 0.25}}};
  for (const auto& [q, at] : labels) {
    s += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"gray\" font-size=\"28\">{}</text>\n",
                     x(at.first) - 8, y(at.second) + 10, q);
  }
  for (const auto& p : predictions) {
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"steelblue\"><title>{}</title></circle>\n",
                     x(p.p_capacity), y(p.p_rate), p.key);
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">P(capacity)</text>\n", x(0.5),
                   kSize + 2 * kPad - 15);
  s += fmt::format(
      "<text x=\"15\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 15 {0})\">P(rate)</text>\n",
      y(0.5));
  s += "</svg>\n";
  return s;
}

namespace {

std::string metrics_table(const std::vector<MetricsRow>& rows) {
  std::string s = "| property | model | accuracy | sensitivity | specificity | ROC AUC (balanced) | MCC |\n"
                  "|---|---|---|---|---|---|---|\n";
  auto f = [](double v) { return std::isnan(v) ? std::string("-") : fmt::format("{:.2f}", v); };
  for (const auto& r : rows) {
    const auto& m = r.report;
    s += fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n", r.property, r.model, f(m.accuracy),
                     f(m.sensitivity), f(m.specificity), f(m.roc_auc_balanced), f(m.mcc));
  }
  return s;
}

}  // namespace

std::string render_report(const std::vector<MetricsRow>& validation, const std::vector<MetricsRow>& test,
                          const std::vector<Prediction>& predictions,
                          const std::map<std::string, std::string>& best) {
  std::string s = "# Screening report\n\n";
  if (!best.empty()) {
    s += "Selected models:\n\n";
    for (const auto& [p, k] : best) s += fmt::format("- {}: {}\n", p, k);
    s += "\n";
  }
  if (!validation.empty()) s += "## Validation\n\n" + metrics_table(validation) + "\n";
  if (!test.empty()) s += "## Test\n\n" + metrics_table(test) + "\n";
  if (!predictions.empty()) {
    int counts[4] = {0, 0, 0, 0};
    for (const auto& p : predictions) ++counts[p.quadrant - 'A'];
    s += fmt::format("## Predictions\n\n{} molecules: A {} / B {} / C {} / D {}\n\n",
                     predictions.size(), counts[0], counts[1], counts[2], counts[3]);
    s += "| rank | molecule | P(capacity) | P(rate) | quadrant |\n|---|---|---|---|---|\n";
    for (const auto& p : ranked(predictions)) {
      if (p.rank > 20) break;
      s += fmt::format("| {} | {} | {:.2f} | {:.2f} | {} |\n", p.rank,
                       p.name.empty() ? p.key : p.name, p.p_capacity, p.p_rate, p.quadrant);
    }
  }
  return s;
}

}  // namespace amine::pipeline
