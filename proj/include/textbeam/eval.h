// Copyright 2026 The textbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEXTBEAM_EVAL_H_
#define TEXTBEAM_EVAL_H_

#include <cstddef>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "textbeam/search.h"
#include "textbeam/victim.h"

namespace textbeam {

struct LabeledExample {
  std::string text;
  std::size_t label = 0;
};

struct Dataset {
  std::vector<LabeledExample> examples;
  LabelSet labels;

  // Newline-delimited {"text": <string>, "label": <int>} records. Throws
  // ConfigError on malformed records, out-of-range labels or an empty file.
  static Dataset Load(const std::string& path, const LabelSet& labels);
};

// attacked = successes + failures. WSR and similarity are averaged over
// successes only; queries over attacked examples only.
struct MetricsReport {
  std::size_t total = 0;
  std::size_t attacked = 0;
  std::size_t skipped = 0;
  std::size_t successes = 0;
  std::size_t errored = 0;
  std::optional<double> asr;
  std::optional<double> mean_wsr;
  std::optional<double> mean_sim;
  double mean_queries = 0.0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Pure fold over per-example results in order.
MetricsReport FoldMetrics(std::span<const AttackResult> results);

// Aligned "metric: value" lines.
std::string FormatSummary(const MetricsReport& report);

struct Evaluation {
  MetricsReport report;
  // One per dataset example, in dataset order.
  std::vector<AttackResult> results;
};

// Attacks every example. Transport failures mark that example errored (with
// the diagnostic in AttackResult::error) and leave the others running.
// Results are ordered by dataset index for any worker count.
Evaluation Evaluate(const Dataset& dataset, VictimModel& model,
                    const AttackProviders& providers,
                    const AttackConfig& config, std::size_t workers = 1);

// Accuracy of `other` on the successful adversarial texts against their gold
// labels. Throws std::invalid_argument when there are no successes.
double TransferEvaluate(std::span<const AttackResult> results,
                        VictimModel& other);

// Writes one {"text": <adversarial>, "label": <gold>} line per success and
// returns the count. Throws std::runtime_error naming the path on I/O
// failure.
std::size_t ExportAdvTrain(std::span<const AttackResult> results,
                           const std::string& path);

// Results file: one JSON object per line.
nlohmann::ordered_json ResultToJson(const AttackResult& result,
                                    std::size_t index);
AttackResult ResultFromJson(const nlohmann::json& record);

void WriteResults(std::span<const AttackResult> results,
                  const std::string& path);
std::vector<AttackResult> ReadResults(const std::string& path);

}  // namespace textbeam

#endif  // TEXTBEAM_EVAL_H_
