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

#include "textbeam/eval.h"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "io_util.h"
#include "textbeam/errors.h"

namespace textbeam {

using nlohmann::json;
using nlohmann::ordered_json;

Dataset Dataset::Load(const std::string& path, const LabelSet& labels) {
  Dataset dataset;
  dataset.labels = labels;
  std::size_t line_no = 0;
  for (const std::string& line : internal::ReadLines(path)) {
    ++line_no;
    if (internal::TrimAscii(line).empty()) continue;
    const std::string context = path + ":" + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError("malformed dataset record at " + context + ": " +
                        e.what());
    }
    if (!record.is_object() || !record.contains("text") ||
        !record["text"].is_string() || !record.contains("label") ||
        !record["label"].is_number_integer()) {
      throw ConfigError("dataset record needs text and integer label at " +
                        context);
    }
    const long long label = record["label"].get<long long>();
    if (label < 0 || static_cast<std::size_t>(label) >= labels.size()) {
      throw ConfigError("label " + std::to_string(label) + " out of range at " +
                        context);
    }
    dataset.examples.push_back(
        {record["text"].get<std::string>(), static_cast<std::size_t>(label)});
  }
  if (dataset.examples.empty()) throw ConfigError("empty dataset: " + path);
  return dataset;
}

MetricsReport FoldMetrics(std::span<const AttackResult> results) {
  MetricsReport report;
  report.total = results.size();
  double wsr_sum = 0.0;
  double sim_sum = 0.0;
  double query_sum = 0.0;
  for (const AttackResult& r : results) {
    switch (r.status) {
      case AttackStatus::kSkipped:
        ++report.skipped;
        continue;
      case AttackStatus::kErrored:
        ++report.errored;
        continue;
      case AttackStatus::kSuccess:
        ++report.successes;
        wsr_sum += r.wsr;
        sim_sum += r.similarity;
        break;
      case AttackStatus::kFailure:
        break;
    }
    ++report.attacked;
    query_sum += static_cast<double>(r.queries);
  }
  if (report.attacked > 0) {
    report.asr = static_cast<double>(report.successes) /
                 static_cast<double>(report.attacked);
    report.mean_queries = query_sum / static_cast<double>(report.attacked);
  }
  if (report.successes > 0) {
    report.mean_wsr = wsr_sum / static_cast<double>(report.successes);
    report.mean_sim = sim_sum / static_cast<double>(report.successes);
  }
  return report;
}

std::string FormatSummary(const MetricsReport& report) {
  std::ostringstream out;
  auto line = [&](const char* name, const std::string& value) {
    out << std::left << std::setw(14) << (std::string(name) + ":") << value
        << "\n";
  };
  auto count = [](std::size_t n) { return std::to_string(n); };
  auto real = [](std::optional<double> v) {
    if (!v) return std::string("n/a");
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", *v);
    return std::string(buffer);
  };
  line("examples", count(report.total));
  line("attacked", count(report.attacked));
  line("skipped", count(report.skipped));
  line("errored", count(report.errored));
  line("successes", count(report.successes));
  line("asr", real(report.asr));
  line("wsr", real(report.mean_wsr));
  line("sim", real(report.mean_sim));
  line("query",
       real(report.attacked > 0 ? std::optional<double>(report.mean_queries)
                                : std::nullopt));
  line("averaging", "wsr/sim over successes, query over attacked");
  return out.str();
}

Evaluation Evaluate(const Dataset& dataset, VictimModel& model,
                    const AttackProviders& providers,
                    const AttackConfig& config, std::size_t workers) {
  config.Validate();
  Evaluation eval;
  eval.results.resize(dataset.examples.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= dataset.examples.size()) return;
      const LabeledExample& example = dataset.examples[i];
      const Text text = Tokenize(example.text);
      try {
        eval.results[i] =
            BeamAttack(text, example.label, model, providers, config);
      } catch (const TransportError& e) {
        AttackResult errored;
        errored.status = AttackStatus::kErrored;
        errored.original = Text{text.tokens, std::nullopt};
        errored.gold_label = example.label;
        errored.error = e.what();
        eval.results[i] = std::move(errored);
      }
    }
  };
  const std::size_t threads =
      std::max<std::size_t>(1, std::min(workers, dataset.examples.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  eval.report = FoldMetrics(eval.results);
  return eval;
}

double TransferEvaluate(std::span<const AttackResult> results,
                        VictimModel& other) {
  std::vector<Text> texts;
  std::vector<std::size_t> gold;
  for (const AttackResult& r : results) {
    if (r.status != AttackStatus::kSuccess || !r.adversarial) continue;
    texts.push_back(*r.adversarial);
    gold.push_back(r.gold_label);
  }
  if (texts.empty()) {
    throw std::invalid_argument(
        "transfer evaluation needs at least one successful attack");
  }
  const std::vector<ProbVector> probs = other.PredictProba(texts);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (Argmax(probs[i]) == gold[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(texts.size());
}

std::size_t ExportAdvTrain(std::span<const AttackResult> results,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::size_t written = 0;
  for (const AttackResult& r : results) {
    if (r.status != AttackStatus::kSuccess || !r.adversarial) continue;
    ordered_json record;
    record["text"] = Detokenize(*r.adversarial);
    record["label"] = r.gold_label;
    out << record.dump() << "\n";
    ++written;
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
  return written;
}

ordered_json ResultToJson(const AttackResult& r, std::size_t index) {
  ordered_json j;
  j["index"] = index;
  j["status"] = std::string(AttackStatusName(r.status));
  j["original"] = Detokenize(r.original);
  j["adversarial"] = r.adversarial ? ordered_json(Detokenize(*r.adversarial))
                                   : ordered_json(nullptr);
  j["gold_label"] = r.gold_label;
  j["original_pred"] = r.original_pred;
  j["adv_pred"] =
      r.adv_pred ? ordered_json(*r.adv_pred) : ordered_json(nullptr);
  ordered_json subs = ordered_json::array();
  for (const Substitution& s : r.substitutions) {
    subs.push_back(
        ordered_json::array({s.position, s.original, s.replacement}));
  }
  j["substitutions"] = std::move(subs);
  j["wsr"] = r.wsr;
  j["similarity"] = r.similarity;
  j["queries"] = r.queries;
  j["iterations"] = r.iterations;
  if (r.status == AttackStatus::kErrored) j["error"] = r.error;
  return j;
}

AttackResult ResultFromJson(const json& j) {
  try {
    AttackResult r;
    std::optional<AttackStatus> status =
        ParseAttackStatus(j.at("status").get<std::string>());
    if (!status) throw ConfigError("unknown status " + j.at("status").dump());
    r.status = *status;
    r.original = Tokenize(j.at("original").get<std::string>());
    r.original.raw.reset();
    r.gold_label = j.at("gold_label").get<std::size_t>();
    r.original_pred = j.at("original_pred").get<std::size_t>();
    if (!j.at("adv_pred").is_null()) {
      r.adv_pred = j.at("adv_pred").get<std::size_t>();
    }
    for (const json& s : j.at("substitutions")) {
      r.substitutions.push_back({s.at(0).get<std::size_t>(),
                                 s.at(1).get<std::string>(),
                                 s.at(2).get<std::string>()});
    }
    if (!j.at("adversarial").is_null()) {
      Text adversarial = ApplySubstitutions(r.original, r.substitutions);
      if (Tokenize(j.at("adversarial").get<std::string>()).tokens !=
          adversarial.tokens) {
        throw ConfigError("adversarial text disagrees with its substitutions");
      }
      r.adversarial = std::move(adversarial);
    }
    r.wsr = j.at("wsr").get<double>();
    r.similarity = j.at("similarity").get<double>();
    r.queries = j.at("queries").get<std::size_t>();
    r.iterations = j.at("iterations").get<std::size_t>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed result record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("inconsistent result record: ") + e.what());
  }
}

void WriteResults(std::span<const AttackResult> results,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << ResultToJson(results[i], i).dump() << "\n";
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<AttackResult> ReadResults(const std::string& path) {
  std::vector<AttackResult> results;
  std::size_t line_no = 0;
  for (const std::string& line : internal::ReadLines(path)) {
    ++line_no;
    if (internal::TrimAscii(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError("malformed results line " + path + ":" +
                        std::to_string(line_no) + ": " + e.what());
    }
    results.push_back(ResultFromJson(record));
  }
  return results;
}

}  // namespace textbeam
