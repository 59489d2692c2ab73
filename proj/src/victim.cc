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

#include "textbeam/victim.h"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "io_util.h"
#include "textbeam/errors.h"

namespace textbeam {

using nlohmann::json;

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw ConfigError("a label set needs at least two labels");
  }
  std::set<std::string> seen;
  for (const std::string& name : names_) {
    if (name.empty() || !seen.insert(name).second) {
      throw ConfigError("label names must be unique and non-empty: '" + name +
                        "'");
    }
  }
}

LabelSet LabelSet::Parse(std::string_view comma_separated) {
  std::vector<std::string> names;
  for (const std::string& part : internal::Split(comma_separated, ',')) {
    names.emplace_back(internal::TrimAscii(part));
  }
  return LabelSet(std::move(names));
}

std::size_t Argmax(const ProbVector& probs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

void CheckProbVector(const ProbVector& probs, std::size_t num_classes) {
  if (probs.size() != num_classes) {
    throw ProtocolError("expected " + std::to_string(num_classes) +
                        " probabilities, got " + std::to_string(probs.size()));
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ProtocolError("probability out of [0,1]: " + std::to_string(p));
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kProbSumTolerance) {
    throw ProtocolError("probabilities sum to " + std::to_string(sum) +
                        ", not 1");
  }
}

ProbVector VictimModel::PredictOne(const Text& text) {
  return PredictProba(std::span<const Text>(&text, 1)).front();
}

LexiconModel LexiconModel::Binary(
    const std::unordered_map<std::string, double>& weights, double bias) {
  LexiconModel model;
  model.binary_ = true;
  model.num_classes_ = 2;
  for (const auto& [word, w] : weights) model.weights_[AsciiLower(word)] = {w};
  model.bias_ = {bias};
  return model;
}

LexiconModel LexiconModel::Multiclass(
    const std::unordered_map<std::string, std::vector<double>>& weights,
    std::vector<double> bias) {
  if (bias.size() < 2) {
    throw ConfigError("multiclass lexicon needs at least two classes");
  }
  LexiconModel model;
  model.binary_ = false;
  model.num_classes_ = bias.size();
  for (const auto& [word, w] : weights) {
    if (w.size() != bias.size()) {
      throw ConfigError("lexicon weight row for '" + word +
                        "' has the wrong class count");
    }
    model.weights_[AsciiLower(word)] = w;
  }
  model.bias_ = std::move(bias);
  return model;
}

LexiconModel LexiconModel::Load(const std::string& path) {
  std::unordered_map<std::string, std::vector<double>> rows;
  std::vector<double> bias;
  std::size_t width = 0;
  std::size_t line_no = 0;
  for (const std::string& raw : internal::ReadLines(path)) {
    ++line_no;
    std::string_view line = internal::TrimAscii(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields = internal::SplitFields(line);
    const std::string context = path + ":" + std::to_string(line_no);
    if (fields.size() < 2)
      throw ConfigError("malformed lexicon line " + context);
    std::vector<double> values;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      values.push_back(internal::ParseDouble(fields[i], context));
    }
    if (width == 0) width = values.size();
    if (values.size() != width) {
      throw ConfigError("inconsistent weight count at " + context);
    }
    if (fields[0] == "__bias__") {
      bias = std::move(values);
    } else {
      rows[fields[0]] = std::move(values);
    }
  }
  if (width == 0) throw ConfigError("empty lexicon file: " + path);
  if (bias.empty()) bias.assign(width, 0.0);
  if (width == 1) {
    std::unordered_map<std::string, double> scalar;
    for (const auto& [word, w] : rows) scalar[word] = w[0];
    return Binary(scalar, bias[0]);
  }
  return Multiclass(rows, std::move(bias));
}

ProbVector LexiconModel::Score(const Text& text) const {
  std::vector<double> scores = bias_;
  for (const std::string& token : text.tokens) {
    auto it = weights_.find(AsciiLower(token));
    if (it == weights_.end()) continue;
    for (std::size_t k = 0; k < scores.size(); ++k) scores[k] += it->second[k];
  }
  if (binary_) {
    const double p = 1.0 / (1.0 + std::exp(-scores[0]));
    return {p, 1.0 - p};
  }
  const double peak = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp(s - peak);
    total += s;
  }
  for (double& s : scores) s /= total;
  return scores;
}

std::vector<ProbVector> LexiconModel::PredictProba(
    std::span<const Text> texts) {
  std::vector<ProbVector> out;
  out.reserve(texts.size());
  for (const Text& text : texts) out.push_back(Score(text));
  return out;
}

std::vector<ProbVector> CountingVictim::PredictProba(
    std::span<const Text> texts) {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Text> misses;
  std::set<std::vector<std::string>> pending;
  for (const Text& text : texts) {
    if (cache_.count(text.tokens) == 0 && pending.insert(text.tokens).second) {
      misses.push_back(Text{text.tokens, std::nullopt});
    }
  }
  if (!misses.empty()) {
    std::vector<ProbVector> scored = inner_.PredictProba(misses);
    if (scored.size() != misses.size()) {
      throw ProtocolError("victim returned " + std::to_string(scored.size()) +
                          " results for " + std::to_string(misses.size()) +
                          " texts");
    }
    for (std::size_t i = 0; i < misses.size(); ++i) {
      cache_.emplace(std::move(misses[i].tokens), std::move(scored[i]));
    }
    queries_ += misses.size();
  }
  std::vector<ProbVector> out;
  out.reserve(texts.size());
  for (const Text& text : texts) out.push_back(cache_.at(text.tokens));
  return out;
}

ExternalVictim::ExternalVictim(const std::string& command, LabelSet labels)
    : labels_(std::move(labels)), channel_(command) {}

std::vector<ProbVector> ExternalVictim::PredictProba(
    std::span<const Text> texts) {
  std::lock_guard<std::mutex> lock(mu_);
  const long long id = next_id_++;
  json request = {{"id", id}, {"texts", json::array()}};
  for (const Text& text : texts) request["texts"].push_back(Detokenize(text));
  const std::string line = channel_.Exchange(request.dump());

  json response;
  try {
    response = json::parse(line);
  } catch (const json::exception& e) {
    throw ProtocolError("malformed victim response: " + std::string(e.what()));
  }
  if (!response.is_object() || !response.contains("id") ||
      !response["id"].is_number_integer() || !response.contains("probs") ||
      !response["probs"].is_array()) {
    throw ProtocolError("victim response missing id/probs: " + line);
  }
  if (response["id"].get<long long>() != id) {
    throw ProtocolError("victim response id " + response["id"].dump() +
                        " does not match request id " + std::to_string(id));
  }
  const json& probs = response["probs"];
  if (probs.size() != texts.size()) {
    throw ProtocolError("victim returned " + std::to_string(probs.size()) +
                        " probability rows for " +
                        std::to_string(texts.size()) + " texts");
  }
  std::vector<ProbVector> out;
  out.reserve(texts.size());
  for (const json& row : probs) {
    if (!row.is_array()) throw ProtocolError("probability row is not a list");
    ProbVector pv;
    for (const json& p : row) {
      if (!p.is_number()) throw ProtocolError("non-numeric probability");
      pv.push_back(p.get<double>());
    }
    CheckProbVector(pv, labels_.size());
    out.push_back(std::move(pv));
  }
  return out;
}

std::unique_ptr<VictimModel> MakeVictim(const std::string& spec,
                                        const LabelSet& labels) {
  constexpr std::string_view kLexicon = "lexicon:";
  constexpr std::string_view kExternal = "external:";
  if (spec.rfind(kExternal, 0) == 0) {
    return std::make_unique<ExternalVictim>(spec.substr(kExternal.size()),
                                            labels);
  }
  std::string path =
      spec.rfind(kLexicon, 0) == 0 ? spec.substr(kLexicon.size()) : spec;
  auto model = std::make_unique<LexiconModel>(LexiconModel::Load(path));
  if (model->num_classes() != labels.size()) {
    throw ConfigError("lexicon '" + path + "' scores " +
                      std::to_string(model->num_classes()) + " classes but " +
                      std::to_string(labels.size()) + " labels are configured");
  }
  return model;
}

}  // namespace textbeam
