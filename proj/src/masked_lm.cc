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

#include "textbeam/masked_lm.h"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "io_util.h"
#include "textbeam/errors.h"

namespace textbeam {

using nlohmann::json;

TableMaskedLm::TableMaskedLm(
    const std::unordered_map<std::string, std::vector<std::string>>& table) {
  for (const auto& [word, proposals] : table) {
    table_[AsciiLower(word)] = proposals;
  }
}

TableMaskedLm TableMaskedLm::Load(const std::string& path) {
  std::unordered_map<std::string, std::vector<std::string>> table;
  std::size_t line_no = 0;
  for (const std::string& raw : internal::ReadLines(path)) {
    ++line_no;
    if (internal::TrimAscii(raw).empty() || raw.front() == '#') continue;
    std::size_t tab = raw.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError("expected word<TAB>proposals at " + path + ":" +
                        std::to_string(line_no));
    }
    std::vector<std::string> proposals;
    for (const std::string& p : internal::Split(raw.substr(tab + 1), ',')) {
      std::string_view trimmed = internal::TrimAscii(p);
      if (!trimmed.empty()) proposals.emplace_back(trimmed);
    }
    table[std::string(internal::TrimAscii(raw.substr(0, tab)))] =
        std::move(proposals);
  }
  return TableMaskedLm(table);
}

std::vector<ScoredWord> TableMaskedLm::Propose(const Text& text,
                                               std::size_t mask_index,
                                               std::size_t top_n) {
  std::vector<ScoredWord> out;
  auto it = table_.find(AsciiLower(text.tokens.at(mask_index)));
  if (it == table_.end()) return out;
  const std::size_t take = std::min(top_n, it->second.size());
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({it->second[i], 1.0 / static_cast<double>(i + 1)});
  }
  return out;
}

std::vector<ScoredWord> ExternalMaskedLm::Propose(const Text& text,
                                                  std::size_t mask_index,
                                                  std::size_t top_n) {
  std::lock_guard<std::mutex> lock(mu_);
  const long long id = next_id_++;
  json request = {{"id", id},
                  {"tokens", text.tokens},
                  {"mask_index", mask_index},
                  {"top_n", top_n}};
  const std::string line = channel_.Exchange(request.dump());
  json response;
  try {
    response = json::parse(line);
  } catch (const json::exception& e) {
    throw ProtocolError("malformed provider response: " +
                        std::string(e.what()));
  }
  if (!response.is_object() || !response.contains("id") ||
      !response["id"].is_number_integer() || !response.contains("words") ||
      !response["words"].is_array() || !response.contains("scores") ||
      !response["scores"].is_array()) {
    throw ProtocolError("provider response missing id/words/scores: " + line);
  }
  if (response["id"].get<long long>() != id) {
    throw ProtocolError("provider response id " + response["id"].dump() +
                        " does not match request id " + std::to_string(id));
  }
  const json& words = response["words"];
  const json& scores = response["scores"];
  if (words.size() != scores.size()) {
    throw ProtocolError("provider returned mismatched words/scores lengths");
  }
  std::vector<ScoredWord> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!words[i].is_string() || !scores[i].is_number()) {
      throw ProtocolError("provider proposal has the wrong type");
    }
    out.push_back({words[i].get<std::string>(), scores[i].get<double>()});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ScoredWord& a, const ScoredWord& b) {
                     return a.score > b.score;
                   });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

std::vector<std::string> MlmCandidates(MaskedLmProvider& provider,
                                       const Text& text, std::size_t position,
                                       std::size_t n) {
  if (position >= text.size()) {
    throw std::out_of_range("mask position out of range");
  }
  if (n == 0) return {};
  const std::string& original = text.tokens[position];
  std::vector<std::string> out;
  for (ScoredWord& proposal : provider.Propose(text, position, n + 1)) {
    if (EqualsIgnoreCase(proposal.word, original)) continue;
    out.push_back(std::move(proposal.word));
    if (out.size() == n) break;
  }
  return out;
}

}  // namespace textbeam
