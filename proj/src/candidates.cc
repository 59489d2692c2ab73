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

#include "textbeam/candidates.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "textbeam/simd/kernels.h"

namespace textbeam {

std::string_view SpaceModeName(SpaceMode mode) {
  switch (mode) {
    case SpaceMode::kEmbedding:
      return "embedding";
    case SpaceMode::kMlm:
      return "mlm";
    case SpaceMode::kMixed:
      return "mixed";
  }
  return "mixed";
}

std::optional<SpaceMode> ParseSpaceMode(std::string_view name) {
  if (name == "embedding") return SpaceMode::kEmbedding;
  if (name == "mlm") return SpaceMode::kMlm;
  if (name == "mixed") return SpaceMode::kMixed;
  return std::nullopt;
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kEmbedding:
      return "embedding";
    case Provenance::kMlm:
      return "mlm";
    case Provenance::kBoth:
      return "both";
  }
  return "both";
}

CandidateSet BuildCandidateSet(const Text& text, std::size_t position,
                               const CandidateSources& sources,
                               const CandidateOptions& options) {
  if (position >= text.size()) {
    throw std::out_of_range("candidate position out of range");
  }
  if (!(options.sim_threshold >= -1.0 && options.sim_threshold < 1.0)) {
    throw std::invalid_argument("similarity threshold must lie in [-1, 1)");
  }
  const bool use_embedding = options.mode != SpaceMode::kMlm;
  const bool use_mlm = options.mode != SpaceMode::kEmbedding;
  if ((use_embedding && sources.embedding == nullptr) ||
      (use_mlm && sources.mlm == nullptr) || sources.tagger == nullptr ||
      sources.encoder == nullptr) {
    throw std::invalid_argument("candidate sources incomplete for mode " +
                                std::string(SpaceModeName(options.mode)));
  }

  const std::string& original = text.tokens[position];
  // Lowercased word -> (cased word, provenance), ordered for determinism.
  std::map<std::string, Candidate> merged;
  auto add = [&](const std::string& proposal, Provenance source) {
    if (EqualsIgnoreCase(proposal, original)) return;
    auto [it, inserted] = merged.try_emplace(
        AsciiLower(proposal),
        Candidate{MatchCapitalization(proposal, original), source, 0.0});
    if (!inserted && it->second.provenance != source) {
      it->second.provenance = Provenance::kBoth;
    }
  };
  if (use_embedding) {
    for (const std::string& w :
         sources.embedding->Neighbors(original, options.top_n)) {
      add(w, Provenance::kEmbedding);
    }
  }
  if (use_mlm) {
    for (const std::string& w :
         MlmCandidates(*sources.mlm, text, position, options.top_n)) {
      add(w, Provenance::kMlm);
    }
  }

  const PosTag original_tag = sources.tagger->Tag(text, position);
  const std::vector<double> original_code = sources.encoder->Encode(text);

  CandidateSet set;
  set.position = position;
  for (auto& [key, candidate] : merged) {
    if (!IsCleanWordToken(candidate.word) ||
        IsPunctuationToken(candidate.word)) {
      continue;
    }
    Text variant = Substitute(text, position, candidate.word);
    if (sources.tagger->Tag(variant, position) != original_tag) continue;
    candidate.similarity =
        simd::Cosine(original_code, sources.encoder->Encode(variant));
    if (!(candidate.similarity > options.sim_threshold)) continue;
    set.candidates.push_back(std::move(candidate));
  }
  std::sort(set.candidates.begin(), set.candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
              }
              return a.word < b.word;
            });
  return set;
}

}  // namespace textbeam
