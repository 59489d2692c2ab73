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

#ifndef TEXTBEAM_CANDIDATES_H_
#define TEXTBEAM_CANDIDATES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textbeam/embedding_space.h"
#include "textbeam/masked_lm.h"
#include "textbeam/pos_tagger.h"
#include "textbeam/sentence_encoder.h"
#include "textbeam/text.h"

namespace textbeam {

// Which semantic spaces feed the candidate sets.
enum class SpaceMode { kEmbedding, kMlm, kMixed };

std::string_view SpaceModeName(SpaceMode mode);
std::optional<SpaceMode> ParseSpaceMode(std::string_view name);

enum class Provenance { kEmbedding, kMlm, kBoth };

std::string_view ProvenanceName(Provenance p);

struct Candidate {
  std::string word;
  Provenance provenance = Provenance::kEmbedding;
  // Similarity of the single-substitution variant to the original text.
  double similarity = 0.0;
};

// Filtered substitutes for one position, best similarity first.
struct CandidateSet {
  std::size_t position = 0;
  std::vector<Candidate> candidates;

  std::size_t size() const { return candidates.size(); }
  bool empty() const { return candidates.empty(); }
};

// Borrowed providers. `embedding` or `mlm` may be null when the space mode
// does not use them. MLM providers are non-const because external ones carry
// a channel.
struct CandidateSources {
  const EmbeddingSpace* embedding = nullptr;
  MaskedLmProvider* mlm = nullptr;
  const PosTagger* tagger = nullptr;
  const SentenceEncoder* encoder = nullptr;
};

struct CandidateOptions {
  // Proposals taken from each space.
  std::size_t top_n = 50;
  // Strict lower bound on single-substitution similarity; -1 keeps all.
  double sim_threshold = 0.5;
  SpaceMode mode = SpaceMode::kMixed;
};

// Builds C(x_i): the union of the top-n embedding neighbours and the top-n
// masked-LM proposals (deduplicated case-insensitively, original word
// removed, capitalization copied from the original token), minus words that
// are not single clean tokens, minus words whose POS tag in context differs
// from the original's, minus words whose substituted text has similarity
// <= sim_threshold to the original.
//
// Throws std::out_of_range for a bad position and std::invalid_argument when
// sim_threshold is outside [-1, 1) or a required source is missing.
CandidateSet BuildCandidateSet(const Text& text, std::size_t position,
                               const CandidateSources& sources,
                               const CandidateOptions& options);

}  // namespace textbeam

#endif  // TEXTBEAM_CANDIDATES_H_
