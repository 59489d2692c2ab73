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

#ifndef TEXTBEAM_RUN_CONFIG_H_
#define TEXTBEAM_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textbeam/embedding_space.h"
#include "textbeam/eval.h"
#include "textbeam/importance.h"
#include "textbeam/masked_lm.h"
#include "textbeam/pos_tagger.h"
#include "textbeam/search.h"
#include "textbeam/sentence_encoder.h"

namespace textbeam {

// Everything one `attack` run needs. Loaded from a flat key=value file, then
// overridden key by key from command-line flags.
//
// Keys: beam_size (integer or "unbounded"), top_n, sim_threshold,
// wsr_threshold, oov_token, space_mode, require_final_sim, dataset,
// embeddings, stopwords, pos_lexicon, mlm_table, mlm_command, victim, labels,
// out, workers, seed, sample.
struct RunConfig {
  AttackConfig attack;
  std::string dataset;
  std::string embeddings;
  // Empty: the built-in English list.
  std::string stopwords;
  // Empty: every token tags as X (POS filter inactive).
  std::string pos_lexicon;
  std::string mlm_table;
  std::string mlm_command;
  // "lexicon:PATH" or "external:COMMAND".
  std::string victim;
  std::string labels = "pos,neg";
  std::string out = "results.jsonl";
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  // Attack a seeded random subset of this many examples; 0 = all.
  std::size_t sample = 0;

  // Relative paths in the file resolve against the file's directory. Unknown
  // keys and malformed values throw ConfigError; a missing file throws
  // MissingFileError.
  static RunConfig LoadFile(const std::string& path);

  // Applies one key. `base_dir` resolves relative paths ("" = as given).
  void Set(std::string_view key, std::string_view value,
           const std::string& base_dir = "");

  // Validates values and checks that every referenced file exists.
  void Check() const;
};

// Owns the providers a RunConfig names.
class LoadedProviders {
 public:
  explicit LoadedProviders(const RunConfig& config);

  AttackProviders view();

 private:
  std::optional<EmbeddingSpace> embedding_;
  std::unique_ptr<MaskedLmProvider> mlm_;
  std::unique_ptr<PosTagger> tagger_;
  HashedBowEncoder encoder_;
  StopwordList stopwords_;
};

// The examples a run attacks: all of them, or `sample` drawn with `seed`,
// kept in dataset order.
Dataset SelectExamples(const Dataset& dataset, std::size_t sample,
                       std::uint64_t seed);

}  // namespace textbeam

#endif  // TEXTBEAM_RUN_CONFIG_H_
