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

#ifndef TEXTBEAM_MASKED_LM_H_
#define TEXTBEAM_MASKED_LM_H_

#include <cstddef>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "textbeam/line_channel.h"
#include "textbeam/text.h"

namespace textbeam {

struct ScoredWord {
  std::string word;
  double score = 0.0;
};

// Source of contextual proposals for one masked position. The provider sees
// the unmasked tokens plus the index to mask. Results are sorted by score,
// best first.
class MaskedLmProvider {
 public:
  virtual ~MaskedLmProvider() = default;
  virtual std::vector<ScoredWord> Propose(const Text& text,
                                          std::size_t mask_index,
                                          std::size_t top_n) = 0;
};

// Deterministic stand-in: looks up the masked word (case-insensitive) in a
// table and returns the listed proposals in order, scored 1/(rank+1).
class TableMaskedLm : public MaskedLmProvider {
 public:
  TableMaskedLm() = default;
  explicit TableMaskedLm(
      const std::unordered_map<std::string, std::vector<std::string>>& table);

  // One "word<TAB>proposal1,proposal2,..." record per line.
  static TableMaskedLm Load(const std::string& path);

  std::vector<ScoredWord> Propose(const Text& text, std::size_t mask_index,
                                  std::size_t top_n) override;

 private:
  std::unordered_map<std::string, std::vector<std::string>> table_;
};

// Provider in a child process, speaking
//   request  {"id":<int>,"tokens":[...],"mask_index":<int>,"top_n":<int>}
//   response {"id":<int>,"words":[<string>,...],"scores":[<float>,...]}
// Calls are serialized.
class ExternalMaskedLm : public MaskedLmProvider {
 public:
  explicit ExternalMaskedLm(const std::string& command) : channel_(command) {}

  std::vector<ScoredWord> Propose(const Text& text, std::size_t mask_index,
                                  std::size_t top_n) override;

 private:
  std::mutex mu_;
  LineChannel channel_;
  long long next_id_ = 0;
};

// Top-n proposals for `position` with the original word removed
// (case-insensitive). Returns fewer than n when the provider runs out.
std::vector<std::string> MlmCandidates(MaskedLmProvider& provider,
                                       const Text& text, std::size_t position,
                                       std::size_t n);

}  // namespace textbeam

#endif  // TEXTBEAM_MASKED_LM_H_
