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

#ifndef TEXTBEAM_IMPORTANCE_H_
#define TEXTBEAM_IMPORTANCE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "textbeam/text.h"
#include "textbeam/victim.h"

namespace textbeam {

inline constexpr std::string_view kDefaultOovToken = "[oov]";

struct ImportanceScore {
  std::size_t position = 0;
  double score = 0.0;
  // The [oov] replacement changed the predicted label.
  bool flipped = false;

  friend bool operator==(const ImportanceScore&,
                         const ImportanceScore&) = default;
};

// Case-insensitive word set.
class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(const std::vector<std::string>& words);

  // One word per line; blank lines and '#' comments ignored.
  static StopwordList Load(const std::string& path);

  // The standard English list shipped with NLTK (179 words).
  static const StopwordList& DefaultEnglish();

  bool Contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Scores every position by replacing it with `oov_token`. The original text
// and all n variants go to the victim in a single batch. `y_true` must be the
// model's prediction on `text`.
//
// Unchanged label:  I = F_true(X) - F_true(X_oov)
// Changed label:    I = F_true(X) - F_true(X_oov)
//                       + F_other(X_oov) - F_other(X),  other = argmax(X_oov)
std::vector<ImportanceScore> ComputeImportance(
    const Text& text, VictimModel& model, std::size_t y_true,
    std::string_view oov_token = kDefaultOovToken);

// Attack order: drops stopword and punctuation positions, then sorts by score
// descending with ties to the smaller position.
std::vector<std::size_t> RankPositions(
    const std::vector<ImportanceScore>& scores, const Text& text,
    const StopwordList& stopwords);

}  // namespace textbeam

#endif  // TEXTBEAM_IMPORTANCE_H_
