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

#ifndef TEXTBEAM_POS_TAGGER_H_
#define TEXTBEAM_POS_TAGGER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "textbeam/text.h"

namespace textbeam {

// Coarse universal tag set.
enum class PosTag {
  kNoun,
  kVerb,
  kAdj,
  kAdv,
  kPron,
  kDet,
  kAdp,
  kNum,
  kConj,
  kPrt,
  kPunct,
  kX,
};

std::string_view PosTagName(PosTag tag);
std::optional<PosTag> ParsePosTag(std::string_view name);

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  // Tag of text.tokens[position] in context. Must be total and deterministic.
  virtual PosTag Tag(const Text& text, std::size_t position) const = 0;
};

// Context-free word -> tag lookup (case-insensitive). Punctuation tokens tag
// as PUNCT; anything else not in the lexicon tags as X.
class LexiconPosTagger : public PosTagger {
 public:
  LexiconPosTagger() = default;
  explicit LexiconPosTagger(std::unordered_map<std::string, PosTag> lexicon);

  // One "word<TAB>TAG" record per line.
  static LexiconPosTagger Load(const std::string& path);

  PosTag Tag(const Text& text, std::size_t position) const override;

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

// Gives every token the same tag, which disables POS filtering.
class UniformPosTagger : public PosTagger {
 public:
  explicit UniformPosTagger(PosTag tag = PosTag::kX) : tag_(tag) {}
  PosTag Tag(const Text&, std::size_t) const override { return tag_; }

 private:
  PosTag tag_;
};

}  // namespace textbeam

#endif  // TEXTBEAM_POS_TAGGER_H_
