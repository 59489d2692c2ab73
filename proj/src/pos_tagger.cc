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

#include "textbeam/pos_tagger.h"

#include <array>
#include <utility>

#include "io_util.h"
#include "textbeam/errors.h"

namespace textbeam {
namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 12> kTagNames{{
    {PosTag::kNoun, "NOUN"},
    {PosTag::kVerb, "VERB"},
    {PosTag::kAdj, "ADJ"},
    {PosTag::kAdv, "ADV"},
    {PosTag::kPron, "PRON"},
    {PosTag::kDet, "DET"},
    {PosTag::kAdp, "ADP"},
    {PosTag::kNum, "NUM"},
    {PosTag::kConj, "CONJ"},
    {PosTag::kPrt, "PRT"},
    {PosTag::kPunct, "PUNCT"},
    {PosTag::kX, "X"},
}};

}  // namespace

std::string_view PosTagName(PosTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "X";
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  for (const auto& [t, tag_name] : kTagNames) {
    if (tag_name == name) return t;
  }
  return std::nullopt;
}

LexiconPosTagger::LexiconPosTagger(
    std::unordered_map<std::string, PosTag> lexicon) {
  for (auto& [word, tag] : lexicon) lexicon_[AsciiLower(word)] = tag;
}

LexiconPosTagger LexiconPosTagger::Load(const std::string& path) {
  std::unordered_map<std::string, PosTag> lexicon;
  std::size_t line_no = 0;
  for (const std::string& raw : internal::ReadLines(path)) {
    ++line_no;
    std::string_view line = internal::TrimAscii(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string context = path + ":" + std::to_string(line_no);
    std::vector<std::string> fields = internal::Split(line, '\t');
    if (fields.size() != 2) {
      throw ConfigError("expected word<TAB>TAG at " + context);
    }
    std::optional<PosTag> tag = ParsePosTag(internal::TrimAscii(fields[1]));
    if (!tag)
      throw ConfigError("unknown POS tag '" + fields[1] + "' at " + context);
    lexicon[std::string(internal::TrimAscii(fields[0]))] = *tag;
  }
  return LexiconPosTagger(std::move(lexicon));
}

PosTag LexiconPosTagger::Tag(const Text& text, std::size_t position) const {
  const std::string& token = text.tokens.at(position);
  if (IsPunctuationToken(token)) return PosTag::kPunct;
  auto it = lexicon_.find(AsciiLower(token));
  return it == lexicon_.end() ? PosTag::kX : it->second;
}

}  // namespace textbeam
