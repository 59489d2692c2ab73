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

#include "textbeam/importance.h"

#include <algorithm>

#include "io_util.h"

namespace textbeam {
namespace {

constexpr const char* kNltkEnglish[] = {
    "i",        "me",        "my",        "myself",   "we",         "our",
    "ours",     "ourselves", "you",       "you're",   "you've",     "you'll",
    "you'd",    "your",      "yours",     "yourself", "yourselves", "he",
    "him",      "his",       "himself",   "she",      "she's",      "her",
    "hers",     "herself",   "it",        "it's",     "its",        "itself",
    "they",     "them",      "their",     "theirs",   "themselves", "what",
    "which",    "who",       "whom",      "this",     "that",       "that'll",
    "these",    "those",     "am",        "is",       "are",        "was",
    "were",     "be",        "been",      "being",    "have",       "has",
    "had",      "having",    "do",        "does",     "did",        "doing",
    "a",        "an",        "the",       "and",      "but",        "if",
    "or",       "because",   "as",        "until",    "while",      "of",
    "at",       "by",        "for",       "with",     "about",      "against",
    "between",  "into",      "through",   "during",   "before",     "after",
    "above",    "below",     "to",        "from",     "up",         "down",
    "in",       "out",       "on",        "off",      "over",       "under",
    "again",    "further",   "then",      "once",     "here",       "there",
    "when",     "where",     "why",       "how",      "all",        "any",
    "both",     "each",      "few",       "more",     "most",       "other",
    "some",     "such",      "no",        "nor",      "not",        "only",
    "own",      "same",      "so",        "than",     "too",        "very",
    "s",        "t",         "can",       "will",     "just",       "don",
    "don't",    "should",    "should've", "now",      "d",          "ll",
    "m",        "o",         "re",        "ve",       "y",          "ain",
    "aren",     "aren't",    "couldn",    "couldn't", "didn",       "didn't",
    "doesn",    "doesn't",   "hadn",      "hadn't",   "hasn",       "hasn't",
    "haven",    "haven't",   "isn",       "isn't",    "ma",         "mightn",
    "mightn't", "mustn",     "mustn't",   "needn",    "needn't",    "shan",
    "shan't",   "shouldn",   "shouldn't", "wasn",     "wasn't",     "weren",
    "weren't",  "won",       "won't",     "wouldn",   "wouldn't",
};

}  // namespace

StopwordList::StopwordList(const std::vector<std::string>& words) {
  for (const std::string& w : words) words_.insert(AsciiLower(w));
}

StopwordList StopwordList::Load(const std::string& path) {
  std::vector<std::string> words;
  for (const std::string& raw : internal::ReadLines(path)) {
    std::string_view line = internal::TrimAscii(raw);
    if (line.empty() || line.front() == '#') continue;
    words.emplace_back(line);
  }
  return StopwordList(words);
}

const StopwordList& StopwordList::DefaultEnglish() {
  static const StopwordList kList(std::vector<std::string>(
      std::begin(kNltkEnglish), std::end(kNltkEnglish)));
  return kList;
}

bool StopwordList::Contains(std::string_view word) const {
  return words_.count(AsciiLower(word)) > 0;
}

std::vector<ImportanceScore> ComputeImportance(const Text& text,
                                               VictimModel& model,
                                               std::size_t y_true,
                                               std::string_view oov_token) {
  const std::size_t n = text.size();
  std::vector<Text> batch;
  batch.reserve(n + 1);
  batch.push_back(Text{text.tokens, std::nullopt});
  for (std::size_t i = 0; i < n; ++i) {
    batch.push_back(Substitute(text, i, oov_token));
  }
  const std::vector<ProbVector> probs = model.PredictProba(batch);
  const ProbVector& original = probs[0];

  std::vector<ImportanceScore> scores;
  scores.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ProbVector& replaced = probs[i + 1];
    ImportanceScore s;
    s.position = i;
    s.score = original[y_true] - replaced[y_true];
    const std::size_t other = Argmax(replaced);
    if (other != y_true) {
      s.flipped = true;
      s.score += replaced[other] - original[other];
    }
    scores.push_back(s);
  }
  return scores;
}

std::vector<std::size_t> RankPositions(
    const std::vector<ImportanceScore>& scores, const Text& text,
    const StopwordList& stopwords) {
  std::vector<ImportanceScore> kept;
  for (const ImportanceScore& s : scores) {
    const std::string& token = text.tokens.at(s.position);
    if (IsPunctuationToken(token) || stopwords.Contains(token)) continue;
    kept.push_back(s);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const ImportanceScore& a, const ImportanceScore& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.position < b.position;
                   });
  std::vector<std::size_t> order;
  order.reserve(kept.size());
  for (const ImportanceScore& s : kept) order.push_back(s.position);
  return order;
}

}  // namespace textbeam
