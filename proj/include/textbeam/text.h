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

#ifndef TEXTBEAM_TEXT_H_
#define TEXTBEAM_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace textbeam {

// A tokenized sentence. `raw` is set only for texts produced by Tokenize().
struct Text {
  std::vector<std::string> tokens;
  std::optional<std::string> raw;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  // Equality is over the token sequence only.
  friend bool operator==(const Text& a, const Text& b) {
    return a.tokens == b.tokens;
  }
};

// One x_i -> c edit applied to a text.
struct Substitution {
  std::size_t position = 0;
  std::string original;
  std::string replacement;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

// Splits on ASCII whitespace, then peels leading and trailing ASCII
// punctuation off each chunk, one character per token. Interior punctuation
// ("don't", "well-made") stays inside the word. Case is preserved.
Text Tokenize(std::string_view raw);

// Joins tokens with single spaces; punctuation-only tokens attach to the
// preceding token without a space. Tokenize(Detokenize(Tokenize(s))) yields
// the tokens of Tokenize(s).
std::string Detokenize(const Text& text);

// Returns a copy of `text` with tokens[position] = word. Throws
// std::out_of_range for a bad position and std::invalid_argument for an empty
// or whitespace-containing word.
Text Substitute(const Text& text, std::size_t position, std::string_view word);

// Applies every substitution in order; each `original` must match.
Text ApplySubstitutions(const Text& text,
                        const std::vector<Substitution>& substitutions);

// True for a non-empty token made only of ASCII punctuation.
bool IsPunctuationToken(std::string_view token);

// True when Tokenize(word) is exactly {word}: the word survives a
// detokenize/tokenize round trip as a single token.
bool IsCleanWordToken(std::string_view word);

std::string AsciiLower(std::string_view s);

bool EqualsIgnoreCase(std::string_view a, std::string_view b);

// Gives `word` the capitalization pattern of `model_token`: an initial
// uppercase letter in the model is copied onto the word.
std::string MatchCapitalization(std::string_view word,
                                std::string_view model_token);

}  // namespace textbeam

#endif  // TEXTBEAM_TEXT_H_
