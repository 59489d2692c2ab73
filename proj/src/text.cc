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

#include "textbeam/text.h"

#include <algorithm>
#include <stdexcept>

namespace textbeam {
namespace {

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsAsciiPunct(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

void AppendChunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();
  while (begin < end && IsAsciiPunct(chunk[begin])) {
    out.emplace_back(1, chunk[begin]);
    ++begin;
  }
  std::size_t trailing_start = end;
  while (trailing_start > begin && IsAsciiPunct(chunk[trailing_start - 1])) {
    --trailing_start;
  }
  if (trailing_start > begin) {
    out.emplace_back(chunk.substr(begin, trailing_start - begin));
  }
  for (std::size_t i = trailing_start; i < end; ++i) {
    out.emplace_back(1, chunk[i]);
  }
}

}  // namespace

Text Tokenize(std::string_view raw) {
  Text text;
  text.raw = std::string(raw);
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && IsAsciiSpace(raw[i])) ++i;
    std::size_t start = i;
    while (i < raw.size() && !IsAsciiSpace(raw[i])) ++i;
    if (i > start) AppendChunk(raw.substr(start, i - start), text.tokens);
  }
  return text;
}

std::string Detokenize(const Text& text) {
  std::string out;
  for (std::size_t i = 0; i < text.tokens.size(); ++i) {
    const std::string& token = text.tokens[i];
    if (i > 0 && !IsPunctuationToken(token)) out.push_back(' ');
    out += token;
  }
  return out;
}

Text Substitute(const Text& text, std::size_t position, std::string_view word) {
  if (position >= text.tokens.size()) {
    throw std::out_of_range("substitution position " +
                            std::to_string(position) +
                            " out of range for text of " +
                            std::to_string(text.tokens.size()) + " tokens");
  }
  if (word.empty() || std::any_of(word.begin(), word.end(), IsAsciiSpace)) {
    throw std::invalid_argument(
        "substitute word must be non-empty and "
        "whitespace-free: '" +
        std::string(word) + "'");
  }
  Text out;
  out.tokens = text.tokens;
  out.tokens[position] = std::string(word);
  return out;
}

Text ApplySubstitutions(const Text& text,
                        const std::vector<Substitution>& substitutions) {
  Text out{text.tokens, std::nullopt};
  for (const Substitution& sub : substitutions) {
    if (sub.position >= out.tokens.size() ||
        out.tokens[sub.position] != sub.original) {
      throw std::invalid_argument(
          "substitution at " + std::to_string(sub.position) +
          " does not match original token '" + sub.original + "'");
    }
    out = Substitute(out, sub.position, sub.replacement);
  }
  return out;
}

bool IsPunctuationToken(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), IsAsciiPunct);
}

bool IsCleanWordToken(std::string_view word) {
  if (word.empty()) return false;
  if (IsPunctuationToken(word)) return word.size() == 1;
  if (std::any_of(word.begin(), word.end(), IsAsciiSpace)) return false;
  return !IsAsciiPunct(word.front()) && !IsAsciiPunct(word.back());
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() && AsciiLower(a) == AsciiLower(b);
}

std::string MatchCapitalization(std::string_view word,
                                std::string_view model_token) {
  std::string out(word);
  if (!model_token.empty() && model_token.front() >= 'A' &&
      model_token.front() <= 'Z' && !out.empty() && out.front() >= 'a' &&
      out.front() <= 'z') {
    out.front() = static_cast<char>(out.front() - 'a' + 'A');
  }
  return out;
}

}  // namespace textbeam
