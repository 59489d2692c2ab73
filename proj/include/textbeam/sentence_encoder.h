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

#ifndef TEXTBEAM_SENTENCE_ENCODER_H_
#define TEXTBEAM_SENTENCE_ENCODER_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "textbeam/text.h"

namespace textbeam {

// Maps a text to a unit-norm vector of fixed dimension, or to the zero vector
// when the text carries no signal.
class SentenceEncoder {
 public:
  virtual ~SentenceEncoder() = default;
  virtual std::vector<double> Encode(const Text& text) const = 0;
  virtual std::size_t dim() const = 0;
};

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

// Hashed bag of words: each lowercased token adds 1 to bucket
// FNV-1a(token) mod dim, then the vector is L2-normalized.
class HashedBowEncoder : public SentenceEncoder {
 public:
  explicit HashedBowEncoder(std::size_t dim = 256) : dim_(dim) {}

  std::vector<double> Encode(const Text& text) const override;
  std::size_t dim() const override { return dim_; }

 private:
  std::size_t dim_;
};

// Cosine of the two encodings; 0 when either is the zero vector.
double SentenceSimilarity(const SentenceEncoder& encoder, const Text& a,
                          const Text& b);

}  // namespace textbeam

#endif  // TEXTBEAM_SENTENCE_ENCODER_H_
