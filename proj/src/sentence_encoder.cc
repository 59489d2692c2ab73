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

#include "textbeam/sentence_encoder.h"

#include <cmath>

#include "textbeam/simd/kernels.h"

namespace textbeam {

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::vector<double> HashedBowEncoder::Encode(const Text& text) const {
  std::vector<double> v(dim_, 0.0);
  for (const std::string& token : text.tokens) {
    v[Fnv1a64(AsciiLower(token)) % dim_] += 1.0;
  }
  const double norm = std::sqrt(simd::SquaredNorm(v));
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

double SentenceSimilarity(const SentenceEncoder& encoder, const Text& a,
                          const Text& b) {
  return simd::Cosine(encoder.Encode(a), encoder.Encode(b));
}

}  // namespace textbeam
