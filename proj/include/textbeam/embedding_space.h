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

#ifndef TEXTBEAM_EMBEDDING_SPACE_H_
#define TEXTBEAM_EMBEDDING_SPACE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace textbeam {

// Word vectors of one fixed dimension, stored row-major. Lookup is
// case-insensitive, so two words differing only in case are duplicates.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;
  // `matrix` holds words.size() * dim values. Throws ConfigError on dim 0,
  // duplicate words, a size mismatch or non-finite values.
  EmbeddingSpace(std::vector<std::string> words, std::vector<double> matrix,
                 std::size_t dim);

  // Text format: first line "<count> <dim>", then "word v1 ... vd" per line.
  static EmbeddingSpace Load(const std::string& path);

  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return dim_; }
  const std::string& word(std::size_t id) const { return words_[id]; }
  std::span<const double> vector(std::size_t id) const {
    return {matrix_.data() + id * dim_, dim_};
  }
  std::optional<std::size_t> Find(std::string_view word) const;

  // The n words with highest cosine similarity to `word`, excluding the word
  // itself; ties ordered lexicographically. Empty for out-of-vocabulary
  // words.
  std::vector<std::string> Neighbors(std::string_view word,
                                     std::size_t n) const;

 private:
  std::vector<std::string> words_;
  std::vector<double> matrix_;
  std::vector<double> norms_;
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

inline std::vector<std::string> EmbeddingNeighbors(const EmbeddingSpace& space,
                                                   std::string_view word,
                                                   std::size_t n) {
  return space.Neighbors(word, n);
}

}  // namespace textbeam

#endif  // TEXTBEAM_EMBEDDING_SPACE_H_
