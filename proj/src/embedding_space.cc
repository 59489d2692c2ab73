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

#include "textbeam/embedding_space.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "io_util.h"
#include "textbeam/errors.h"
#include "textbeam/simd/kernels.h"
#include "textbeam/text.h"

namespace textbeam {

EmbeddingSpace::EmbeddingSpace(std::vector<std::string> words,
                               std::vector<double> matrix, std::size_t dim)
    : words_(std::move(words)), matrix_(std::move(matrix)), dim_(dim) {
  if (dim_ == 0) throw ConfigError("embedding dimension must be at least 1");
  if (matrix_.size() != words_.size() * dim_) {
    throw ConfigError("embedding matrix size does not match vocabulary");
  }
  for (double v : matrix_) {
    if (!std::isfinite(v)) throw ConfigError("non-finite embedding value");
  }
  norms_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(AsciiLower(words_[i]), i).second) {
      throw ConfigError("duplicate embedding word: " + words_[i]);
    }
    norms_[i] = std::sqrt(simd::SquaredNorm(vector(i)));
  }
}

EmbeddingSpace EmbeddingSpace::Load(const std::string& path) {
  std::vector<std::string> lines = internal::ReadLines(path);
  if (lines.empty()) throw ConfigError("empty embedding file: " + path);
  std::vector<std::string> header = internal::SplitFields(lines[0]);
  if (header.size() != 2) {
    throw ConfigError("embedding header must be '<count> <dim>': " + path);
  }
  const long long count = internal::ParseInt(header[0], path + ":1");
  const long long dim = internal::ParseInt(header[1], path + ":1");
  if (count < 0 || dim < 1) throw ConfigError("bad embedding header: " + path);

  std::vector<std::string> words;
  std::vector<double> matrix;
  words.reserve(static_cast<std::size_t>(count));
  matrix.reserve(static_cast<std::size_t>(count * dim));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (internal::TrimAscii(lines[i]).empty()) continue;
    const std::string context = path + ":" + std::to_string(i + 1);
    std::vector<std::string> fields = internal::SplitFields(lines[i]);
    if (fields.size() != static_cast<std::size_t>(dim) + 1) {
      throw ConfigError("expected " + std::to_string(dim) + " values at " +
                        context);
    }
    words.push_back(fields[0]);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      matrix.push_back(internal::ParseDouble(fields[k], context));
    }
  }
  if (words.size() != static_cast<std::size_t>(count)) {
    throw ConfigError("embedding header promises " + std::to_string(count) +
                      " words, file has " + std::to_string(words.size()));
  }
  return EmbeddingSpace(std::move(words), std::move(matrix),
                        static_cast<std::size_t>(dim));
}

std::optional<std::size_t> EmbeddingSpace::Find(std::string_view word) const {
  auto it = index_.find(AsciiLower(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> EmbeddingSpace::Neighbors(std::string_view word,
                                                   std::size_t n) const {
  std::optional<std::size_t> query = Find(word);
  if (!query || n == 0) return {};

  std::vector<double> cosine(words_.size());
  simd::ActiveKernels().dot_rows(matrix_.data(), words_.size(), dim_,
                                 matrix_.data() + *query * dim_, cosine.data());
  const double query_norm = norms_[*query];
  for (std::size_t i = 0; i < cosine.size(); ++i) {
    const double denom = norms_[i] * query_norm;
    cosine[i] = denom == 0.0 ? 0.0 : cosine[i] / denom;
  }

  std::vector<std::size_t> ids;
  ids.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i != *query) ids.push_back(i);
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (cosine[a] != cosine[b]) return cosine[a] > cosine[b];
    return words_[a] < words_[b];
  };
  const std::size_t take = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + take, ids.end(), better);

  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(words_[ids[i]]);
  return out;
}

}  // namespace textbeam
