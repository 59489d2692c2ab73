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

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "textbeam/simd/kernels.h"

namespace textbeam::simd {
namespace {

double ScalarDot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void ScalarDotRows(const double* rows, std::size_t num_rows, std::size_t dim,
                   const double* query, double* out) {
  for (std::size_t r = 0; r < num_rows; ++r) {
    out[r] = ScalarDot(rows + r * dim, query, dim);
  }
}

const KernelTable* SelectKernels() {
  const char* forced = std::getenv("TEXTBEAM_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return &ScalarKernels();
  }
  if (const KernelTable* avx2 = Avx2Kernels()) return avx2;
  if (const KernelTable* neon = NeonKernels()) return neon;
  return &ScalarKernels();
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& ScalarKernels() {
  static constexpr KernelTable kTable{Isa::kScalar, &ScalarDot, &ScalarDotRows};
  return kTable;
}

const KernelTable& ActiveKernels() {
  static const KernelTable* const active = SelectKernels();
  return *active;
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  const KernelTable& k = ActiveKernels();
  const double na = k.dot(a.data(), a.data(), a.size());
  const double nb = k.dot(b.data(), b.data(), b.size());
  if (na == 0.0 || nb == 0.0) return 0.0;
  return k.dot(a.data(), b.data(), a.size()) / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace textbeam::simd
