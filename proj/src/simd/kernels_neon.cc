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

#include "textbeam/simd/kernels.h"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace textbeam::simd {
namespace {

double NeonDot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void NeonDotRows(const double* rows, std::size_t num_rows, std::size_t dim,
                 const double* query, double* out) {
  for (std::size_t r = 0; r < num_rows; ++r) {
    out[r] = NeonDot(rows + r * dim, query, dim);
  }
}

}  // namespace

// Advanced SIMD is mandatory on AArch64.
const KernelTable* NeonKernels() {
  static constexpr KernelTable kTable{Isa::kNeon, &NeonDot, &NeonDotRows};
  return &kTable;
}

}  // namespace textbeam::simd

#else

namespace textbeam::simd {
const KernelTable* NeonKernels() { return nullptr; }
}  // namespace textbeam::simd

#endif
