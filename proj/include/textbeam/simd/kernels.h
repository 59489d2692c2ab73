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

#ifndef TEXTBEAM_SIMD_KERNELS_H_
#define TEXTBEAM_SIMD_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace textbeam::simd {

// Instruction set a kernel table was built for.
enum class Isa { kScalar, kAvx2, kNeon };

std::string_view IsaName(Isa isa);

// Inner-loop kernels used by cosine scans. Every table computes the same
// quantities; only floating-point summation order differs between them.
struct KernelTable {
  Isa isa;
  // Sum of a[i] * b[i]. Both spans have equal length.
  double (*dot)(const double* a, const double* b, std::size_t n);
  // For each row r of the row-major `rows` matrix (num_rows x dim), writes
  // dot(rows[r], query) to out[r].
  void (*dot_rows)(const double* rows, std::size_t num_rows, std::size_t dim,
                   const double* query, double* out);
};

// Portable reference implementation; always available.
const KernelTable& ScalarKernels();

// Returns nullptr when the variant was not compiled in or the running CPU
// does not support it.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

// Kernel table chosen for this process: the widest supported variant, unless
// the environment variable TEXTBEAM_SIMD=scalar forces the reference path.
// Resolved once on first call.
const KernelTable& ActiveKernels();

inline double Dot(std::span<const double> a, std::span<const double> b) {
  return ActiveKernels().dot(a.data(), b.data(), a.size());
}

inline double SquaredNorm(std::span<const double> a) {
  return ActiveKernels().dot(a.data(), a.data(), a.size());
}

// Cosine similarity; 0 when either vector has zero norm.
double Cosine(std::span<const double> a, std::span<const double> b);

}  // namespace textbeam::simd

#endif  // TEXTBEAM_SIMD_KERNELS_H_
