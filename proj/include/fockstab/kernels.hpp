// Copyright 2026 The fockstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex kernels behind the master-equation right-hand side.
//
// All matrices are square, column-major, n x n, stored as contiguous
// std::complex<double> (the Eigen::MatrixXcd layout). Each instruction-set
// variant implements the same KernelTable; `active()` returns the variant
// chosen at startup from CPUID, which FOCKSTAB_SIMD=scalar|avx2 overrides.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace fockstab::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  /// c = a * b
  void (*gemm)(std::size_t n, const cplx* a, const cplx* b, cplx* c);
  /// c += a * b^dagger
  void (*gemm_adj_acc)(std::size_t n, const cplx* a, const cplx* b, cplx* c);
  /// out = -i x + i x^dagger
  void (*skew_hermitian)(std::size_t n, const cplx* x, cplx* out);
  /// y += alpha * x over `len` complex entries
  void (*axpy)(std::size_t len, double alpha, const cplx* x, cplx* y);
  /// a = (a + a^dagger) / 2 in place
  void (*hermitize)(std::size_t n, cplx* a);
};

const KernelTable& scalar_table();
#if FOCKSTAB_HAVE_AVX2
const KernelTable& avx2_table();
#endif

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

const KernelTable& table(Isa isa);

/// The table used by the solver. Selected once; see set_active().
const KernelTable& active();

/// Force a variant (tests and benchmarks). Throws std::invalid_argument when
/// the variant is unavailable on this machine.
void set_active(Isa isa);

std::vector<Isa> available_isas();

std::string_view isa_name(Isa isa);

}  // namespace fockstab::kernels
