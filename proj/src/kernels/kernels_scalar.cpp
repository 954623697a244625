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

#include "fockstab/kernels.hpp"

namespace fockstab::kernels {
namespace {

void gemm_scalar(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t j = 0; j < n; ++j) {
    cplx* cj = c + j * n;
    for (std::size_t i = 0; i < n; ++i) cj[i] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx bkj = b[j * n + k];
      if (bkj == cplx{}) continue;
      const cplx* ak = a + k * n;
      for (std::size_t i = 0; i < n; ++i) cj[i] += ak[i] * bkj;
    }
  }
}

void gemm_adj_acc_scalar(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  // (b^dagger)(k, j) = conj(b(j, k))
  for (std::size_t j = 0; j < n; ++j) {
    cplx* cj = c + j * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx bkj = std::conj(b[k * n + j]);
      if (bkj == cplx{}) continue;
      const cplx* ak = a + k * n;
      for (std::size_t i = 0; i < n; ++i) cj[i] += ak[i] * bkj;
    }
  }
}

void skew_hermitian_scalar(std::size_t n, const cplx* x, cplx* out) {
  const cplx iu{0.0, 1.0};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      out[j * n + i] = iu * (std::conj(x[i * n + j]) - x[j * n + i]);
}

void axpy_scalar(std::size_t len, double alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void hermitize_scalar(std::size_t n, cplx* a) {
  for (std::size_t j = 0; j < n; ++j) {
    a[j * n + j] = a[j * n + j].real();
    for (std::size_t i = j + 1; i < n; ++i) {
      const cplx avg = 0.5 * (a[j * n + i] + std::conj(a[i * n + j]));
      a[j * n + i] = avg;
      a[i * n + j] = std::conj(avg);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::Scalar,         "scalar",
                             &gemm_scalar,        &gemm_adj_acc_scalar,
                             &skew_hermitian_scalar, &axpy_scalar,
                             &hermitize_scalar};
  return t;
}

}  // namespace fockstab::kernels
