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

// Compiled with -mavx2 -mfma. Only reached through dispatch after a CPUID check.

#include <immintrin.h>

#include "fockstab/kernels.hpp"

namespace fockstab::kernels {
namespace {

// One __m256d holds two interleaved complex values (re0, im0, re1, im1).
// Products are split into a "real-broadcast" and an "imag-broadcast"
// accumulator so the k loop is pure FMA; addsub folds them at the end:
//   even lanes: sum(ar*br) - sum(ai*bi), odd lanes: sum(ai*br) + sum(ar*bi).
struct Acc {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();

  inline void fma(__m256d a, __m256d a_swapped, __m256d br, __m256d bi) {
    re = _mm256_fmadd_pd(a, br, re);
    im = _mm256_fmadd_pd(a_swapped, bi, im);
  }
  inline __m256d fold() const { return _mm256_addsub_pd(re, im); }
};

inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}
inline void store2(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0x5); }

// std::complex operators are avoided in this translation unit: their inline
// instantiations would be compiled with AVX2 enabled and could be picked by
// the linker for the scalar path too.
struct Pair {
  double re, im;
};

inline Pair at(const cplx* p, std::size_t idx) {
  const double* d = reinterpret_cast<const double*>(p) + 2 * idx;
  return {d[0], d[1]};
}

inline void put(cplx* p, std::size_t idx, Pair v) {
  double* d = reinterpret_cast<double*>(p) + 2 * idx;
  d[0] = v.re;
  d[1] = v.im;
}

template <bool Adjoint>
inline Pair b_entry(const cplx* b, std::size_t n, std::size_t k, std::size_t j) {
  if constexpr (Adjoint) {
    const Pair v = at(b, k * n + j);
    return {v.re, -v.im};
  } else {
    return at(b, j * n + k);
  }
}

// c[:, j0..j0+1] (+)= a * op(b)[:, j0..j0+1], rows [i0, i0+4).
template <bool Adjoint, bool Accumulate>
inline void block_4x2(std::size_t n, const cplx* a, const cplx* b, cplx* c,
                      std::size_t i0, std::size_t j0) {
  Acc c00, c10, c01, c11;  // c<row-chunk><col>
  for (std::size_t k = 0; k < n; ++k) {
    const cplx* ak = a + k * n + i0;
    const __m256d a0 = load2(ak);
    const __m256d a1 = load2(ak + 2);
    const __m256d a0s = swap_re_im(a0);
    const __m256d a1s = swap_re_im(a1);
    const Pair b0 = b_entry<Adjoint>(b, n, k, j0);
    const Pair b1 = b_entry<Adjoint>(b, n, k, j0 + 1);
    const __m256d b0r = _mm256_set1_pd(b0.re);
    const __m256d b0i = _mm256_set1_pd(b0.im);
    c00.fma(a0, a0s, b0r, b0i);
    c10.fma(a1, a1s, b0r, b0i);
    const __m256d b1r = _mm256_set1_pd(b1.re);
    const __m256d b1i = _mm256_set1_pd(b1.im);
    c01.fma(a0, a0s, b1r, b1i);
    c11.fma(a1, a1s, b1r, b1i);
  }
  cplx* cj0 = c + j0 * n + i0;
  cplx* cj1 = c + (j0 + 1) * n + i0;
  if constexpr (Accumulate) {
    store2(cj0, _mm256_add_pd(load2(cj0), c00.fold()));
    store2(cj0 + 2, _mm256_add_pd(load2(cj0 + 2), c10.fold()));
    store2(cj1, _mm256_add_pd(load2(cj1), c01.fold()));
    store2(cj1 + 2, _mm256_add_pd(load2(cj1 + 2), c11.fold()));
  } else {
    store2(cj0, c00.fold());
    store2(cj0 + 2, c10.fold());
    store2(cj1, c01.fold());
    store2(cj1 + 2, c11.fold());
  }
}

// Two rows, one column.
template <bool Adjoint, bool Accumulate>
inline void block_2x1(std::size_t n, const cplx* a, const cplx* b, cplx* c,
                      std::size_t i0, std::size_t j) {
  Acc acc;
  for (std::size_t k = 0; k < n; ++k) {
    const __m256d a0 = load2(a + k * n + i0);
    const Pair bk = b_entry<Adjoint>(b, n, k, j);
    acc.fma(a0, swap_re_im(a0), _mm256_set1_pd(bk.re), _mm256_set1_pd(bk.im));
  }
  cplx* cj = c + j * n + i0;
  if constexpr (Accumulate) {
    store2(cj, _mm256_add_pd(load2(cj), acc.fold()));
  } else {
    store2(cj, acc.fold());
  }
}

template <bool Adjoint, bool Accumulate>
inline void entry_1x1(std::size_t n, const cplx* a, const cplx* b, cplx* c,
                      std::size_t i, std::size_t j) {
  Pair s{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const Pair x = at(a, k * n + i);
    const Pair y = b_entry<Adjoint>(b, n, k, j);
    s.re += x.re * y.re - x.im * y.im;
    s.im += x.re * y.im + x.im * y.re;
  }
  if constexpr (Accumulate) {
    const Pair old = at(c, j * n + i);
    s.re += old.re;
    s.im += old.im;
  }
  put(c, j * n + i, s);
}

template <bool Adjoint, bool Accumulate>
void gemm_impl(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  const std::size_t i4 = n - n % 4;
  const std::size_t j2 = n - n % 2;
  for (std::size_t j = 0; j < j2; j += 2) {
    for (std::size_t i = 0; i < i4; i += 4) block_4x2<Adjoint, Accumulate>(n, a, b, c, i, j);
    for (std::size_t jj = j; jj < j + 2; ++jj) {
      std::size_t i = i4;
      if (n - i >= 2) {
        block_2x1<Adjoint, Accumulate>(n, a, b, c, i, jj);
        i += 2;
      }
      if (i < n) entry_1x1<Adjoint, Accumulate>(n, a, b, c, i, jj);
    }
  }
  if (j2 < n) {
    const std::size_t j = j2;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) block_2x1<Adjoint, Accumulate>(n, a, b, c, i, j);
    if (i < n) entry_1x1<Adjoint, Accumulate>(n, a, b, c, i, j);
  }
}

void gemm_avx2(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  gemm_impl<false, false>(n, a, b, c);
}

void gemm_adj_acc_avx2(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  gemm_impl<true, true>(n, a, b, c);
}

void skew_hermitian_avx2(std::size_t n, const cplx* x, cplx* out) {
  // i*(conj(t) - v) for t = x(j,i), v = x(i,j); (p, q) -> i*(p + iq) = (-q, p)
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  const __m256d neg_re = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      const cplx* t0 = x + i * n + j;
      const cplx* t1 = x + (i + 1) * n + j;
      const __m256d t = _mm256_set_m128d(_mm_loadu_pd(reinterpret_cast<const double*>(t1)),
                                         _mm_loadu_pd(reinterpret_cast<const double*>(t0)));
      const __m256d v = load2(x + j * n + i);
      const __m256d d = _mm256_sub_pd(_mm256_xor_pd(t, conj_mask), v);
      store2(out + j * n + i, _mm256_xor_pd(swap_re_im(d), neg_re));
    }
    for (; i < n; ++i) {
      const Pair t = at(x, i * n + j);
      const Pair v = at(x, j * n + i);
      put(out, j * n + i, {t.im + v.im, t.re - v.re});
    }
  }
}

void axpy_avx2(std::size_t len, double alpha, const cplx* x, cplx* y) {
  const __m256d s = _mm256_set1_pd(alpha);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * len;
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(s, _mm256_loadu_pd(xd + i), _mm256_loadu_pd(yd + i)));
    _mm256_storeu_pd(yd + i + 4,
                     _mm256_fmadd_pd(s, _mm256_loadu_pd(xd + i + 4), _mm256_loadu_pd(yd + i + 4)));
  }
  for (; i + 4 <= m; i += 4)
    _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(s, _mm256_loadu_pd(xd + i), _mm256_loadu_pd(yd + i)));
  for (; i < m; ++i) yd[i] += alpha * xd[i];
}

void hermitize_avx2(std::size_t n, cplx* a) {
  // Strided transpose access; no profitable vector form at these sizes.
  for (std::size_t j = 0; j < n; ++j) {
    const Pair d = at(a, j * n + j);
    put(a, j * n + j, {d.re, 0.0});
    for (std::size_t i = j + 1; i < n; ++i) {
      const Pair lo = at(a, j * n + i);
      const Pair hi = at(a, i * n + j);
      const Pair avg{0.5 * (lo.re + hi.re), 0.5 * (lo.im - hi.im)};
      put(a, j * n + i, avg);
      put(a, i * n + j, {avg.re, -avg.im});
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{Isa::Avx2,           "avx2",
                             &gemm_avx2,          &gemm_adj_acc_avx2,
                             &skew_hermitian_avx2, &axpy_avx2,
                             &hermitize_avx2};
  return t;
}

}  // namespace fockstab::kernels
