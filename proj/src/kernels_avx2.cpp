// Copyright 2026 The catparity Authors
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

#include <immintrin.h>

#include "catparity/kernels.hpp"

// Two complex entries per 256-bit register; a matrix row is two registers.
// Compiled with -mavx2 only. Callers must check supported(Isa::avx2) first.

namespace catparity::kernels {
namespace {

// (a, a, b, b)
inline __m256d pair_broadcast(double a, double b) { return _mm256_set_pd(b, b, a, a); }

void hadamard_real(const double *w, const double *rho, double *out) {
    for (int k = 0; k < 16; k += 2) {
        _mm256_storeu_pd(out + 2 * k, _mm256_mul_pd(pair_broadcast(w[k], w[k + 1]), _mm256_loadu_pd(rho + 2 * k)));
    }
}

void conjugate_real_add(const double *u, const double *rho, double *acc) {
    // t[i][h] holds columns (2h, 2h+1) of row i of U*rho.
    __m256d t[4][2];
    for (int i = 0; i < 4; ++i) {
        for (int h = 0; h < 2; ++h) {
            __m256d s = _mm256_mul_pd(_mm256_set1_pd(u[4 * i]), _mm256_loadu_pd(rho + 4 * h));
            for (int k = 1; k < 4; ++k) {
                s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_set1_pd(u[4 * i + k]), _mm256_loadu_pd(rho + 8 * k + 4 * h)));
            }
            t[i][h] = s;
        }
    }
    alignas(32) double tv[32];
    for (int i = 0; i < 4; ++i) {
        _mm256_store_pd(tv + 8 * i, t[i][0]);
        _mm256_store_pd(tv + 8 * i + 4, t[i][1]);
    }
    for (int i = 0; i < 4; ++i) {
        for (int h = 0; h < 2; ++h) {
            const int j0 = 2 * h;
            const int j1 = 2 * h + 1;
            const __m256d t0 = _mm256_set_pd(tv[8 * i + 1], tv[8 * i], tv[8 * i + 1], tv[8 * i]);
            __m256d s = _mm256_mul_pd(t0, pair_broadcast(u[4 * j0], u[4 * j1]));
            for (int l = 1; l < 4; ++l) {
                const double re = tv[8 * i + 2 * l];
                const double im = tv[8 * i + 2 * l + 1];
                s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_set_pd(im, re, im, re),
                                                   pair_broadcast(u[4 * j0 + l], u[4 * j1 + l])));
            }
            double *dst = acc + 8 * i + 4 * h;
            _mm256_storeu_pd(dst, _mm256_add_pd(_mm256_loadu_pd(dst), s));
        }
    }
}

void scale(double s, const double *rho, double *out) {
    const __m256d f = _mm256_set1_pd(s);
    for (int k = 0; k < 32; k += 4) _mm256_storeu_pd(out + k, _mm256_mul_pd(f, _mm256_loadu_pd(rho + k)));
}

}  // namespace

const KernelTable &avx2_table() {
    static const KernelTable t{Isa::avx2, "avx2", &hadamard_real, &conjugate_real_add, &scale};
    return t;
}

}  // namespace catparity::kernels
