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

#include <emmintrin.h>

#include "catparity/kernels.hpp"

// One complex entry per 128-bit register.

namespace catparity::kernels {
namespace {

void hadamard_real(const double *w, const double *rho, double *out) {
    for (int k = 0; k < 16; ++k) {
        _mm_storeu_pd(out + 2 * k, _mm_mul_pd(_mm_set1_pd(w[k]), _mm_loadu_pd(rho + 2 * k)));
    }
}

void conjugate_real_add(const double *u, const double *rho, double *acc) {
    __m128d t[16];
    for (int i = 0; i < 4; ++i) {
        for (int l = 0; l < 4; ++l) {
            __m128d s = _mm_mul_pd(_mm_set1_pd(u[4 * i]), _mm_loadu_pd(rho + 2 * l));
            for (int k = 1; k < 4; ++k) {
                s = _mm_add_pd(s, _mm_mul_pd(_mm_set1_pd(u[4 * i + k]), _mm_loadu_pd(rho + 2 * (4 * k + l))));
            }
            t[4 * i + l] = s;
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            __m128d s = _mm_mul_pd(t[4 * i], _mm_set1_pd(u[4 * j]));
            for (int l = 1; l < 4; ++l) {
                s = _mm_add_pd(s, _mm_mul_pd(t[4 * i + l], _mm_set1_pd(u[4 * j + l])));
            }
            double *dst = acc + 2 * (4 * i + j);
            _mm_storeu_pd(dst, _mm_add_pd(_mm_loadu_pd(dst), s));
        }
    }
}

void scale(double s, const double *rho, double *out) {
    const __m128d f = _mm_set1_pd(s);
    for (int k = 0; k < 32; k += 2) _mm_storeu_pd(out + k, _mm_mul_pd(f, _mm_loadu_pd(rho + k)));
}

}  // namespace

const KernelTable &sse2_table() {
    static const KernelTable t{Isa::sse2, "sse2", &hadamard_real, &conjugate_real_add, &scale};
    return t;
}

}  // namespace catparity::kernels
