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

#include "catparity/kernels.hpp"

namespace catparity::kernels {
namespace {

void hadamard_real(const double *w, const double *rho, double *out) {
    for (int k = 0; k < 16; ++k) {
        out[2 * k] = w[k] * rho[2 * k];
        out[2 * k + 1] = w[k] * rho[2 * k + 1];
    }
}

// Two passes: T = U rho, then acc += T U^T. Sums run over the inner index in
// increasing order; the vector variants reproduce this order exactly.
void conjugate_real_add(const double *u, const double *rho, double *acc) {
    double t[32];
    for (int i = 0; i < 4; ++i) {
        for (int l = 0; l < 4; ++l) {
            double re = u[4 * i] * rho[2 * l];
            double im = u[4 * i] * rho[2 * l + 1];
            for (int k = 1; k < 4; ++k) {
                re = re + u[4 * i + k] * rho[2 * (4 * k + l)];
                im = im + u[4 * i + k] * rho[2 * (4 * k + l) + 1];
            }
            t[2 * (4 * i + l)] = re;
            t[2 * (4 * i + l) + 1] = im;
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double re = t[2 * (4 * i)] * u[4 * j];
            double im = t[2 * (4 * i) + 1] * u[4 * j];
            for (int l = 1; l < 4; ++l) {
                re = re + t[2 * (4 * i + l)] * u[4 * j + l];
                im = im + t[2 * (4 * i + l) + 1] * u[4 * j + l];
            }
            acc[2 * (4 * i + j)] += re;
            acc[2 * (4 * i + j) + 1] += im;
        }
    }
}

void scale(double s, const double *rho, double *out) {
    for (int k = 0; k < 32; ++k) out[k] = s * rho[k];
}

}  // namespace

const KernelTable &scalar_table() {
    static const KernelTable t{Isa::scalar, "scalar", &hadamard_real, &conjugate_real_add, &scale};
    return t;
}

}  // namespace catparity::kernels
