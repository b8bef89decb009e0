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

#pragma once

#include <array>
#include <cmath>

#include "catparity/qmath.hpp"
#include "catparity/rng.hpp"

namespace catparity::testing {

// G G^dagger / tr with G uniform in [-1, 1]^(4x4) (complex); full rank almost surely.
inline TwoQubitDensity random_density(RandomStream &rng) {
    std::array<Complex, 16> g{};
    for (auto &x : g) x = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    std::array<Complex, 16> r{};
    double tr = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 4; ++k) s += g[4 * i + k] * std::conj(g[4 * j + k]);
            r[4 * i + j] = s;
        }
    for (int i = 0; i < 4; ++i) tr += r[5 * i].real();
    for (auto &x : r) x /= tr;
    for (int i = 0; i < 4; ++i) r[5 * i] = Complex(r[5 * i].real(), 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) r[4 * j + i] = std::conj(r[4 * i + j]);
    return TwoQubitDensity::from_entries(r);
}

inline Ket4 random_ket(RandomStream &rng) {
    Ket4 k{};
    double n = 0.0;
    for (auto &x : k) {
        x = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        n += std::norm(x);
    }
    for (auto &x : k) x /= std::sqrt(n);
    return k;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace catparity::testing
