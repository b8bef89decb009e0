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

#include "catparity/cat_kraus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catparity/error.hpp"
#include "catparity/kernels.hpp"

namespace catparity {
namespace {

RealMat4 diagonal_matrix(double d00, double d01, double d10, double d11) {
    RealMat4 m{};
    m[0] = d00;
    m[5] = d01;
    m[10] = d10;
    m[15] = d11;
    return m;
}

RealMat4 multiply(const RealMat4 &a, const RealMat4 &b) {
    RealMat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a[4 * i + k] * b[4 * k + j];
            c[4 * i + j] = s;
        }
    return c;
}

RealMat4 transpose(const RealMat4 &a) {
    RealMat4 t{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[4 * j + i] = a[4 * i + j];
    return t;
}

bool is_diagonal(const RealMat4 &m) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && m[4 * i + j] != 0.0) return false;
    return true;
}

}  // namespace

KrausSet KrausSet::from_operators(const CatParams &params, const std::array<std::array<RealMat4, 2>, 2> &ops) {
    KrausSet ks;
    ks.params = params;
    ks.ops = ops;
    ks.diagonal = true;
    for (const auto &row : ops)
        for (const auto &m : row) ks.diagonal = ks.diagonal && is_diagonal(m);
    if (ks.diagonal) {
        for (int o = 0; o < 2; ++o) {
            RealMat4 &w = ks.outcome_weights[o];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const RealMat4 &a = ops[o][0];
                    const RealMat4 &b = ops[o][1];
                    w[4 * i + j] = a[5 * i] * a[5 * j] + b[5 * i] * b[5 * j];
                }
        }
    }
    return ks;
}

std::array<double, 4> KrausSet::diag(Sign probe, Sign env) const {
    const RealMat4 &m = op(probe, env);
    return {m[0], m[5], m[10], m[15]};
}

KrausSet KrausSet::conjugated(const RealMat4 &u) const {
    const RealMat4 ut = transpose(u);
    std::array<std::array<RealMat4, 2>, 2> rotated{};
    for (int p = 0; p < 2; ++p)
        for (int e = 0; e < 2; ++e) rotated[p][e] = multiply(multiply(u, ops[p][e]), ut);
    return from_operators(params, rotated);
}

KrausSet build_kraus(const CatParams &p) {
    const CatParams params = CatParams::make(p.alpha2, p.eta);
    if (params.alpha2 == 0.0 && params.eta < 1.0) {
        throw DomainError("alpha2 = 0 with eta < 1: vacuum probe carries no parity information");
    }
    const double a2 = params.alpha2;
    const double transmitted = params.eta * a2;
    const double lost = (1.0 - params.eta) * a2;

    // Ratios N_{sqrt(eta) alpha} / N_alpha; all four are exactly 1 or absent at eta = 1.
    double even_even = 1.0;  // N+_E / N+_A
    double odd_odd = 1.0;    // N-_E / N-_A
    double even_odd = 1.0;   // N+_E / N-_A
    double odd_even = 1.0;   // N-_E / N+_A
    if (params.eta < 1.0) {
        const double np_a = norm_const(a2, Sign::plus);
        const double nm_a = norm_const(a2, Sign::minus);
        const double np_e = norm_const(transmitted, Sign::plus);
        const double nm_e = norm_const(transmitted, Sign::minus);
        even_even = np_e / np_a;
        odd_odd = nm_e / nm_a;
        even_odd = np_e / nm_a;
        odd_even = nm_e / np_a;
    }
    const double env_plus = 0.5 * norm_const(lost, Sign::plus);
    const double env_minus = 0.5 * norm_const(lost, Sign::minus);

    std::array<std::array<RealMat4, 2>, 2> ops{};
    ops[0][0] = diagonal_matrix(env_plus * even_even, 0.0, 0.0, env_plus * odd_odd);
    ops[0][1] = diagonal_matrix(0.0, env_minus * odd_even, env_minus * even_odd, 0.0);
    ops[1][0] = diagonal_matrix(0.0, env_plus * even_even, env_plus * odd_odd, 0.0);
    ops[1][1] = diagonal_matrix(env_minus * odd_even, 0.0, 0.0, env_minus * even_odd);
    return KrausSet::from_operators(params, ops);
}

double completeness_error(const KrausSet &ks) {
    RealMat4 sum{};
    for (const auto &row : ks.ops)
        for (const auto &m : row) {
            const RealMat4 mtm = multiply(transpose(m), m);
            for (int k = 0; k < 16; ++k) sum[k] += mtm[k];
        }
    double err = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) err = std::max(err, std::abs(sum[4 * i + j] - (i == j ? 1.0 : 0.0)));
    return err;
}

OutcomeProbabilities outcome_probs(const TwoQubitDensity &rho, const KrausSet &ks) {
    if (ks.diagonal) {
        double pp = 0.0;
        double pm = 0.0;
        for (int i = 0; i < 4; ++i) {
            pp += ks.outcome_weights[0][5 * i] * rho.population(i);
            pm += ks.outcome_weights[1][5 * i] * rho.population(i);
        }
        return {pp, pm};
    }
    return {unnormalized_outcome(rho, ks, Outcome::plus).trace(), unnormalized_outcome(rho, ks, Outcome::minus).trace()};
}

TwoQubitDensity unnormalized_outcome(const TwoQubitDensity &rho, const KrausSet &ks, Outcome o) {
    const int idx = static_cast<int>(o);
    const auto &k = kernels::active();
    TwoQubitDensity out;
    if (ks.diagonal) {
        k.hadamard_real(ks.outcome_weights[idx].data(), rho.raw(), out.raw());
    } else {
        k.conjugate_real_add(ks.ops[idx][0].data(), rho.raw(), out.raw());
        k.conjugate_real_add(ks.ops[idx][1].data(), rho.raw(), out.raw());
    }
    return out;
}

TwoQubitDensity apply_outcome(const TwoQubitDensity &rho, const KrausSet &ks, Outcome o) {
    TwoQubitDensity out = unnormalized_outcome(rho, ks, o);
    const double p = out.trace();
    if (!(p > kZeroProbability)) {
        throw ImpossibleOutcome(std::string("outcome ") + (o == Outcome::plus ? "+" : "-") +
                                " has probability " + std::to_string(p));
    }
    kernels::active().scale(1.0 / p, out.raw(), out.raw());
    return out;
}

Measurement measure_with_uniform(const TwoQubitDensity &rho, const KrausSet &ks, double u) {
    const OutcomeProbabilities p = outcome_probs(rho, ks);
    Outcome o = u < p.plus ? Outcome::plus : Outcome::minus;
    // A draw landing in a round-off sliver of a structurally impossible outcome.
    if (p[o] <= kZeroProbability) o = o == Outcome::plus ? Outcome::minus : Outcome::plus;
    return {o, apply_outcome(rho, ks, o)};
}

Measurement sample_measurement(const TwoQubitDensity &rho, const KrausSet &ks, RandomStream &rng) {
    return measure_with_uniform(rho, ks, rng.uniform());
}

}  // namespace catparity
