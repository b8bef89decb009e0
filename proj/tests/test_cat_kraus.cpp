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

#include <doctest.h>

#include <cmath>

#include "catparity/cat_kraus.hpp"
#include "catparity/error.hpp"
#include "test_util.hpp"

using namespace catparity;

namespace {

const double kEtas[] = {0.5, 0.6, 0.75, 0.9, 1.0};
const double kAlpha2s[] = {0.25, 1.0, 2.0, 4.0, 8.0};

// Random state supported on one parity block.
TwoQubitDensity random_block_state(RandomStream &rng, bool even) {
    const int a = even ? 0 : 1;
    const int b = even ? 3 : 2;
    Ket4 k{};
    k[a] = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    k[b] = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    const double n = std::sqrt(std::norm(k[a]) + std::norm(k[b]));
    k[a] /= n;
    k[b] /= n;
    return TwoQubitDensity::pure(k);
}

}  // namespace

TEST_SUITE("cat_kraus") {
    TEST_CASE("reference entries at alpha2 = 2, eta = 0.75") {
        const KrausSet ks = build_kraus(CatParams::make(2.0, 0.75));
        CHECK(ks.diagonal);
        const auto pp = ks.diag(Sign::plus, Sign::plus);
        const auto pm = ks.diag(Sign::plus, Sign::minus);
        const auto mp = ks.diag(Sign::minus, Sign::plus);
        CHECK(pp[0] == doctest::Approx(0.83968871375188746).epsilon(1e-14));
        CHECK(pp[3] == doctest::Approx(0.81364216238833847).epsilon(1e-14));
        CHECK(pp[1] == 0.0);
        CHECK(pp[2] == 0.0);
        CHECK(pm[1] == doctest::Approx(0.54306801047170953).epsilon(1e-14));
        CHECK(pm[2] == doctest::Approx(0.58136600484034896).epsilon(1e-14));
        CHECK(mp[1] == doctest::Approx(0.83968871375188746).epsilon(1e-14));
        CHECK(mp[2] == doctest::Approx(0.81364216238833847).epsilon(1e-14));
        const auto p = outcome_probs(TwoQubitDensity::bell(BellState::even_plus), ks);
        CHECK(p.plus == doctest::Approx(0.68354535220913527).epsilon(1e-14));
        CHECK(p.plus + p.minus == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("completeness on the grid") {
        for (double eta : kEtas)
            for (double a2 : kAlpha2s) {
                CAPTURE(eta);
                CAPTURE(a2);
                CHECK(completeness_error(build_kraus(CatParams::make(a2, eta))) <= 1e-12);
            }
    }

    TEST_CASE("structural zeros") {
        const Ket4 even{1.0, 0.0, 0.0, 1.0};
        for (double eta : kEtas)
            for (double a2 : kAlpha2s) {
                const KrausSet ks = build_kraus(CatParams::make(a2, eta));
                for (const RealMat4 *m : {&ks.m_pm(), &ks.m_mp()}) {
                    for (int i = 0; i < 4; ++i) {
                        double s = 0.0;
                        for (int j = 0; j < 4; ++j) s += (*m)[4 * i + j] * even[j].real();
                        CHECK(s == 0.0);
                    }
                }
            }
    }

    TEST_CASE("lossless channel is a projective parity measurement") {
        const KrausSet ks = build_kraus(CatParams::make(2.0, 1.0));
        CHECK(ks.diag(Sign::plus, Sign::plus) == std::array<double, 4>{1.0, 0.0, 0.0, 1.0});
        CHECK(ks.diag(Sign::minus, Sign::plus) == std::array<double, 4>{0.0, 1.0, 1.0, 0.0});
        CHECK(ks.diag(Sign::plus, Sign::minus) == std::array<double, 4>{0.0, 0.0, 0.0, 0.0});
        CHECK(ks.diag(Sign::minus, Sign::minus) == std::array<double, 4>{0.0, 0.0, 0.0, 0.0});
        CHECK_NOTHROW(build_kraus(CatParams::make(0.0, 1.0)));
        CHECK_THROWS_AS(build_kraus(CatParams::make(0.0, 0.9)), DomainError);
    }

    TEST_CASE("definite-parity eigenstates survive the matched outcome") {
        RandomStream rng(21);
        // Computational basis states are unchanged at any loss.
        for (double eta : kEtas)
            for (double a2 : kAlpha2s) {
                const KrausSet ks = build_kraus(CatParams::make(a2, eta));
                for (int label = 0; label < 4; ++label) {
                    const auto rho = TwoQubitDensity::computational(label);
                    const Outcome o = (label == 0 || label == 3) ? Outcome::plus : Outcome::minus;
                    CHECK(max_abs_diff(apply_outcome(rho, ks, o), rho) <= 1e-14);
                }
            }
        // Any state inside a parity block is unchanged when the channel is lossless.
        for (double a2 : kAlpha2s) {
            const KrausSet ks = build_kraus(CatParams::make(a2, 1.0));
            for (int n = 0; n < 20; ++n) {
                const bool even = n % 2 == 0;
                const auto rho = random_block_state(rng, even);
                CHECK(max_abs_diff(apply_outcome(rho, ks, even ? Outcome::plus : Outcome::minus), rho) <= 1e-14);
            }
        }
    }

    TEST_CASE("outcome probabilities and impossible outcomes") {
        RandomStream rng(4);
        const KrausSet ks = build_kraus(CatParams::make(1.0, 0.8));
        for (int n = 0; n < 20; ++n) {
            const auto rho = testing::random_density(rng);
            const auto p = outcome_probs(rho, ks);
            CHECK(p.plus + p.minus == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(p.plus == doctest::Approx(unnormalized_outcome(rho, ks, Outcome::plus).trace()).epsilon(1e-14));
            CHECK_NOTHROW(apply_outcome(rho, ks, Outcome::minus).check());
        }
        const KrausSet proj = build_kraus(CatParams::make(2.0, 1.0));
        CHECK_THROWS_AS(apply_outcome(TwoQubitDensity::bell(BellState::even_plus), proj, Outcome::minus),
                        ImpossibleOutcome);
    }

    TEST_CASE("sampling follows the uniform draw") {
        const KrausSet ks = build_kraus(CatParams::make(2.0, 0.75));
        const auto rho = TwoQubitDensity::bell(BellState::even_plus);
        const double pp = outcome_probs(rho, ks).plus;
        CHECK(measure_with_uniform(rho, ks, 0.0).outcome == Outcome::plus);
        CHECK(measure_with_uniform(rho, ks, pp * 0.999).outcome == Outcome::plus);
        CHECK(measure_with_uniform(rho, ks, pp).outcome == Outcome::minus);
        const KrausSet proj = build_kraus(CatParams::make(2.0, 1.0));
        CHECK(measure_with_uniform(rho, proj, 0.999999).outcome == Outcome::plus);
    }

    TEST_CASE("rotated Kraus set is the same measurement in another frame") {
        RandomStream rng(8);
        const KrausSet ks = build_kraus(CatParams::make(2.0, 0.75));
        const RealMat4 &h = gate_matrix(LocalGate::hadamard_both);
        const KrausSet kx = ks.conjugated(h);
        CHECK_FALSE(kx.diagonal);
        CHECK(completeness_error(kx) <= 1e-12);
        const auto rho = testing::random_density(rng);
        const auto direct = apply_outcome(rho, kx, Outcome::plus);
        const auto framed = conjugate(apply_outcome(conjugate(rho, h), ks, Outcome::plus), h);
        CHECK(max_abs_diff(direct, framed) <= 1e-14);
    }
}
