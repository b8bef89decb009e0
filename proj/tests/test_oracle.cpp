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

#include "catparity/coherent_oracle.hpp"
#include "test_util.hpp"

using namespace catparity;
using namespace catparity::oracle;

TEST_SUITE("coherent_oracle") {
    TEST_CASE("coherent overlaps") {
        CHECK(coherent_overlap(1.3, 1.3) == 1.0);
        CHECK(coherent_overlap(1.0, -1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    }

    TEST_CASE("initial ket is normalized and merged") {
        const double alpha = std::sqrt(2.0);
        for (int label = 0; label < 4; ++label) CHECK(norm2(initial_ket(label, alpha)) == doctest::Approx(1.0));
        RandomStream rng(1);
        const Ket4 c = testing::random_ket(rng);
        CHECK(norm2(initial_ket(c, alpha)) == doctest::Approx(1.0).epsilon(1e-13));
        JointKet dup{{{0, 1.0, 0.0, 0.5}, {0, 1.0, 0.0, 0.5}, {1, 1.0, 0.0, 1.0}, {1, 1.0, 0.0, -1.0}}};
        const JointKet m = merged(dup);
        REQUIRE(m.terms.size() == 1);
        CHECK(m.terms[0].coeff == Complex(1.0, 0.0));
    }

    TEST_CASE("pipeline stages are unitary") {
        const CatParams p = CatParams::make(1.5, 0.7);
        const double alpha = p.alpha();
        RandomStream rng(2);
        const JointKet k0 = initial_ket(testing::random_ket(rng), alpha);
        const JointKet k1 = apply_UA(k0, alpha);
        CHECK(norm2(k1) == doctest::Approx(1.0).epsilon(1e-13));
        const JointKet k2 = apply_beamsplitter(k1, p.eta);
        CHECK(norm2(k2) == doctest::Approx(1.0).epsilon(1e-13));
        const JointKet k3 = apply_UB(k2, std::sqrt(p.eta) * alpha);
        CHECK(norm2(k3) == doctest::Approx(1.0).epsilon(1e-13));
        double total = 0.0;
        for (Sign sp : {Sign::plus, Sign::minus}) {
            const Projection a = project_parity(k3, {Mode::probe, sp});
            for (Sign se : {Sign::plus, Sign::minus}) total += project_parity(a.ket, {Mode::env, se}).weight;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    }

    TEST_CASE("stages reject amplitudes from the wrong stage") {
        const double alpha = 1.0;
        const JointKet k0 = initial_ket(3, alpha);
        CHECK_THROWS_AS(apply_UB(k0, 0.5), PipelineError);
        const JointKet k2 = apply_beamsplitter(apply_UA(k0, alpha), 0.5);
        CHECK_THROWS_AS(apply_beamsplitter(k2, 0.5), PipelineError);
        CHECK_THROWS_AS(apply_UA(k2, alpha), PipelineError);
    }

    TEST_CASE("parity projection of cats") {
        const double beta = 1.2;
        JointKet even{{{0, beta, 0.0, 1.0}, {0, -beta, 0.0, 1.0}}};
        const double n = std::sqrt(norm2(even));
        for (auto &t : even.terms) t.coeff /= n;
        CHECK(project_parity(even, {Mode::probe, Sign::plus}).weight == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(project_parity(even, {Mode::probe, Sign::minus}).weight <= 1e-15);
    }

    TEST_CASE("derived operators match the closed form") {
        for (double eta : {0.5, 0.6, 0.75, 0.9, 1.0})
            for (double a2 : {0.25, 1.0, 2.0, 4.0, 8.0}) {
                const CatParams p = CatParams::make(a2, eta);
                CAPTURE(eta);
                CAPTURE(a2);
                CHECK(max_kraus_deviation(build_kraus(p), derive_kraus(p)) <= 1e-10);
            }
    }

    TEST_CASE("derivation preconditions") {
        CHECK_THROWS_AS(derive_kraus(CatParams::make(0.0, 0.5)), DomainError);
        CHECK_THROWS_AS(derive_kraus(CatParams::make(1.0, 0.0)), DomainError);
    }
}
