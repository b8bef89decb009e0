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

// The remote parity measurement channel: the four Kraus operators M_{probe,env}
// for a cat-state probe sent through a lossy channel, and the two partial
// Kraus maps obtained by discarding the unread environment parity.

#include <array>
#include <cstdint>

#include "catparity/qmath.hpp"
#include "catparity/rng.hpp"

namespace catparity {

/// Detected photon-number parity of the probe.
enum class Outcome : std::uint8_t { plus, minus };

/// Probabilities below this are treated as structural zeros.
inline constexpr double kZeroProbability = 1e-14;

struct KrausSet {
    CatParams params;
    // Indexed [probe][env] by Sign; dense real 4x4 even though build_kraus
    // produces diagonal operators.
    std::array<std::array<RealMat4, 2>, 2> ops{};
    bool diagonal = false;
    // For diagonal sets: w[o][ij] = sum over the two operators of outcome o
    // of m_i * m_j, so M rho M^T summed is an elementwise product.
    std::array<RealMat4, 2> outcome_weights{};

    static KrausSet from_operators(const CatParams &params, const std::array<std::array<RealMat4, 2>, 2> &ops);

    const RealMat4 &op(Sign probe, Sign env) const {
        return ops[static_cast<int>(probe)][static_cast<int>(env)];
    }
    const RealMat4 &m_pp() const { return op(Sign::plus, Sign::plus); }
    const RealMat4 &m_pm() const { return op(Sign::plus, Sign::minus); }
    const RealMat4 &m_mp() const { return op(Sign::minus, Sign::plus); }
    const RealMat4 &m_mm() const { return op(Sign::minus, Sign::minus); }

    /// Diagonal entries of one operator.
    std::array<double, 4> diag(Sign probe, Sign env) const;

    /// U M U^T for every operator: the same measurement seen in a rotated frame.
    KrausSet conjugated(const RealMat4 &u) const;
};

/// Closed-form operators. Throws DomainError for alpha2 == 0 with eta < 1
/// (the probe carries no parity information). At eta == 1 the loss-free ratios
/// are exactly 1 and the minus-environment operators exactly zero.
KrausSet build_kraus(const CatParams &params);

/// max |sum M^T M - I|.
double completeness_error(const KrausSet &ks);

struct OutcomeProbabilities {
    double plus;
    double minus;
    double operator[](Outcome o) const { return o == Outcome::plus ? plus : minus; }
};
OutcomeProbabilities outcome_probs(const TwoQubitDensity &rho, const KrausSet &ks);

/// sum over env of M rho M^T, not normalized; its trace is the outcome probability.
TwoQubitDensity unnormalized_outcome(const TwoQubitDensity &rho, const KrausSet &ks, Outcome o);

/// Normalized post-measurement state. Throws ImpossibleOutcome when the
/// outcome probability is below kZeroProbability.
TwoQubitDensity apply_outcome(const TwoQubitDensity &rho, const KrausSet &ks, Outcome o);

struct Measurement {
    Outcome outcome;
    TwoQubitDensity state;
};

/// Outcome + iff u < p_plus.
Measurement measure_with_uniform(const TwoQubitDensity &rho, const KrausSet &ks, double u);
Measurement sample_measurement(const TwoQubitDensity &rho, const KrausSet &ks, RandomStream &rng);

}  // namespace catparity
