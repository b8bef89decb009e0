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
#include <cstdint>
#include <optional>

#include "catparity/cat_kraus.hpp"
#include "catparity/qmath.hpp"
#include "catparity/rng.hpp"

namespace catparity {

enum class FilterMode : std::uint8_t { full, bell };
enum class Picture : std::uint8_t { schrodinger, heisenberg };
enum class InitialState : std::uint8_t { plus_x_plus_x, bell_e_plus };
enum class Basis : std::uint8_t { z, x };

struct BellPopulations {
    // Ordered as BellState: B+e, B-e, B+o, B-o.
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    static BellPopulations of(const TwoQubitDensity &rho);
    /// Probability of odd sigma_z x sigma_z parity.
    double odd_z() const { return p[2] + p[3]; }
    /// Probability of odd sigma_x x sigma_x parity.
    double odd_x() const { return p[1] + p[3]; }
    /// Throws NumericFailure unless p is a probability vector to tol.
    void check(double tol = 1e-12) const;
};

struct FilterState {
    FilterMode mode = FilterMode::full;
    TwoQubitDensity full_rho;  // full mode
    BellPopulations pops;      // bell mode

    static FilterState initial(FilterMode mode, const TwoQubitDensity &rho0);
    /// Bell-basis diagonal in either mode.
    BellPopulations bell_diagonal() const;
    double odd_probability(Basis basis) const;
};

struct FeedbackConfig {
    CatParams cat;
    std::optional<DecayParams> decay;
    Picture picture = Picture::schrodinger;
    FilterMode filter_mode = FilterMode::full;
    InitialState initial_state = InitialState::plus_x_plus_x;
    std::int64_t steps = 1;
    std::uint64_t seed = 0;

    /// Throws UsageError / DomainError on invalid fields.
    void validate() const;
};

TwoQubitDensity initial_density(InitialState s);

/// Bayesian update of the filter after outcome o of a parity measurement in the
/// given basis. Throws ImpossibleOutcome when the filter assigns o probability 0.
FilterState filter_update(const FilterState &fs, const KrausSet &ks, Outcome o, Basis basis = Basis::z);

/// Propagates the filter through one relaxation period.
FilterState filter_damp(const FilterState &fs, const AmplitudeDamping &damping);

/// Applies a local gate to the filter; bell mode uses the induced permutation.
FilterState filter_gate(const FilterState &fs, LocalGate gate);

enum class Decision : std::uint8_t { skip, apply_pi };
Decision controller_decide(const FilterState &fs, Basis basis = Basis::z);

struct StepRecord {
    Outcome outcome;
    Basis basis;
    bool pulse_fired;
    double p_odd_filter;  // the value the controller compared against 1/2
};

/// Caches the Kraus set and damping channel for repeated steps of one config.
class FeedbackStepper {
   public:
    explicit FeedbackStepper(const FeedbackConfig &cfg);
    FeedbackStepper(const FeedbackConfig &cfg, const KrausSet &ks);

    const FeedbackConfig &config() const { return cfg_; }
    const KrausSet &kraus() const { return ks_; }

    /// One iteration of the configured picture; iteration selects the basis in
    /// the Heisenberg picture (even: z, odd: x).
    StepRecord step(TwoQubitDensity &rho, FilterState &fs, RandomStream &rng, std::int64_t iteration) const;

    /// damp, measure, filter, conditional X on qubit A, R_y(pi/2) on both.
    StepRecord schrodinger(TwoQubitDensity &rho, FilterState &fs, RandomStream &rng) const;
    /// The Schrodinger iteration seen from the frame rotated by the accumulated
    /// pi/2 pulses F_k = (R_y(pi/2) x R_y(pi/2))^k: damp and measure through
    /// F_k, filter, conditional X_A (z) or Z_A (x). Both pictures draw the same
    /// outcome from the same uniform and agree on fid_be_plus.
    StepRecord heisenberg(TwoQubitDensity &rho, FilterState &fs, RandomStream &rng, std::int64_t iteration) const;

    /// Measurement-only iteration: damp then measure, no pulses.
    Outcome open_loop(TwoQubitDensity &rho, RandomStream &rng) const;

   private:
    void damp(TwoQubitDensity &rho, FilterState *fs) const;
    void damp_in_frame(TwoQubitDensity &rho, FilterState &fs, int frame) const;

    FeedbackConfig cfg_;
    KrausSet ks_;
    std::array<KrausSet, 4> frame_ks_;  // F_k^T M F_k
    std::optional<AmplitudeDamping> damping_;
};

struct FeedbackStepResult {
    TwoQubitDensity rho;
    FilterState filter;
    Outcome outcome;
    bool pulse_fired;
};

FeedbackStepResult feedback_step(const TwoQubitDensity &rho, const FilterState &fs, const FeedbackConfig &cfg,
                                 const KrausSet &ks, RandomStream &rng);
FeedbackStepResult heisenberg_step(const TwoQubitDensity &rho, const FilterState &fs, const FeedbackConfig &cfg,
                                   const KrausSet &ks, RandomStream &rng, std::int64_t iteration);

}  // namespace catparity
