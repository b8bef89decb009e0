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

#include "catparity/feedback.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "catparity/error.hpp"

namespace catparity {
namespace {

using Perm = std::array<int, 4>;

// Image of each Bell index under a local gate (signs dropped; populations only).
Perm bell_permutation(LocalGate gate) {
    switch (gate) {
        case LocalGate::x_a_pi:
            return {2, 3, 0, 1};
        case LocalGate::y_both_half_pi:
            return {0, 2, 1, 3};
        case LocalGate::z_a_pi:
            return {1, 0, 3, 2};
        case LocalGate::hadamard_both:
            return {0, 2, 1, 3};
    }
    return {0, 1, 2, 3};
}

BellPopulations permute(const BellPopulations &b, const Perm &perm) {
    BellPopulations out;
    for (int i = 0; i < 4; ++i) out.p[perm[i]] = b.p[i];
    return out;
}

// Restriction of the z-basis outcome map to Bell-diagonal states: each parity
// pair (a on the first basis state, d on the second) mixes its + and - Bell
// populations through (a +- d)^2 / 4.
BellPopulations bell_update_z(const BellPopulations &b, const KrausSet &ks, Outcome o) {
    if (!ks.diagonal) throw DomainError("bell filter requires a diagonal Kraus set");
    BellPopulations out;
    out.p = {0.0, 0.0, 0.0, 0.0};
    const Sign probe = o == Outcome::plus ? Sign::plus : Sign::minus;
    for (Sign env : {Sign::plus, Sign::minus}) {
        const auto m = ks.diag(probe, env);
        const double even_sum = 0.25 * (m[0] + m[3]) * (m[0] + m[3]);
        const double even_dif = 0.25 * (m[0] - m[3]) * (m[0] - m[3]);
        const double odd_sum = 0.25 * (m[1] + m[2]) * (m[1] + m[2]);
        const double odd_dif = 0.25 * (m[1] - m[2]) * (m[1] - m[2]);
        out.p[0] += b.p[0] * even_sum + b.p[1] * even_dif;
        out.p[1] += b.p[0] * even_dif + b.p[1] * even_sum;
        out.p[2] += b.p[2] * odd_sum + b.p[3] * odd_dif;
        out.p[3] += b.p[2] * odd_dif + b.p[3] * odd_sum;
    }
    const double total = out.p[0] + out.p[1] + out.p[2] + out.p[3];
    if (!(total > kZeroProbability)) {
        throw ImpossibleOutcome("bell filter assigns zero probability to outcome " +
                                std::string(o == Outcome::plus ? "+" : "-"));
    }
    for (double &x : out.p) x /= total;
    return out;
}

const RealMat4 &hadamard() { return gate_matrix(LocalGate::hadamard_both); }

}  // namespace

BellPopulations BellPopulations::of(const TwoQubitDensity &rho) { return {bell_populations(rho)}; }

void BellPopulations::check(double tol) const {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= -tol)) throw NumericFailure("bell populations: negative entry " + std::to_string(x));
        sum += x;
    }
    if (!(std::abs(sum - 1.0) <= tol)) throw NumericFailure("bell populations: sum " + std::to_string(sum));
}

FilterState FilterState::initial(FilterMode mode, const TwoQubitDensity &rho0) {
    FilterState fs;
    fs.mode = mode;
    if (mode == FilterMode::full) {
        fs.full_rho = rho0;
    } else {
        fs.pops = BellPopulations::of(rho0);
    }
    return fs;
}

BellPopulations FilterState::bell_diagonal() const {
    return mode == FilterMode::full ? BellPopulations::of(full_rho) : pops;
}

double FilterState::odd_probability(Basis basis) const {
    if (mode == FilterMode::bell) return basis == Basis::z ? pops.odd_z() : pops.odd_x();
    if (basis == Basis::z) return parity_probabilities(full_rho)[1];
    return parity_probabilities(conjugate(full_rho, hadamard()))[1];
}

void FeedbackConfig::validate() const {
    CatParams::make(cat.alpha2, cat.eta);
    if (steps < 1) throw UsageError("steps must be >= 1");
    if (decay && !(decay->t1_over_titer > 0.0)) throw DomainError("t1 ratio must be > 0");
}

TwoQubitDensity initial_density(InitialState s) {
    if (s == InitialState::bell_e_plus) return TwoQubitDensity::bell(BellState::even_plus);
    return TwoQubitDensity::pure({0.5, 0.5, 0.5, 0.5});
}

FilterState filter_update(const FilterState &fs, const KrausSet &ks, Outcome o, Basis basis) {
    FilterState out = fs;
    if (fs.mode == FilterMode::full) {
        if (basis == Basis::z) {
            out.full_rho = apply_outcome(fs.full_rho, ks, o);
        } else {
            out.full_rho = conjugate(apply_outcome(conjugate(fs.full_rho, hadamard()), ks, o), hadamard());
        }
        return out;
    }
    if (basis == Basis::z) {
        out.pops = bell_update_z(fs.pops, ks, o);
    } else {
        const Perm h = bell_permutation(LocalGate::hadamard_both);
        out.pops = permute(bell_update_z(permute(fs.pops, h), ks, o), h);
    }
    return out;
}

FilterState filter_damp(const FilterState &fs, const AmplitudeDamping &damping) {
    if (damping.gamma() == 0.0) return fs;
    FilterState out = fs;
    if (fs.mode == FilterMode::full) {
        out.full_rho = damping.apply(fs.full_rho);
    } else {
        out.pops = BellPopulations::of(damping.apply(TwoQubitDensity::from_bell_populations(fs.pops.p)));
    }
    return out;
}

FilterState filter_gate(const FilterState &fs, LocalGate gate) {
    FilterState out = fs;
    if (fs.mode == FilterMode::full) {
        out.full_rho = apply_local_gate(fs.full_rho, gate);
    } else {
        out.pops = permute(fs.pops, bell_permutation(gate));
    }
    return out;
}

Decision controller_decide(const FilterState &fs, Basis basis) {
    return fs.odd_probability(basis) > 0.5 ? Decision::apply_pi : Decision::skip;
}

FeedbackStepper::FeedbackStepper(const FeedbackConfig &cfg) : FeedbackStepper(cfg, build_kraus(cfg.cat)) {}

FeedbackStepper::FeedbackStepper(const FeedbackConfig &cfg, const KrausSet &ks) : cfg_(cfg), ks_(ks) {
    cfg_.validate();
    if (cfg_.decay && cfg_.decay->gamma > 0.0) damping_.emplace(cfg_.decay->gamma);
    const RealMat4 &r = gate_matrix(LocalGate::y_both_half_pi);
    RealMat4 f{};
    for (int i = 0; i < 4; ++i) f[5 * i] = 1.0;
    for (int k = 0; k < 4; ++k) {
        RealMat4 ft{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) ft[4 * i + j] = f[4 * j + i];
        frame_ks_[k] = k == 0 ? ks_ : ks_.conjugated(ft);
        RealMat4 next{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double acc = 0.0;
                for (int m = 0; m < 4; ++m) acc += r[4 * i + m] * f[4 * m + j];
                next[4 * i + j] = acc;
            }
        f = next;
    }
}

void FeedbackStepper::damp(TwoQubitDensity &rho, FilterState *fs) const {
    if (!damping_) return;
    rho = damping_->apply(rho);
    if (fs) *fs = filter_damp(*fs, *damping_);
}

// Relaxation acts in the lab frame: rotate out by F_k, damp, rotate back (R^4 = -1).
void FeedbackStepper::damp_in_frame(TwoQubitDensity &rho, FilterState &fs, int frame) const {
    if (!damping_) return;
    for (int i = 0; i < frame; ++i) {
        rho = apply_local_gate(rho, LocalGate::y_both_half_pi);
        fs = filter_gate(fs, LocalGate::y_both_half_pi);
    }
    damp(rho, &fs);
    for (int i = 0; i < (4 - frame) % 4; ++i) {
        rho = apply_local_gate(rho, LocalGate::y_both_half_pi);
        fs = filter_gate(fs, LocalGate::y_both_half_pi);
    }
}

StepRecord FeedbackStepper::step(TwoQubitDensity &rho, FilterState &fs, RandomStream &rng,
                                 std::int64_t iteration) const {
    return cfg_.picture == Picture::schrodinger ? schrodinger(rho, fs, rng) : heisenberg(rho, fs, rng, iteration);
}

StepRecord FeedbackStepper::schrodinger(TwoQubitDensity &rho, FilterState &fs, RandomStream &rng) const {
    damp(rho, &fs);
    Measurement m = sample_measurement(rho, ks_, rng);
    rho = m.state;
    fs = filter_update(fs, ks_, m.outcome, Basis::z);
    const double p_odd = fs.odd_probability(Basis::z);
    const bool fire = controller_decide(fs, Basis::z) == Decision::apply_pi;
    if (fire) {
        rho = apply_local_gate(rho, LocalGate::x_a_pi);
        fs = filter_gate(fs, LocalGate::x_a_pi);
    }
    rho = apply_local_gate(rho, LocalGate::y_both_half_pi);
    fs = filter_gate(fs, LocalGate::y_both_half_pi);
    return {m.outcome, Basis::z, fire, p_odd};
}

StepRecord FeedbackStepper::heisenberg(TwoQubitDensity &rho, FilterState &fs, RandomStream &rng,
                                       std::int64_t iteration) const {
    const int frame = static_cast<int>(((iteration % 4) + 4) % 4);
    damp_in_frame(rho, fs, frame);
    const Basis basis = frame % 2 == 0 ? Basis::z : Basis::x;
    const KrausSet &ks = frame_ks_[frame];
    Measurement m = sample_measurement(rho, ks, rng);
    rho = m.state;
    if (fs.mode == FilterMode::full) {
        fs.full_rho = apply_outcome(fs.full_rho, ks, m.outcome);
    } else {
        // The Bell-population update only sees (a + d)^2 and (a - d)^2, so every frame of a basis shares it.
        fs = filter_update(fs, ks_, m.outcome, basis);
    }
    const double p_odd = fs.odd_probability(basis);
    const bool fire = controller_decide(fs, basis) == Decision::apply_pi;
    if (fire) {
        const LocalGate g = basis == Basis::z ? LocalGate::x_a_pi : LocalGate::z_a_pi;
        rho = apply_local_gate(rho, g);
        fs = filter_gate(fs, g);
    }
    return {m.outcome, basis, fire, p_odd};
}

Outcome FeedbackStepper::open_loop(TwoQubitDensity &rho, RandomStream &rng) const {
    damp(rho, nullptr);
    Measurement m = sample_measurement(rho, ks_, rng);
    rho = m.state;
    return m.outcome;
}

FeedbackStepResult feedback_step(const TwoQubitDensity &rho, const FilterState &fs, const FeedbackConfig &cfg,
                                 const KrausSet &ks, RandomStream &rng) {
    FeedbackStepResult r{rho, fs, Outcome::plus, false};
    const StepRecord rec = FeedbackStepper(cfg, ks).schrodinger(r.rho, r.filter, rng);
    r.outcome = rec.outcome;
    r.pulse_fired = rec.pulse_fired;
    return r;
}

FeedbackStepResult heisenberg_step(const TwoQubitDensity &rho, const FilterState &fs, const FeedbackConfig &cfg,
                                   const KrausSet &ks, RandomStream &rng, std::int64_t iteration) {
    FeedbackStepResult r{rho, fs, Outcome::plus, false};
    const StepRecord rec = FeedbackStepper(cfg, ks).heisenberg(r.rho, r.filter, rng, iteration);
    r.outcome = rec.outcome;
    r.pulse_fired = rec.pulse_fired;
    return r;
}

}  // namespace catparity
