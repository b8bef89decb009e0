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

#include "catparity/abstract_protocol.hpp"

#include <cmath>
#include <string>

#include "catparity/error.hpp"

namespace catparity {
namespace {

constexpr double kTol = 1e-12;

bool even_label(int i) { return i == 0 || i == 3; }

// Unnormalized w_same * Q_o rho Q_o + w_other * Q_o' rho Q_o'.
TwoQubitDensity parity_mix(const TwoQubitDensity &rho, Parity favored, double w_same, double w_other) {
    TwoQubitDensity out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (even_label(i) != even_label(j)) continue;
            const bool in_favored = even_label(i) == (favored == Parity::even);
            out.at(i, j) = (in_favored ? w_same : w_other) * rho(i, j);
        }
    return out;
}

XiResult normalize(TwoQubitDensity unnorm, Outcome o) {
    const double p = unnorm.trace();
    if (!(p >= kZeroProbability)) {
        throw ImpossibleOutcome(std::string("outcome ") + (o == Outcome::plus ? "+" : "-") + " has probability " +
                                std::to_string(p));
    }
    auto e = unnorm.entries();
    for (auto &x : e) x /= p;
    return {p, TwoQubitDensity::from_entries(e)};
}

ProbeMatrix matrix_power(const ProbeMatrix &m, int k) {
    ProbeMatrix r = ProbeMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) r = m * r;
    return r;
}

using Ket8 = std::array<Complex, 8>;  // index 4a + 2b + p

Ket8 cnot_to_probe(const Ket8 &psi, int control_bit) {
    Ket8 out{};
    for (int i = 0; i < 8; ++i) {
        const bool c = (i >> control_bit) & 1;
        out[c ? (i ^ 1) : i] += psi[i];
    }
    return out;
}

Ket8 z_on_probe(const Ket8 &psi) {
    Ket8 out = psi;
    for (int i = 1; i < 8; i += 2) out[i] = -out[i];
    return out;
}

// Runs the probe-qubit circuit on target psi with the probe in |0>, optionally
// flipping the probe phase in transit, and returns the targets for probe result 0.
Ket4 probe_circuit(const Ket4 &target, bool phase_flip) {
    Ket8 s{};
    for (int t = 0; t < 4; ++t) s[2 * t] = target[t];
    s = cnot_to_probe(s, 2);
    if (phase_flip) s = z_on_probe(s);
    s = cnot_to_probe(s, 1);
    Ket4 out{};
    for (int t = 0; t < 4; ++t) {
        out[t] = s[2 * t];
        if (std::abs(s[2 * t + 1]) > kTol) throw NumericFailure("probe left in |1> for an even target");
    }
    return out;
}

}  // namespace

XiModel XiModel::make(double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("xi must lie in [0, 1]");
    return {xi};
}

XiResult xi_measurement(const TwoQubitDensity &rho, const XiModel &xm, Outcome o) {
    const Parity favored = o == Outcome::plus ? Parity::even : Parity::odd;
    return normalize(parity_mix(rho, favored, xm.xi, 1.0 - xm.xi), o);
}

void check_pmf(const std::vector<double> &pmf) {
    if (pmf.empty()) throw DomainError("pmf is empty");
    double sum = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0)) throw DomainError("pmf has a negative or NaN entry");
        sum += p;
    }
    if (!(std::abs(sum - 1.0) <= kTol)) throw DomainError("pmf sums to " + std::to_string(sum));
}

std::vector<double> poisson_pmf(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("poisson_pmf: lambda must be finite and >= 0");
    std::vector<double> pmf;
    double term = std::exp(-lambda);
    double cumulative = 0.0;
    for (int n = 0;; ++n) {
        if (n > 0) term *= lambda / n;
        pmf.push_back(term);
        cumulative += term;
        if (n > lambda && 1.0 - cumulative < 1e-17) break;
        if (n > lambda && term < 1e-300) break;
    }
    return pmf;
}

double xi_from_bitflips(const std::vector<double> &pmf) {
    check_pmf(pmf);
    double even = 0.0;
    for (std::size_t n = 0; n < pmf.size(); n += 2) even += pmf[n];
    return even;
}

void ProbeChannelSpec::validate() const {
    const auto d = u_c.rows();
    if (d < 1 || u_c.cols() != d) throw DomainError("u_c must be square");
    if (n_root < 2 || n_root % 2 != 0) throw DomainError("n_root must be even and >= 2");
    const ProbeMatrix id = ProbeMatrix::Identity(d, d);
    if ((u_c.adjoint() * u_c - id).cwiseAbs().maxCoeff() > kTol) throw DomainError("u_c is not unitary");
    if ((matrix_power(u_c, n_root) - id).cwiseAbs().maxCoeff() > kTol) {
        throw DomainError("u_c^n_root differs from the identity");
    }
    if (psi0.size() != d) throw DomainError("psi0 dimension does not match u_c");
    if (std::abs(psi0.norm() - 1.0) > kTol) throw DomainError("psi0 is not normalized");
    check_pmf(loss_distribution);
}

ProbeMatrix ProbeChannelSpec::v_gate() const { return matrix_power(u_c, n_root / 2); }

ProbeChannelSpec ProbeChannelSpec::bit_flip() {
    ProbeChannelSpec s;
    s.u_c = ProbeMatrix::Zero(2, 2);
    s.u_c(0, 1) = 1.0;
    s.u_c(1, 0) = 1.0;
    s.n_root = 2;
    s.psi0 = ProbeVector::Zero(2);
    s.psi0(0) = 1.0;
    return s;
}

ProbeChannelSpec ProbeChannelSpec::quarter_phase() {
    ProbeChannelSpec s;
    s.u_c = ProbeMatrix::Zero(2, 2);
    s.u_c(0, 0) = 1.0;
    s.u_c(1, 1) = Complex(0.0, 1.0);
    s.n_root = 4;
    s.psi0 = ProbeVector::Constant(2, Complex(std::sqrt(0.5), 0.0));
    return s;
}

ProbeChannelSpec ProbeChannelSpec::cyclic_shift(int d) {
    if (d < 2 || d % 2 != 0) throw DomainError("cyclic_shift: d must be even and >= 2");
    ProbeChannelSpec s;
    s.u_c = ProbeMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) s.u_c((i + 1) % d, i) = 1.0;
    s.n_root = d;
    s.psi0 = ProbeVector::Zero(d);
    s.psi0(0) = 1.0;
    return s;
}

Ket4 generic_parity_ket(Parity parity) {
    if (parity == Parity::even) return {Complex(0.6, 0.0), 0.0, 0.0, Complex(0.0, 0.8)};
    return {0.0, Complex(0.8, 0.0), Complex(0.0, -0.6), 0.0};
}

RootChannelResult root_channel_demo(const ProbeChannelSpec &spec, const Ket4 &target, int n_applied) {
    spec.validate();
    if (n_applied < 0) throw DomainError("n_applied must be >= 0");
    const ProbeMatrix v = spec.v_gate();
    const ProbeMatrix channel = matrix_power(spec.u_c, n_applied);

    // Joint state as four probe vectors, one per target basis label |ab>.
    std::array<ProbeVector, 4> joint;
    for (int t = 0; t < 4; ++t) {
        ProbeVector p = target[t] * spec.psi0;
        if (t & 2) p = v * p;  // conditioned on q_A
        p = channel * p;
        if (t & 1) p = v * p;  // conditioned on q_B
        joint[t] = p;
    }

    int lead = 0;
    for (int t = 1; t < 4; ++t)
        if (std::abs(target[t]) > std::abs(target[lead])) lead = t;
    ProbeVector probe_out = joint[lead] / target[lead];

    double err = 0.0;
    for (int t = 0; t < 4; ++t) err = std::max(err, (joint[t] - target[t] * probe_out).cwiseAbs().maxCoeff());
    return {probe_out, err <= kTol};
}

RootChannelResult root_channel_demo(const ProbeChannelSpec &spec, Parity target_parity, int n_applied) {
    return root_channel_demo(spec, generic_parity_ket(target_parity), n_applied);
}

ProbeMatrix root_channel_probe_mixture(const ProbeChannelSpec &spec, Parity target_parity) {
    spec.validate();
    const auto d = spec.u_c.rows();
    ProbeMatrix rho = ProbeMatrix::Zero(d, d);
    for (std::size_t n = 0; n < spec.loss_distribution.size(); ++n) {
        const ProbeVector out = root_channel_demo(spec, target_parity, static_cast<int>(n)).probe_out;
        rho += spec.loss_distribution[n] * out * out.adjoint();
    }
    return rho;
}

PhaseflipReport phaseflip_counterexample() {
    const double s = std::sqrt(0.5);
    PhaseflipReport r;
    r.psi_plus = {s, 0.0, 0.0, s};
    const Ket4 psi_minus = {-s, 0.0, 0.0, s};
    r.without_flip = probe_circuit(r.psi_plus, false);
    r.with_flip = probe_circuit(r.psi_plus, true);
    Complex overlap = 0.0;
    for (int i = 0; i < 4; ++i) overlap += std::conj(psi_minus[i]) * r.with_flip[i];
    r.overlap_with_psi_minus = std::abs(overlap);

    const TwoQubitDensity a = TwoQubitDensity::pure(r.without_flip);
    const TwoQubitDensity b = TwoQubitDensity::pure(r.with_flip);
    std::array<Complex, 16> mix{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mix[4 * i + j] = 0.5 * (a(i, j) + b(i, j));
    r.mixture = TwoQubitDensity::from_entries(mix);
    r.concurrence_pure = concurrence(a);
    r.concurrence_mixture = concurrence(r.mixture);
    r.eof_mixture = entanglement_of_formation(r.mixture);
    return r;
}

std::array<EntanglementBranch, 4> entanglement_parity_branches(const TwoQubitDensity &rho_targets) {
    // After the two local CNOTs the ancillas read (x, y) only for target labels
    // |xy> and |x'y'> (complemented), each with amplitude 1/sqrt(2). Projecting
    // therefore leaves (1/2) Q rho Q restricted to that pair, which is a parity block.
    std::array<EntanglementBranch, 4> out{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const int k = 2 * x + y;
            const int partner = 3 - k;
            TwoQubitDensity unnorm;
            for (int i : {k, partner})
                for (int j : {k, partner}) unnorm.at(i, j) = 0.5 * rho_targets(i, j);
            EntanglementBranch &br = out[k];
            br.a1 = x;
            br.b1 = y;
            br.prob = unnorm.trace();
            if (br.prob > 0.0) {
                auto e = unnorm.entries();
                for (auto &v : e) v /= br.prob;
                br.state = TwoQubitDensity::from_entries(e);
            }
        }
    return out;
}

EntanglementParityResult entanglement_based_parity(const TwoQubitDensity &rho_targets, RandomStream &rng) {
    const auto branches = entanglement_parity_branches(rho_targets);
    const double u = rng.uniform();
    double cumulative = 0.0;
    int pick = -1;
    for (int k = 0; k < 4; ++k) {
        if (branches[k].prob <= kZeroProbability) continue;
        pick = k;
        cumulative += branches[k].prob;
        if (u < cumulative) break;
    }
    if (pick < 0) throw NumericFailure("entanglement_based_parity: no branch has positive probability");
    const EntanglementBranch &b = branches[pick];
    return {b.a1 == b.b1 ? Outcome::plus : Outcome::minus, b.a1, b.b1, b.state};
}

XiResult entanglement_parity_noisy(const TwoQubitDensity &rho_targets, double flip_prob, Outcome o) {
    if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) throw DomainError("flip_prob must lie in [0, 1]");
    const auto branches = entanglement_parity_branches(rho_targets);
    const double keep = (1.0 - flip_prob) * (1.0 - flip_prob) + flip_prob * flip_prob;
    TwoQubitDensity unnorm;
    for (const auto &b : branches) {
        if (b.prob == 0.0) continue;
        const bool reads_plus = b.a1 == b.b1;
        const double w = (reads_plus == (o == Outcome::plus)) ? keep : 1.0 - keep;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) unnorm.at(i, j) += w * b.prob * b.state(i, j);
    }
    return normalize(unnorm, o);
}

}  // namespace catparity
