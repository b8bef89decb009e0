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

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "catparity/cat_kraus.hpp"
#include "catparity/qmath.hpp"
#include "catparity/rng.hpp"

namespace catparity {

struct XiModel {
    double xi = 1.0;

    /// Accepts xi in [0, 1]; values below 1/2 describe a meter with swapped labels.
    static XiModel make(double xi);
    bool relabeled() const { return xi < 0.5; }
};

struct XiResult {
    double prob;
    TwoQubitDensity state;
};

/// Parity measurement that reports the true parity with probability xi.
XiResult xi_measurement(const TwoQubitDensity &rho, const XiModel &xm, Outcome o);

/// Validates a probability mass function (nonnegative, sums to 1 within 1e-12).
void check_pmf(const std::vector<double> &pmf);
/// Poisson(lambda) pmf truncated once the remaining tail is below 1e-17.
std::vector<double> poisson_pmf(double lambda);
/// Probability of an even number of bit flips.
double xi_from_bitflips(const std::vector<double> &pmf);

using ProbeMatrix = Eigen::MatrixXcd;
using ProbeVector = Eigen::VectorXcd;

struct ProbeChannelSpec {
    ProbeMatrix u_c;
    int n_root = 2;
    std::vector<double> loss_distribution{1.0};
    ProbeVector psi0;

    /// Throws DomainError unless u_c is square and unitary, n_root is even and
    /// >= 2, (u_c)^n_root = I within 1e-12, psi0 is normalized, and the pmf is valid.
    void validate() const;
    ProbeMatrix v_gate() const;

    static ProbeChannelSpec bit_flip();
    /// diag(1, i) on a qubit probe started in |+>; N = 4, V = Z.
    static ProbeChannelSpec quarter_phase();
    /// Cyclic shift on a d-level probe started in |0>; N = d (d even).
    static ProbeChannelSpec cyclic_shift(int d);
};

enum class Parity : std::uint8_t { even, odd };

struct RootChannelResult {
    ProbeVector probe_out;
    bool target_preserved;
};

/// Targets and probe after conditioned-V at A, n channel uses, conditioned-V at B.
RootChannelResult root_channel_demo(const ProbeChannelSpec &spec, const Ket4 &target, int n_applied);
/// Same with a fixed generic target of the given parity.
RootChannelResult root_channel_demo(const ProbeChannelSpec &spec, Parity target_parity, int n_applied);
Ket4 generic_parity_ket(Parity parity);
/// Probe density matrix after averaging over the channel's loss distribution.
ProbeMatrix root_channel_probe_mixture(const ProbeChannelSpec &spec, Parity target_parity);

struct PhaseflipReport {
    Ket4 psi_plus;
    Ket4 without_flip;
    Ket4 with_flip;
    double overlap_with_psi_minus;  // |<psi_-|with_flip>|
    TwoQubitDensity mixture;        // unread flip with probability 1/2
    double concurrence_pure;
    double concurrence_mixture;
    double eof_mixture;
};
PhaseflipReport phaseflip_counterexample();

struct EntanglementBranch {
    int a1;
    int b1;
    double prob;
    TwoQubitDensity state;  // normalized; zero matrix when prob == 0
};

/// The four ancilla readout branches of the shared-Bell-pair parity circuit.
std::array<EntanglementBranch, 4> entanglement_parity_branches(const TwoQubitDensity &rho_targets);

struct EntanglementParityResult {
    Outcome outcome;
    int a1;
    int b1;
    TwoQubitDensity state;
};
EntanglementParityResult entanglement_based_parity(const TwoQubitDensity &rho_targets, RandomStream &rng);

/// Outcome map when each ancilla readout is flipped independently with
/// probability flip_prob and only the correlation bit is kept.
XiResult entanglement_parity_noisy(const TwoQubitDensity &rho_targets, double flip_prob, Outcome o);

}  // namespace catparity
