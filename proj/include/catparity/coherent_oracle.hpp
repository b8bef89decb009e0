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

// Exact re-derivation of the measurement operators by pushing each qubit basis
// state through the physical pipeline (qubit A gate, lossy beam splitter,
// qubit B gate, parity detection of probe and environment) in a representation
// of finite superpositions of real-amplitude coherent states. Every stage maps
// the span of |+beta>, |-beta> to itself, so no truncation is involved.

#include <vector>

#include "catparity/cat_kraus.hpp"
#include "catparity/error.hpp"
#include "catparity/qmath.hpp"

namespace catparity::oracle {

/// Raised when a pipeline stage sees amplitudes from the wrong stage.
class PipelineError : public DomainError {
   public:
    using DomainError::DomainError;
};

/// coeff * |label>_AB |probe>_p |env>_env, coherent states with real amplitudes.
struct Term {
    int label;  // 2 * qA + qB
    double probe;
    double env;
    Complex coeff;
};

struct JointKet {
    std::vector<Term> terms;
};

enum class Mode { probe, env };

struct ParityProjector {
    Mode mode;
    Sign sign;  // plus = even photon number
};

struct Projection {
    JointKet ket;   // unnormalized
    double weight;  // squared norm
};

/// <b1|b2> = exp(-(b1 - b2)^2 / 2) for real amplitudes.
double coherent_overlap(double b1, double b2);

/// Squared norm using the coherent-state Gram matrix.
double norm2(const JointKet &ket);

/// |label> (x) |C+_alpha> (x) |0>_env.
JointKet initial_ket(int label, double alpha);
/// sum_q c_q |q> (x) |C+_alpha> (x) |0>_env.
JointKet initial_ket(const Ket4 &c, double alpha);

/// Combine terms with identical (label, probe, env) and drop exact zeros.
JointKet merged(const JointKet &ket);

/// Flip the probe cat parity on terms where qubit A is |1>. Probe amplitudes must be +-alpha.
JointKet apply_UA(const JointKet &ket, double alpha);
/// Same for qubit B; probe amplitudes must be +-sqrt(eta) alpha.
JointKet apply_UB(const JointKet &ket, double sqrt_eta_alpha);
/// |b>|0> -> |sqrt(eta) b>|sqrt(1-eta) b>. Env amplitudes must be zero.
JointKet apply_beamsplitter(const JointKet &ket, double eta);

/// Photon-number parity projection of one mode: |g> -> (|g> +- |-g>) / 2.
Projection project_parity(const JointKet &ket, ParityProjector proj);

/// <label| <C^probe_sign_{probe_beta}| <C^env_sign_{env_beta}| ket>. Zero when
/// the requested cat does not exist (odd cat of the vacuum).
Complex cat_amplitude(const JointKet &ket, int label, Sign probe_sign, double probe_beta, Sign env_sign,
                      double env_beta);

/// Runs the full pipeline; alpha is sqrt(alpha2). Returns the state just
/// before detection.
JointKet run_pipeline(const JointKet &initial, const CatParams &params);

/// Kraus operators read off the projected pipeline states. Requires
/// alpha2 > 0 and eta in (0, 1].
KrausSet derive_kraus(const CatParams &params);

/// Largest elementwise difference between two Kraus sets.
double max_kraus_deviation(const KrausSet &a, const KrausSet &b);

}  // namespace catparity::oracle
