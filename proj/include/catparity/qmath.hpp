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

// Two-qubit state algebra shared by every other module. Basis order is fixed
// as |00>, |01>, |10>, |11> with qubit A the left (most significant) bit.

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace catparity {

using Complex = std::complex<double>;
using Ket4 = std::array<Complex, 4>;
/// Real 4x4 operator, row-major.
using RealMat4 = std::array<double, 16>;

enum class Sign : std::uint8_t { plus, minus };

/// Index order used for every Bell-basis vector: B+e, B-e, B+o, B-o.
enum class BellState : std::uint8_t { even_plus = 0, even_minus = 1, odd_plus = 2, odd_minus = 3 };

/// Mean photon number alpha^2 (alpha real, >= 0) and channel transmittance eta.
struct CatParams {
    double alpha2 = 0.0;
    double eta = 1.0;

    /// Throws DomainError when alpha2 < 0 or eta is outside [0, 1].
    static CatParams make(double alpha2, double eta);
    double alpha() const;
};

/// Qubit relaxation per measurement iteration. `t1_over_titer` is T1 in units
/// of one iteration; `gamma` the matching per-iteration decay probability.
struct DecayParams {
    double t1_over_titer = 0.0;
    double gamma = 0.0;

    /// gamma = 1 - exp(-1 / t1_over_titer). Infinity is allowed and gives gamma = 0.
    static DecayParams from_t1_ratio(double t1_over_titer);
};

/// 4x4 complex density matrix over the two target qubits.
class TwoQubitDensity {
   public:
    TwoQubitDensity() = default;  // zero matrix; only meaningful as an accumulator

    static TwoQubitDensity from_entries(const std::array<Complex, 16> &entries);
    static TwoQubitDensity pure(const Ket4 &psi);
    static TwoQubitDensity bell(BellState b);
    static TwoQubitDensity computational(int label);
    static TwoQubitDensity maximally_mixed();
    /// Bell-diagonal state with populations ordered as BellState.
    static TwoQubitDensity from_bell_populations(const std::array<double, 4> &p);

    Complex operator()(int i, int j) const { return e_[4 * i + j]; }
    Complex &at(int i, int j) { return e_[4 * i + j]; }
    double population(int i) const { return e_[5 * i].real(); }

    /// Interleaved (re, im) view used by the kernels; 32 doubles.
    const double *raw() const { return reinterpret_cast<const double *>(e_.data()); }
    double *raw() { return reinterpret_cast<double *>(e_.data()); }
    const std::array<Complex, 16> &entries() const { return e_; }

    double trace() const;

    struct Diagnostics {
        double hermiticity_error;  // max |rho_ij - conj(rho_ji)|
        double trace_error;        // |tr rho - 1|
        double min_eigenvalue;
    };
    Diagnostics diagnose() const;
    /// Throws NumericFailure if any state invariant is violated.
    void check(double herm_tol = 1e-12, double trace_tol = 1e-12, double psd_tol = 1e-10) const;

    friend bool operator==(const TwoQubitDensity &, const TwoQubitDensity &) = default;

   private:
    alignas(32) std::array<Complex, 16> e_{};
};

/// Largest |a_ij - b_ij|.
double max_abs_diff(const TwoQubitDensity &a, const TwoQubitDensity &b);

/// N_beta^{+-} = sqrt(2 +- 2 exp(-2 beta^2)), taking beta^2 directly.
double norm_const(double beta2, Sign sign);

Ket4 bell_ket(BellState b);
/// Rows are the Bell kets in BellState order; maps computational to Bell coordinates.
std::array<Complex, 16> bell_basis_change();
/// <B|rho|B> for the four Bell states.
std::array<double, 4> bell_populations(const TwoQubitDensity &rho);
/// tr(Q+ rho), tr(Q- rho) with Q+ = |00><00| + |11><11|.
std::array<double, 2> parity_probabilities(const TwoQubitDensity &rho);

/// <psi|rho|psi>.
double fidelity(const TwoQubitDensity &rho, const Ket4 &psi);

enum class LocalGate : std::uint8_t {
    x_a_pi,          // X on qubit A
    y_both_half_pi,  // R_y(pi/2) on both qubits
    z_a_pi,          // Z on qubit A
    hadamard_both,   // H on both qubits
};
const RealMat4 &gate_matrix(LocalGate gate);

/// U rho U^T for a real 4x4 U.
TwoQubitDensity conjugate(const TwoQubitDensity &rho, const RealMat4 &u);
TwoQubitDensity apply_local_gate(const TwoQubitDensity &rho, LocalGate gate);

/// Independent single-qubit amplitude damping of both qubits; Kraus operators
/// cached per gamma.
class AmplitudeDamping {
   public:
    explicit AmplitudeDamping(double gamma);
    double gamma() const { return gamma_; }
    TwoQubitDensity apply(const TwoQubitDensity &rho) const;

   private:
    double gamma_;
    std::array<RealMat4, 4> ops_;
};
TwoQubitDensity amplitude_damp(const TwoQubitDensity &rho, double gamma);

/// Wootters concurrence and the entanglement of formation derived from it.
double concurrence(const TwoQubitDensity &rho);
double entanglement_of_formation(const TwoQubitDensity &rho);

}  // namespace catparity
