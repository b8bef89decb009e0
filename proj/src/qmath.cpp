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

#include "catparity/qmath.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "catparity/error.hpp"
#include "catparity/kernels.hpp"

namespace catparity {
namespace {

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

Matrix4c to_eigen(const TwoQubitDensity &rho) {
    Matrix4c m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rho(i, j);
    return m;
}

RealMat4 kron(const std::array<double, 4> &a, const std::array<double, 4> &b) {
    RealMat4 out{};
    for (int r1 = 0; r1 < 2; ++r1)
        for (int c1 = 0; c1 < 2; ++c1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c2 = 0; c2 < 2; ++c2) out[4 * (2 * r1 + r2) + 2 * c1 + c2] = a[2 * r1 + c1] * b[2 * r2 + c2];
    return out;
}

}  // namespace

CatParams CatParams::make(double alpha2, double eta) {
    if (!(alpha2 >= 0.0) || !std::isfinite(alpha2)) throw DomainError("alpha2 must be finite and >= 0");
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
    return CatParams{alpha2, eta};
}

double CatParams::alpha() const { return std::sqrt(alpha2); }

DecayParams DecayParams::from_t1_ratio(double t1_over_titer) {
    if (!(t1_over_titer > 0.0)) throw DomainError("T1 / t_iter must be > 0");
    return DecayParams{t1_over_titer, -std::expm1(-1.0 / t1_over_titer)};
}

TwoQubitDensity TwoQubitDensity::from_entries(const std::array<Complex, 16> &entries) {
    TwoQubitDensity r;
    r.e_ = entries;
    return r;
}

TwoQubitDensity TwoQubitDensity::pure(const Ket4 &psi) {
    TwoQubitDensity r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.e_[4 * i + j] = psi[i] * std::conj(psi[j]);
    return r;
}

// Built from exact +-1/2 entries rather than products of 1/sqrt(2).
TwoQubitDensity TwoQubitDensity::bell(BellState b) {
    std::array<double, 4> p{};
    p[static_cast<int>(b)] = 1.0;
    return from_bell_populations(p);
}

TwoQubitDensity TwoQubitDensity::computational(int label) {
    if (label < 0 || label > 3) throw DomainError("computational label must be in 0..3");
    TwoQubitDensity r;
    r.e_[5 * label] = 1.0;
    return r;
}

TwoQubitDensity TwoQubitDensity::maximally_mixed() {
    TwoQubitDensity r;
    for (int i = 0; i < 4; ++i) r.e_[5 * i] = 0.25;
    return r;
}

TwoQubitDensity TwoQubitDensity::from_bell_populations(const std::array<double, 4> &p) {
    TwoQubitDensity r;
    const double even = 0.5 * (p[0] + p[1]);
    const double odd = 0.5 * (p[2] + p[3]);
    r.e_[0] = even;
    r.e_[15] = even;
    r.e_[3] = r.e_[12] = 0.5 * (p[0] - p[1]);
    r.e_[5] = odd;
    r.e_[10] = odd;
    r.e_[6] = r.e_[9] = 0.5 * (p[2] - p[3]);
    return r;
}

double TwoQubitDensity::trace() const { return e_[0].real() + e_[5].real() + e_[10].real() + e_[15].real(); }

TwoQubitDensity::Diagnostics TwoQubitDensity::diagnose() const {
    double herm = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) herm = std::max(herm, std::abs(e_[4 * i + j] - std::conj(e_[4 * j + i])));
    const Matrix4c m = to_eigen(*this);
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
    return Diagnostics{herm, std::abs(trace() - 1.0), solver.eigenvalues().minCoeff()};
}

void TwoQubitDensity::check(double herm_tol, double trace_tol, double psd_tol) const {
    const Diagnostics d = diagnose();
    if (d.hermiticity_error > herm_tol || d.trace_error > trace_tol || d.min_eigenvalue < -psd_tol) {
        std::ostringstream msg;
        msg << "density matrix invariant violated: hermiticity " << d.hermiticity_error << ", trace error "
            << d.trace_error << ", min eigenvalue " << d.min_eigenvalue;
        throw NumericFailure(msg.str());
    }
}

double max_abs_diff(const TwoQubitDensity &a, const TwoQubitDensity &b) {
    double m = 0.0;
    for (int k = 0; k < 16; ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

double norm_const(double beta2, Sign sign) {
    if (!(beta2 >= 0.0)) throw DomainError("norm_const: beta^2 must be >= 0");
    const double x = std::exp(-2.0 * beta2);
    if (sign == Sign::plus) return std::sqrt(2.0 + 2.0 * x);
    // 2 - 2 e^{-2 b^2} = -2 expm1(-2 b^2) keeps precision for small beta.
    return std::sqrt(-2.0 * std::expm1(-2.0 * beta2));
}

Ket4 bell_ket(BellState b) {
    const double s = M_SQRT1_2;
    switch (b) {
        case BellState::even_plus:
            return {s, 0.0, 0.0, s};
        case BellState::even_minus:
            return {s, 0.0, 0.0, -s};
        case BellState::odd_plus:
            return {0.0, s, s, 0.0};
        case BellState::odd_minus:
            return {0.0, s, -s, 0.0};
    }
    return {};
}

std::array<Complex, 16> bell_basis_change() {
    std::array<Complex, 16> u{};
    for (int r = 0; r < 4; ++r) {
        const Ket4 k = bell_ket(static_cast<BellState>(r));
        for (int c = 0; c < 4; ++c) u[4 * r + c] = std::conj(k[c]);
    }
    return u;
}

std::array<double, 4> bell_populations(const TwoQubitDensity &rho) {
    const double even = 0.5 * (rho.population(0) + rho.population(3));
    const double odd = 0.5 * (rho.population(1) + rho.population(2));
    const double ce = 0.5 * (rho(0, 3).real() + rho(3, 0).real());
    const double co = 0.5 * (rho(1, 2).real() + rho(2, 1).real());
    return {even + ce, even - ce, odd + co, odd - co};
}

std::array<double, 2> parity_probabilities(const TwoQubitDensity &rho) {
    return {rho.population(0) + rho.population(3), rho.population(1) + rho.population(2)};
}

double fidelity(const TwoQubitDensity &rho, const Ket4 &psi) {
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += std::conj(psi[i]) * rho(i, j) * psi[j];
    return acc.real();
}

const RealMat4 &gate_matrix(LocalGate gate) {
    static const RealMat4 x_a = kron({0, 1, 1, 0}, {1, 0, 0, 1});
    static const RealMat4 z_a = kron({1, 0, 0, -1}, {1, 0, 0, 1});
    // R_y(pi/2) = [[1,-1],[1,1]]/sqrt2; the kron of two is exactly +-1/2.
    static const RealMat4 y_both = [] {
        RealMat4 m = kron({1, -1, 1, 1}, {1, -1, 1, 1});
        for (double &v : m) v *= 0.5;
        return m;
    }();
    static const RealMat4 h_both = [] {
        RealMat4 m = kron({1, 1, 1, -1}, {1, 1, 1, -1});
        for (double &v : m) v *= 0.5;
        return m;
    }();
    switch (gate) {
        case LocalGate::x_a_pi:
            return x_a;
        case LocalGate::y_both_half_pi:
            return y_both;
        case LocalGate::z_a_pi:
            return z_a;
        case LocalGate::hadamard_both:
            return h_both;
    }
    return x_a;
}

TwoQubitDensity conjugate(const TwoQubitDensity &rho, const RealMat4 &u) {
    TwoQubitDensity out;
    kernels::active().conjugate_real_add(u.data(), rho.raw(), out.raw());
    return out;
}

TwoQubitDensity apply_local_gate(const TwoQubitDensity &rho, LocalGate gate) {
    return conjugate(rho, gate_matrix(gate));
}

AmplitudeDamping::AmplitudeDamping(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("damping probability must lie in [0, 1]");
    const std::array<double, 4> k0{1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)};
    const std::array<double, 4> k1{0.0, std::sqrt(gamma), 0.0, 0.0};
    ops_ = {kron(k0, k0), kron(k0, k1), kron(k1, k0), kron(k1, k1)};
}

TwoQubitDensity AmplitudeDamping::apply(const TwoQubitDensity &rho) const {
    if (gamma_ == 0.0) return rho;
    TwoQubitDensity out;
    const auto &k = kernels::active();
    for (const RealMat4 &op : ops_) k.conjugate_real_add(op.data(), rho.raw(), out.raw());
    return out;
}

TwoQubitDensity amplitude_damp(const TwoQubitDensity &rho, double gamma) { return AmplitudeDamping(gamma).apply(rho); }

double concurrence(const TwoQubitDensity &rho) {
    const Matrix4c m = to_eigen(rho);
    Matrix4c yy = Matrix4c::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix4c tilde = yy * m.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix4c> solver(m * tilde, false);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double entanglement_of_formation(const TwoQubitDensity &rho) {
    const double c = std::min(1.0, concurrence(rho));
    const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
    auto h = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
    return h(x) + h(1.0 - x);
}

}  // namespace catparity
