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

// Closed-form predictors: per-measurement contraction rates, the Lyapunov and
// coherence diagnostics, the measurement-count estimate, the Bell-population
// rate model with its steady state, and the probe-size optimizer.

#include <array>
#include <optional>

#include "catparity/cat_kraus.hpp"
#include "catparity/error.hpp"
#include "catparity/qmath.hpp"

namespace catparity {

/// Raised when the transcendental count equation has no positive root, or the
/// optimizer objective has no interior optimum (eta <= 1/2).
class NoSolution : public DomainError {
   public:
    using DomainError::DomainError;
};

/// Log-contraction per measurement. r_parity is +inf at eta = 1, r_dephasing at eta = 0.
struct RatePair {
    double r_parity;
    double r_dephasing;
};

/// n_meas is the real-valued number of measurements at which the parity and
/// dephasing error contributions balance; f_meas the matching fidelity estimate.
struct MeasEstimate {
    double n_meas;
    double f_meas;
};

RatePair rates(const CatParams &params);

/// sqrt(<00|rho|00><10|rho|10>) + sqrt(<11|rho|11><01|rho|01>).
double lyapunov_V(const TwoQubitDensity &rho);
/// |<00|rho|11>| + |<01|rho|10>|.
double coherence_C(const TwoQubitDensity &rho);

enum class Diagnostic { V, C };

struct Contraction {
    double before;
    double expected_after;  // sum over outcomes of P(o) f(K_o(rho))
    double analytic_factor;
};
Contraction expected_contraction(const TwoQubitDensity &rho, const KrausSet &ks, Diagnostic which);

/// Per-measurement factor of <V> (or <C>) predicted in closed form.
double contraction_factor(const CatParams &params, Diagnostic which);

/// Principal branch of Lambert W on [0, inf). Throws DomainError for x < 0.
double lambert_w0(double x);

/// Root of exp(-r_p n) + exp(-r_d n) = 1. Requires eta in (1/2, 1).
MeasEstimate solve_nmeas(const CatParams &params);
/// Same equation with injected rates; requires 0 < r_d <= r_p < inf.
MeasEstimate solve_nmeas(const RatePair &r);

struct LambertEstimate {
    double n_meas;
    bool valid;  // exp(4 (2 eta - 1) alpha2) >= 100
};
/// W0(r_p / r_d) / r_p. Throws DomainError for eta <= 1/2.
LambertEstimate nmeas_lambert(const CatParams &params);

/// Bell populations in BellState order.
using BellRateState = std::array<double, 4>;

/// Time derivative of the Bell-population rate model. With decay, the
/// dephasing prefactor r_d / 2 becomes r_d / 2 + 1 / (T1 / t_iter).
BellRateState rate_ode(const BellRateState &p, const RatePair &r, const std::optional<DecayParams> &decay);

/// Classical RK4 with fixed step; used only for plotting the model.
BellRateState integrate_rate_ode(BellRateState p, const RatePair &r, const std::optional<DecayParams> &decay,
                                 double t_end, double dt = 0.1);

struct SteadyState {
    double p_target;  // population of B+e
    double delta;     // +inf when r_d = 0 and there is no decay
    BellRateState populations;
};
SteadyState steady_state(const RatePair &r, const std::optional<DecayParams> &decay);
/// delta^2 / (1 + delta)^2, with the delta -> inf limit handled.
double steady_fidelity(double delta);

struct AlphaOptimum {
    double alpha2;
    double objective;  // r_p / (r_d / 2 + t_iter / T1)
    double p_opt;      // predicted steady B+e population
    bool at_boundary;  // maximizer sits on the search window edge
};
inline constexpr double kAlpha2SearchMin = 0.05;
inline constexpr double kAlpha2SearchMax = 30.0;
double alpha_objective(double alpha2, double eta, const DecayParams &decay);
/// Maximizes the objective over alpha2 in [0.05, 30]: log grid then golden section.
AlphaOptimum optimize_alpha(double eta, const DecayParams &decay);

}  // namespace catparity
