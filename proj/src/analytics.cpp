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

#include "catparity/analytics.hpp"

#include <cmath>
#include <limits>

namespace catparity {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - exp(-x) without cancellation.
double one_minus_exp(double x) { return -std::expm1(-x); }

// 0.5 * log((1 - e^{-4a}) / (1 - e^{-4 f a})) for f in (0, 1], evaluated as a
// log1p of the small difference so rates near zero keep full precision.
double half_log_ratio(double a2, double frac) {
    if (frac <= 0.0) return kInf;
    if (frac >= 1.0) return 0.0;
    const double num_minus_den = std::exp(-4.0 * a2) * std::expm1(4.0 * (1.0 - frac) * a2);
    return 0.5 * std::log1p(num_minus_den / one_minus_exp(4.0 * frac * a2));
}

double decay_rate(const std::optional<DecayParams> &decay) {
    return decay ? 1.0 / decay->t1_over_titer : 0.0;
}

}  // namespace

RatePair rates(const CatParams &p) {
    const CatParams params = CatParams::make(p.alpha2, p.eta);
    if (!(params.alpha2 > 0.0)) throw DomainError("rates: alpha2 must be > 0");
    return {half_log_ratio(params.alpha2, 1.0 - params.eta), half_log_ratio(params.alpha2, params.eta)};
}

double lyapunov_V(const TwoQubitDensity &rho) {
    auto pop = [&](int i) { return std::max(0.0, rho.population(i)); };
    return std::sqrt(pop(0) * pop(2)) + std::sqrt(pop(3) * pop(1));
}

double coherence_C(const TwoQubitDensity &rho) { return std::abs(rho(0, 3)) + std::abs(rho(1, 2)); }

double contraction_factor(const CatParams &params, Diagnostic which) {
    const double a2 = params.alpha2;
    const double frac = which == Diagnostic::V ? 1.0 - params.eta : params.eta;
    return std::sqrt(one_minus_exp(4.0 * frac * a2) / one_minus_exp(4.0 * a2));
}

Contraction expected_contraction(const TwoQubitDensity &rho, const KrausSet &ks, Diagnostic which) {
    auto f = [which](const TwoQubitDensity &r) { return which == Diagnostic::V ? lyapunov_V(r) : coherence_C(r); };
    const OutcomeProbabilities p = outcome_probs(rho, ks);
    double after = 0.0;
    for (Outcome o : {Outcome::plus, Outcome::minus}) {
        if (p[o] <= kZeroProbability) continue;
        after += p[o] * f(apply_outcome(rho, ks, o));
    }
    return {f(rho), after, contraction_factor(ks.params, which)};
}

double lambert_w0(double x) {
    if (!(x >= 0.0)) throw DomainError("lambert_w0: argument must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return kInf;
    constexpr int kMaxIter = 100;
    constexpr double kE = 2.718281828459045;
    double w;
    if (x <= kE) {
        // Halley on w e^w - x, started from log1p(x) which brackets W from above.
        w = std::log1p(x);
        for (int i = 0; i < kMaxIter; ++i) {
            const double ew = std::exp(w);
            const double f = w * ew - x;
            const double step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
            w -= step;
            if (std::abs(step) <= 1e-16 * std::abs(w)) break;
        }
    } else {
        // Newton on w + log w - log x; well scaled for large x.
        const double lx = std::log(x);
        w = lx - std::log(lx);
        if (w < 1.0) w = 1.0;
        for (int i = 0; i < kMaxIter; ++i) {
            const double g = w + std::log(w) - lx;
            const double step = g / (1.0 + 1.0 / w);
            w -= step;
            if (std::abs(step) <= 1e-16 * w) break;
        }
    }
    return w;
}

MeasEstimate solve_nmeas(const RatePair &r) {
    const double rp = r.r_parity;
    const double rd = r.r_dephasing;
    if (!(rd > 0.0) || !std::isfinite(rp)) throw DomainError("solve_nmeas: rates must be positive and finite");
    if (rp < rd) throw NoSolution("solve_nmeas: dephasing is at least as fast as the parity measurement");
    const double ln2 = std::log(2.0);
    auto g = [&](double t) { return std::exp(-rp * t) + std::expm1(-rd * t); };
    double lo = ln2 / rp;
    double hi = ln2 / rd;
    if (rp == rd) return {lo, 1.0 - 0.25};
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double d = -rp * std::exp(-rp * t) - rd * std::exp(-rd * t);
        const double next = t - g(t) / d;
        if (!(next >= lo && next <= hi)) break;
        t = next;
    }
    return {t, 1.0 - 0.5 * std::exp(-rp * t)};
}

MeasEstimate solve_nmeas(const CatParams &params) {
    if (!(params.eta > 0.5)) throw NoSolution("solve_nmeas: requires eta > 1/2");
    if (!(params.eta < 1.0)) throw DomainError("solve_nmeas: requires eta < 1 (no dephasing at eta = 1)");
    return solve_nmeas(rates(params));
}

LambertEstimate nmeas_lambert(const CatParams &params) {
    if (!(params.eta > 0.5 && params.eta < 1.0)) throw DomainError("nmeas_lambert: requires eta in (1/2, 1)");
    const RatePair r = rates(params);
    const bool valid = 4.0 * (2.0 * params.eta - 1.0) * params.alpha2 >= std::log(100.0);
    return {lambert_w0(r.r_parity / r.r_dephasing) / r.r_parity, valid};
}

BellRateState rate_ode(const BellRateState &p, const RatePair &r, const std::optional<DecayParams> &decay) {
    const double a = r.r_parity;
    const double d = 0.5 * r.r_dephasing + decay_rate(decay);
    return {
        a * (0.5 * p[1] + 0.5 * p[2]) - d * (p[0] - 0.5 * p[1] - 0.5 * p[2]),
        a * (0.5 * p[3] - 0.5 * p[1]) - d * (p[1] - 0.5 * p[0] - 0.5 * p[3]),
        a * (0.5 * p[3] - 0.5 * p[2]) - d * (p[2] - 0.5 * p[0] - 0.5 * p[3]),
        -a * p[3] - d * (p[3] - 0.5 * p[1] - 0.5 * p[2]),
    };
}

BellRateState integrate_rate_ode(BellRateState p, const RatePair &r, const std::optional<DecayParams> &decay,
                                 double t_end, double dt) {
    if (!(dt > 0.0)) throw DomainError("integrate_rate_ode: dt must be > 0");
    auto axpy = [](const BellRateState &x, double h, const BellRateState &k) {
        BellRateState y;
        for (int i = 0; i < 4; ++i) y[i] = x[i] + h * k[i];
        return y;
    };
    const long steps = std::lround(t_end / dt);
    for (long n = 0; n < steps; ++n) {
        const BellRateState k1 = rate_ode(p, r, decay);
        const BellRateState k2 = rate_ode(axpy(p, 0.5 * dt, k1), r, decay);
        const BellRateState k3 = rate_ode(axpy(p, 0.5 * dt, k2), r, decay);
        const BellRateState k4 = rate_ode(axpy(p, dt, k3), r, decay);
        for (int i = 0; i < 4; ++i) p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return p;
}

double steady_fidelity(double delta) {
    if (std::isinf(delta)) return 1.0;
    return delta * delta / ((1.0 + delta) * (1.0 + delta));
}

SteadyState steady_state(const RatePair &r, const std::optional<DecayParams> &decay) {
    const double d = 0.5 * r.r_dephasing + decay_rate(decay);
    if (!(d >= 0.0)) throw DomainError("steady_state: negative dephasing rate");
    if (d == 0.0 || std::isinf(r.r_parity)) return {1.0, kInf, {1.0, 0.0, 0.0, 0.0}};
    const double delta = 1.0 + r.r_parity / d;
    const double z = (1.0 + delta) * (1.0 + delta);
    return {steady_fidelity(delta), delta, {delta * delta / z, delta / z, delta / z, 1.0 / z}};
}

double alpha_objective(double alpha2, double eta, const DecayParams &decay) {
    const RatePair r = rates(CatParams::make(alpha2, eta));
    return r.r_parity / (0.5 * r.r_dephasing + 1.0 / decay.t1_over_titer);
}

AlphaOptimum optimize_alpha(double eta, const DecayParams &decay) {
    if (!(eta > 0.5)) throw NoSolution("optimize_alpha: no optimum for eta <= 1/2");
    if (!(eta < 1.0)) throw DomainError("optimize_alpha: requires eta < 1");
    const double lo = std::log(kAlpha2SearchMin);
    const double hi = std::log(kAlpha2SearchMax);
    auto f = [&](double log_a2) { return alpha_objective(std::exp(log_a2), eta, decay); };

    constexpr int kGrid = 400;
    int best = 0;
    double best_val = -kInf;
    for (int i = 0; i <= kGrid; ++i) {
        const double v = f(lo + (hi - lo) * i / kGrid);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double x;
    bool boundary = false;
    if (best == 0 || best == kGrid) {
        boundary = true;
        x = best == 0 ? lo : hi;
    } else {
        double a = lo + (hi - lo) * (best - 1) / kGrid;
        double b = lo + (hi - lo) * (best + 1) / kGrid;
        const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = f(c);
        double fd = f(d);
        while (b - a > 1e-12) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        x = 0.5 * (a + b);
    }
    const double alpha2 = boundary ? (best == 0 ? kAlpha2SearchMin : kAlpha2SearchMax) : std::exp(x);
    const double obj = alpha_objective(alpha2, eta, decay);
    return {alpha2, obj, steady_fidelity(1.0 + obj), boundary};
}

}  // namespace catparity
