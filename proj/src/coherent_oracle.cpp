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

#include "catparity/coherent_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace catparity::oracle {
namespace {

bool matches(double amp, double beta) {
    return std::abs(std::abs(amp) - beta) <= 1e-12 * std::max(1.0, beta);
}

// Parity flip of the probe cat on terms whose selected qubit bit is 1.
JointKet flip_probe_parity(const JointKet &ket, double beta, int bit_shift, const char *stage) {
    if (!(beta > 0.0)) throw PipelineError(std::string(stage) + ": probe amplitude must be > 0");
    const double np = norm_const(beta * beta, Sign::plus);
    const double nm = norm_const(beta * beta, Sign::minus);
    JointKet out;
    for (const Term &t : ket.terms) {
        if (!matches(t.probe, beta)) {
            throw PipelineError(std::string(stage) + ": probe amplitude " + std::to_string(t.probe) +
                                " does not match +-" + std::to_string(beta));
        }
        if (((t.label >> bit_shift) & 1) == 0) {
            out.terms.push_back(t);
            continue;
        }
        // |s b> = (N+/2) C+ + s (N-/2) C-; swap C+ <-> C-; re-expand in |+b>, |-b>.
        const double s = t.probe > 0 ? 1.0 : -1.0;
        const double a = s * nm / (2.0 * np);
        const double b = np / (2.0 * nm);
        out.terms.push_back({t.label, beta, t.env, t.coeff * (a + b)});
        out.terms.push_back({t.label, -beta, t.env, t.coeff * (a - b)});
    }
    return merged(out);
}

double cat_overlap(Sign sign, double beta, double gamma) {
    const double n = norm_const(beta * beta, sign);
    if (n == 0.0) return 0.0;
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    return (coherent_overlap(beta, gamma) + s * coherent_overlap(-beta, gamma)) / n;
}

}  // namespace

double coherent_overlap(double b1, double b2) {
    const double d = b1 - b2;
    return std::exp(-0.5 * d * d);
}

double norm2(const JointKet &ket) {
    Complex acc = 0.0;
    for (const Term &s : ket.terms)
        for (const Term &t : ket.terms) {
            if (s.label != t.label) continue;
            acc += std::conj(s.coeff) * t.coeff * coherent_overlap(s.probe, t.probe) * coherent_overlap(s.env, t.env);
        }
    return acc.real();
}

JointKet initial_ket(int label, double alpha) {
    Ket4 c{};
    c.at(label) = 1.0;
    return initial_ket(c, alpha);
}

JointKet initial_ket(const Ket4 &c, double alpha) {
    const double n = norm_const(alpha * alpha, Sign::plus);
    JointKet k;
    for (int q = 0; q < 4; ++q) {
        if (c[q] == 0.0) continue;
        k.terms.push_back({q, alpha, 0.0, c[q] / n});
        k.terms.push_back({q, -alpha, 0.0, c[q] / n});
    }
    return merged(k);
}

JointKet merged(const JointKet &ket) {
    std::map<std::tuple<int, double, double>, Complex> acc;
    for (const Term &t : ket.terms) acc[{t.label, t.probe, t.env}] += t.coeff;
    JointKet out;
    for (const auto &[key, c] : acc) {
        if (c == 0.0) continue;
        out.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
    }
    return out;
}

JointKet apply_UA(const JointKet &ket, double alpha) { return flip_probe_parity(ket, alpha, 1, "apply_UA"); }

JointKet apply_UB(const JointKet &ket, double sqrt_eta_alpha) {
    return flip_probe_parity(ket, sqrt_eta_alpha, 0, "apply_UB");
}

JointKet apply_beamsplitter(const JointKet &ket, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("beam splitter transmittance must lie in [0, 1]");
    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);
    JointKet out;
    for (const Term &term : ket.terms) {
        if (term.env != 0.0) throw PipelineError("apply_beamsplitter: environment mode is not in vacuum");
        out.terms.push_back({term.label, t * term.probe, r * term.probe, term.coeff});
    }
    return merged(out);
}

Projection project_parity(const JointKet &ket, ParityProjector proj) {
    const double s = proj.sign == Sign::plus ? 1.0 : -1.0;
    JointKet out;
    for (const Term &t : ket.terms) {
        if (proj.mode == Mode::probe) {
            out.terms.push_back({t.label, t.probe, t.env, 0.5 * t.coeff});
            out.terms.push_back({t.label, -t.probe, t.env, s * 0.5 * t.coeff});
        } else {
            out.terms.push_back({t.label, t.probe, t.env, 0.5 * t.coeff});
            out.terms.push_back({t.label, t.probe, -t.env, s * 0.5 * t.coeff});
        }
    }
    // -0.0 and 0.0 must land on the same key.
    for (Term &t : out.terms) {
        if (t.probe == 0.0) t.probe = 0.0;
        if (t.env == 0.0) t.env = 0.0;
    }
    out = merged(out);
    return {out, norm2(out)};
}

Complex cat_amplitude(const JointKet &ket, int label, Sign probe_sign, double probe_beta, Sign env_sign,
                      double env_beta) {
    Complex acc = 0.0;
    for (const Term &t : ket.terms) {
        if (t.label != label) continue;
        acc += t.coeff * cat_overlap(probe_sign, probe_beta, t.probe) * cat_overlap(env_sign, env_beta, t.env);
    }
    return acc;
}

JointKet run_pipeline(const JointKet &initial, const CatParams &params) {
    const double alpha = params.alpha();
    JointKet k = apply_UA(initial, alpha);
    k = apply_beamsplitter(k, params.eta);
    return apply_UB(k, std::sqrt(params.eta) * alpha);
}

KrausSet derive_kraus(const CatParams &p) {
    const CatParams params = CatParams::make(p.alpha2, p.eta);
    if (!(params.alpha2 > 0.0)) throw DomainError("derive_kraus: alpha2 must be > 0");
    if (!(params.eta > 0.0)) throw DomainError("derive_kraus: eta must be > 0 (vacuum probe at qubit B)");
    const double alpha = params.alpha();
    const double probe_beta = std::sqrt(params.eta) * alpha;
    const double env_beta = std::sqrt(1.0 - params.eta) * alpha;

    std::array<std::array<RealMat4, 2>, 2> ops{};
    for (int q = 0; q < 4; ++q) {
        const JointKet psi = run_pipeline(initial_ket(q, alpha), params);
        for (int sp = 0; sp < 2; ++sp)
            for (int se = 0; se < 2; ++se) {
                const Sign probe_sign = static_cast<Sign>(sp);
                const Sign env_sign = static_cast<Sign>(se);
                const Projection a = project_parity(psi, {Mode::probe, probe_sign});
                const Projection b = project_parity(a.ket, {Mode::env, env_sign});
                for (int row = 0; row < 4; ++row) {
                    ops[sp][se][4 * row + q] =
                        cat_amplitude(b.ket, row, probe_sign, probe_beta, env_sign, env_beta).real();
                }
            }
    }
    return KrausSet::from_operators(params, ops);
}

double max_kraus_deviation(const KrausSet &a, const KrausSet &b) {
    double m = 0.0;
    for (int p = 0; p < 2; ++p)
        for (int e = 0; e < 2; ++e)
            for (int k = 0; k < 16; ++k) m = std::max(m, std::abs(a.ops[p][e][k] - b.ops[p][e][k]));
    return m;
}

}  // namespace catparity::oracle
