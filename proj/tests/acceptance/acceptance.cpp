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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "catparity/abstract_protocol.hpp"
#include "catparity/analytics.hpp"
#include "catparity/cat_kraus.hpp"
#include "catparity/coherent_oracle.hpp"
#include "catparity/ensemble.hpp"
#include "catparity/feedback.hpp"
#include "catparity/presets.hpp"

using namespace catparity;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

const double kGridEta[] = {0.5, 0.6, 0.75, 0.9, 1.0};
const double kGridAlpha2[] = {0.25, 1.0, 2.0, 4.0, 8.0};

Verdict kraus_oracle() {
    double worst = 0.0;
    for (double eta : kGridEta)
        for (double a2 : kGridAlpha2) {
            const CatParams p = CatParams::make(a2, eta);
            worst = std::max(worst, oracle::max_kraus_deviation(build_kraus(p), oracle::derive_kraus(p)));
        }
    return {worst <= 1e-10, fmt("max deviation %.3g", worst)};
}

Verdict completeness() {
    double worst = 0.0;
    for (double eta : kGridEta)
        for (double a2 : kGridAlpha2) worst = std::max(worst, completeness_error(build_kraus(CatParams::make(a2, eta))));
    return {worst <= 1e-12, fmt("max |sum M^T M - I| %.3g", worst)};
}

Verdict structural_zeros() {
    const double s = 1.0 / std::sqrt(2.0);
    bool zeros = true;
    double drift = 0.0;
    RandomStream rng(3);
    for (double eta : kGridEta)
        for (double a2 : kGridAlpha2) {
            const KrausSet ks = build_kraus(CatParams::make(a2, eta));
            for (auto [probe, env] : {std::pair{Sign::plus, Sign::minus}, std::pair{Sign::minus, Sign::plus}}) {
                const auto d = ks.diag(probe, env);
                zeros = zeros && d[0] * s == 0.0 && d[3] * s == 0.0;
            }
            // Computational states have definite parity for every channel.
            for (int label = 0; label < 4; ++label) {
                const auto rho = TwoQubitDensity::computational(label);
                const Outcome o = label == 0 || label == 3 ? Outcome::plus : Outcome::minus;
                drift = std::max(drift, max_abs_diff(apply_outcome(rho, ks, o), rho));
            }
            // Superpositions within a parity manifold keep their coherence only on a lossless channel.
            if (eta == 1.0)
                for (int n = 0; n < 20; ++n) {
                    const bool even = n % 2 == 0;
                    const double th = 2.0 * M_PI * rng.uniform();
                    const double ph = 2.0 * M_PI * rng.uniform();
                    Ket4 k{};
                    k[even ? 0 : 1] = std::cos(th);
                    k[even ? 3 : 2] = std::sin(th) * std::polar(1.0, ph);
                    const auto rho = TwoQubitDensity::pure(k);
                    drift = std::max(drift, max_abs_diff(apply_outcome(rho, ks, even ? Outcome::plus : Outcome::minus), rho));
                }
        }
    return {zeros && drift <= 1e-14,
            std::string(zeros ? "mismatched outcomes annihilate B+e exactly" : "mismatched outcomes leak") +
                fmt("; matched-outcome drift %.3g", drift)};
}

Verdict lyapunov() {
    RandomStream rng(42);
    const CatParams points[] = {CatParams::make(0.5, 0.6), CatParams::make(1.0, 0.75), CatParams::make(2.0, 0.75),
                                CatParams::make(3.0, 0.9), CatParams::make(4.0, 0.55)};
    double worst = 0.0;
    for (const CatParams &p : points) {
        const KrausSet ks = build_kraus(p);
        for (int n = 0; n < 100; ++n) {
            std::array<Complex, 16> g{};
            for (auto &x : g) x = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
            std::array<Complex, 16> r{};
            double tr = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Complex acc = 0.0;
                    for (int k = 0; k < 4; ++k) acc += g[4 * i + k] * std::conj(g[4 * j + k]);
                    r[4 * i + j] = acc;
                }
            for (int i = 0; i < 4; ++i) tr += r[5 * i].real();
            for (auto &x : r) x /= tr;
            for (int i = 0; i < 4; ++i) r[5 * i] = Complex(r[5 * i].real(), 0.0);
            const auto rho = TwoQubitDensity::from_entries(r);
            for (Diagnostic d : {Diagnostic::V, Diagnostic::C}) {
                const Contraction c = expected_contraction(rho, ks, d);
                worst = std::max(worst, std::abs(c.expected_after - c.analytic_factor * c.before));
            }
        }
    }
    return {worst <= 1e-10, fmt("max |E[f'] - factor f| %.3g over 500 states", worst)};
}

Verdict reference_numbers() {
    const MeasEstimate a = solve_nmeas(CatParams::make(1.63, 0.85));
    const MeasEstimate b = solve_nmeas(CatParams::make(3.273, 0.70));
    const bool ok = a.n_meas >= 15.5 && a.n_meas <= 18.0 && std::abs(a.f_meas - 0.990) <= 0.005 && b.n_meas >= 350.0 &&
                    b.n_meas <= 400.0 && std::abs(b.f_meas - 0.990) <= 0.005;
    return {ok, fmt("n=%.4g F=%.4g; n=%.4g F=%.4g", a.n_meas, a.f_meas, b.n_meas, b.f_meas)};
}

Verdict lambert() {
    double worst = 0.0;
    int checked = 0;
    for (int ie = 51; ie <= 99; ++ie)
        for (double a2 = 0.25; a2 <= 8.0001; a2 += 0.25) {
            const CatParams p = CatParams::make(a2, ie / 100.0);
            const LambertEstimate l = nmeas_lambert(p);
            if (!l.valid) continue;
            const MeasEstimate m = solve_nmeas(p);
            worst = std::max(worst, std::abs(l.n_meas - m.n_meas) / m.n_meas);
            ++checked;
        }
    return {checked > 0 && worst <= 0.05, fmt("max relative gap %.3g over %g valid points", worst, checked)};
}

Verdict steady() {
    double worst = 0.0;
    for (double eta : {0.6, 0.75, 0.85, 0.95})
        for (double a2 : {0.5, 1.0, 2.0, 4.0}) {
            const RatePair r = rates(CatParams::make(a2, eta));
            for (const std::optional<DecayParams> &d :
                 {std::optional<DecayParams>{}, std::optional<DecayParams>{DecayParams::from_t1_ratio(300.0)},
                  std::optional<DecayParams>{DecayParams::from_t1_ratio(3000.0)}}) {
                const SteadyState s = steady_state(r, d);
                const BellRateState dp = rate_ode(s.populations, r, d);
                for (double x : dp) worst = std::max(worst, std::abs(x));
                worst = std::max(worst, std::abs(s.p_target - steady_fidelity(s.delta)));
            }
        }
    return {worst <= 1e-8, fmt("max |dp/dt| at the steady state %.3g", worst)};
}

Verdict measurement_only() {
    PresetOptions opt;
    opt.trajectories = 1000;
    opt.steps = 600;
    opt.workers = 1;
    opt.seed = 1;
    const auto t0 = std::chrono::steady_clock::now();
    const CsvTable t = thyvssim_table(opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t peak = 0;
    double prod_max = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (t.number(r, "sim_fid_closest") > t.number(peak, "sim_fid_closest")) peak = r;
        prod_max = std::max(prod_max, t.number(r, "analytic_product"));
    }
    const double height = t.number(peak, "sim_fid_closest");
    const double peak_step = t.number(peak, "step");
    const double first = t.number(0, "sim_fid_closest");
    const double last = t.number(t.rows() - 1, "sim_fid_closest");
    const double n_meas = solve_nmeas(CatParams::make(2.0, 0.75)).n_meas;
    const bool shape = height > 0.9 && first < height && last < height - 0.01 && peak > 0 && peak + 1 < t.rows();
    const bool ok = shape && std::abs(height - prod_max) <= 0.02 && peak_step >= n_meas / 2.0 &&
                    peak_step <= 2.0 * n_meas && secs < 60.0;
    return {ok, fmt("peak %.5f at step %g (product max %.5f, n_meas %.4g)", height, peak_step, prod_max, n_meas) +
                    fmt(", final %.5f, %.1f s single-threaded", last, secs)};
}

EnsembleConfig sweep_config(double a2, bool feedback, std::int64_t n, std::int64_t steps) {
    EnsembleConfig c;
    c.base.cat = CatParams::make(a2, 0.75);
    c.base.steps = steps;
    c.base.seed = 1;
    c.trajectories = n;
    c.feedback_enabled = feedback;
    c.workers = 0;
    return c;
}

Verdict feedback_no_decay() {
    bool ok = true;
    std::string detail;
    for (double a2 : {2.0, 4.0}) {
        const EnsembleResult open = run_ensemble(sweep_config(a2, false, 500, 1000));
        const auto &oc = open[Series::fid_closest].mean;
        const double open_peak = *std::max_element(oc.begin(), oc.end());
        const EnsembleResult fb = run_ensemble(sweep_config(a2, true, 500, 1000));
        const auto &m = fb[Series::fid_be_plus].mean;
        const auto &s = fb[Series::fid_be_plus].sem;
        const std::size_t tail = 700;
        double window = 0.0;
        for (std::size_t k = tail; k < m.size(); ++k) window += m[k];
        window /= static_cast<double>(m.size() - tail);
        // Non-decreasing over the tail: consecutive 50-step block averages never drop by more than 2 SEM.
        double worst_drop = 0.0;
        bool monotone = true;
        double prev_mean = 0.0, prev_sem = 0.0;
        for (std::size_t b = tail; b < m.size(); b += 50) {
            double bm = 0.0, bs = 0.0;
            for (std::size_t k = b; k < b + 50; ++k) {
                bm += m[k];
                bs += s[k];
            }
            bm /= 50.0;
            bs /= 50.0;
            if (b > tail) {
                const double drop = prev_mean - bm;
                worst_drop = std::max(worst_drop, drop / std::hypot(prev_sem, bs));
                monotone = monotone && drop <= 2.0 * std::hypot(prev_sem, bs);
            }
            prev_mean = bm;
            prev_sem = bs;
        }
        ok = ok && window > open_peak && m.back() > open_peak && monotone;
        detail += fmt("a2=%g: tail mean %.5f vs open-loop peak %.5f, worst block drop %.2f SEM; ", a2, window, open_peak,
                      worst_drop);
    }
    return {ok, detail};
}

Verdict feedback_with_decay() {
    PresetOptions opt;
    opt.etas = {0.85};
    opt.t1_ratios = {3000.0};
    opt.trajectories = 1000;
    opt.workers = 0;
    opt.seed = 1;
    const auto t0 = std::chrono::steady_clock::now();
    const CsvTable t = fbfid_table(opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double f = t.number(0, "fid_window_mean");
    const bool ok = std::abs(f - 0.99) <= 0.01 && secs < 600.0;
    return {ok, fmt("alpha2 %.4g, window fidelity %.5f +- %.2g, %.0f s", t.number(0, "alpha2_opt"), f,
                    t.number(0, "fid_window_sem"), secs)};
}

Verdict filter_equivalence() {
    bool ok = true;
    double worst = 0.0;
    long mismatches = 0;
    for (Picture picture : {Picture::schrodinger, Picture::heisenberg}) {
        FeedbackConfig cfg;
        cfg.cat = CatParams::make(2.0, 0.75);
        cfg.picture = picture;
        const FeedbackStepper stepper(cfg);
        for (std::uint64_t traj = 0; traj < 200; ++traj) {
            RandomStream rng = RandomStream::for_trajectory(5, traj);
            TwoQubitDensity rho = initial_density(InitialState::plus_x_plus_x);
            FilterState full = FilterState::initial(FilterMode::full, rho);
            FilterState bell = FilterState::initial(FilterMode::bell, rho);
            for (int k = 0; k < 500; ++k) {
                const StepRecord rec = stepper.step(rho, full, rng, k);
                bell = filter_update(bell, stepper.kraus(), rec.outcome, rec.basis);
                const bool fire = controller_decide(bell, rec.basis) == Decision::apply_pi;
                if (fire != rec.pulse_fired) ++mismatches;
                if (fire) bell = filter_gate(bell, rec.basis == Basis::z ? LocalGate::x_a_pi : LocalGate::z_a_pi);
                if (picture == Picture::schrodinger) bell = filter_gate(bell, LocalGate::y_both_half_pi);
                const auto a = full.bell_diagonal().p;
                for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - bell.pops.p[i]));
            }
        }
    }
    ok = mismatches == 0 && worst <= 1e-10;
    return {ok, fmt("%g decision mismatches, max population gap %.3g (both pictures)", mismatches, worst)};
}

Verdict picture_equivalence() {
    EnsembleConfig s = sweep_config(2.0, true, 500, 200);
    EnsembleConfig h = s;
    h.base.picture = Picture::heisenberg;
    h.base.seed = 2;
    const EnsembleResult rs = run_ensemble(s);
    const EnsembleResult rh = run_ensemble(h);
    const auto &ms = rs[Series::fid_be_plus];
    const auto &mh = rh[Series::fid_be_plus];
    double worst = 0.0;
    std::size_t worst_step = 0;
    for (std::size_t k : {0, 1, 2, 4, 9, 19, 49, 99, 199}) {
        // After the first step every trajectory holds the same fidelity, so only round-off separates the means.
        const double sem = std::max(std::hypot(ms.sem[k], mh.sem[k]), 1e-12);
        const double z = std::abs(ms.mean[k] - mh.mean[k]) / sem;
        if (z > worst) {
            worst = z;
            worst_step = k + 1;
        }
    }
    return {worst <= 3.0, fmt("largest gap %.2f SEM at step %g (final %.5f vs %.5f)", worst,
                              static_cast<double>(worst_step), ms.mean.back(), mh.mean.back())};
}

Verdict abstract_module() {
    double xi_err = 0.0;
    for (double lambda : {0.1, 0.5, 2.0})
        xi_err = std::max(xi_err, std::abs(xi_from_bitflips(poisson_pmf(lambda)) - std::exp(-lambda) * std::cosh(lambda)));

    bool preserved = true;
    for (const ProbeChannelSpec &spec :
         {ProbeChannelSpec::bit_flip(), ProbeChannelSpec::quarter_phase(), ProbeChannelSpec::cyclic_shift(4)})
        for (Parity par : {Parity::even, Parity::odd})
            for (int n = 0; n <= 3 * spec.n_root; ++n) preserved = preserved && root_channel_demo(spec, par, n).target_preserved;

    const PhaseflipReport pf = phaseflip_counterexample();
    const double flip_err = std::abs(pf.overlap_with_psi_minus - 1.0);

    bool unchanged = true;
    RandomStream rng(9);
    for (BellState b : {BellState::even_plus, BellState::even_minus, BellState::odd_plus, BellState::odd_minus})
        for (int n = 0; n < 20; ++n) {
            const auto rho = TwoQubitDensity::bell(b);
            unchanged = unchanged && entanglement_based_parity(rho, rng).state == rho;
        }
    for (int label = 0; label < 4; ++label) {
        const auto rho = TwoQubitDensity::computational(label);
        unchanged = unchanged && entanglement_based_parity(rho, rng).state == rho;
    }
    const bool ok = xi_err <= 1e-12 && preserved && flip_err <= 1e-12 && unchanged;
    return {ok, fmt("xi error %.3g, phase-flip overlap error %.3g", xi_err, flip_err) +
                    (preserved ? ", root channel preserves parity eigenstates" : ", root channel disturbs a target") +
                    (unchanged ? ", ancilla parity leaves eigenstates untouched" : ", ancilla parity disturbs a target")};
}

Verdict determinism() {
    EnsembleConfig c = sweep_config(2.0, true, 300, 150);
    c.record_every = 3;
    c.workers = 1;
    const std::string a = ensemble_table(run_ensemble(c)).str();
    c.workers = 4;
    const std::string b = ensemble_table(run_ensemble(c)).str();
    c.workers = 7;
    const std::string d = ensemble_table(run_ensemble(c)).str();
    return {a == b && a == d, fmt("%g bytes, workers 1/4/7", static_cast<double>(a.size()))};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria = {
        {"Kraus operators match the coherent-state derivation", kraus_oracle},
        {"POVM completeness", completeness},
        {"eigenstate-preserving structural zeros", structural_zeros},
        {"Lyapunov and coherence contraction", lyapunov},
        {"measurement-count reference numbers", reference_numbers},
        {"Lambert-W shortcut within 5%", lambert},
        {"rate-model steady state", steady},
        {"measurement-only ensemble", measurement_only},
        {"feedback without decay", feedback_no_decay},
        {"feedback with decay", feedback_with_decay},
        {"full and Bell filters agree", filter_equivalence},
        {"Schrodinger and Heisenberg pictures agree", picture_equivalence},
        {"abstract protocol checks", abstract_module},
        {"ensemble determinism across worker counts", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v{false, ""};
        try {
            v = criteria[i].second();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::printf("[%s] criterion %zu: %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
