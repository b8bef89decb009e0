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

#include "catparity/presets.hpp"

#include <cmath>

#include "catparity/analytics.hpp"
#include "catparity/ensemble.hpp"
#include "catparity/error.hpp"

namespace catparity {
namespace {

constexpr double kSweepEta = 0.75;
constexpr double kThyAlpha2 = 2.0;

std::int64_t pick(std::int64_t value, std::int64_t fallback) { return value > 0 ? value : fallback; }

}  // namespace

Preset parse_preset(const std::string &name) {
    for (Preset p : {Preset::fig2a, Preset::fig2b, Preset::fig3, Preset::thyvssim, Preset::fbfid})
        if (name == preset_name(p)) return p;
    throw UsageError("unknown preset '" + name + "' (expected fig2a, fig2b, fig3, thyvssim or fbfid)");
}

const char *preset_name(Preset p) {
    switch (p) {
        case Preset::fig2a:
            return "fig2a";
        case Preset::fig2b:
            return "fig2b";
        case Preset::fig3:
            return "fig3";
        case Preset::thyvssim:
            return "thyvssim";
        case Preset::fbfid:
            return "fbfid";
    }
    return "?";
}

CsvTable alpha_sweep_table(bool feedback, const PresetOptions &opt) {
    std::vector<std::string> header{"alpha2", "eta"};
    CsvTable out({});
    bool first = true;
    for (double a2 : kSweepAlpha2) {
        EnsembleConfig cfg;
        cfg.base.cat = CatParams::make(a2, kSweepEta);
        cfg.base.initial_state = InitialState::plus_x_plus_x;
        cfg.base.steps = pick(opt.steps, 1000);
        cfg.base.seed = opt.seed;
        cfg.trajectories = pick(opt.trajectories, 1000);
        cfg.feedback_enabled = feedback;
        cfg.record_every = pick(opt.record_every, 1);
        cfg.workers = opt.workers;
        const CsvTable t = ensemble_table(run_ensemble(cfg));
        if (first) {
            for (const auto &h : t.header()) header.push_back(h);
            out = CsvTable(header);
            first = false;
        }
        for (std::size_t r = 0; r < t.rows(); ++r) {
            std::vector<CsvCell> row{a2, kSweepEta};
            for (const auto &c : t.row(r)) row.push_back(c);
            out.add_row(std::move(row));
        }
    }
    return out;
}

CsvTable fig3_table() {
    CsvTable t({"alpha2", "eta", "r_parity", "r_dephasing", "n_meas", "f_meas", "n_meas_lambert", "lambert_valid"});
    for (double a2 : kFig3Alpha2) {
        for (int k = 55; k <= 95; ++k) {
            const double eta = k / 100.0;
            const CatParams p = CatParams::make(a2, eta);
            const RatePair r = rates(p);
            const MeasEstimate m = solve_nmeas(p);
            const LambertEstimate l = nmeas_lambert(p);
            t.add_row({a2, eta, r.r_parity, r.r_dephasing, m.n_meas, m.f_meas, l.n_meas,
                       static_cast<long long>(l.valid ? 1 : 0)});
        }
    }
    return t;
}

CsvTable thyvssim_table(const PresetOptions &opt) {
    EnsembleConfig cfg;
    cfg.base.cat = CatParams::make(kThyAlpha2, kSweepEta);
    cfg.base.initial_state = InitialState::plus_x_plus_x;
    cfg.base.steps = pick(opt.steps, 600);
    cfg.base.seed = opt.seed;
    cfg.trajectories = pick(opt.trajectories, 1000);
    cfg.record_every = pick(opt.record_every, 1);
    cfg.workers = opt.workers;
    const EnsembleResult res = run_ensemble(cfg);
    const RatePair r = rates(cfg.base.cat);

    CsvTable t({"step", "sim_fid_closest", "sim_sem", "analytic_parity", "analytic_coherence", "analytic_product"});
    const SeriesStats &closest = res[Series::fid_closest];
    for (std::size_t i = 0; i < res.steps.size(); ++i) {
        const double step = static_cast<double>(res.steps[i]);
        const double parity = 1.0 - 0.5 * std::exp(-r.r_parity * step);
        const double coherence = 0.5 * (1.0 + std::exp(-r.r_dephasing * step));
        t.add_row({static_cast<long long>(res.steps[i]), closest.mean[i], closest.sem[i], parity, coherence,
                   parity * coherence});
    }
    return t;
}

CsvTable fbfid_table(const PresetOptions &opt) {
    const std::vector<double> &etas = opt.etas.empty() ? kFbfidEtas : opt.etas;
    const std::vector<double> &t1s = opt.t1_ratios.empty() ? kFbfidT1Ratios : opt.t1_ratios;
    CsvTable t({"eta", "t1_ratio", "alpha2_opt", "at_boundary", "p_predicted", "window_first", "window_last",
                "fid_window_mean", "fid_window_sem", "trajectories"});
    for (double eta : etas) {
        for (double t1 : t1s) {
            const DecayParams decay = DecayParams::from_t1_ratio(t1);
            const AlphaOptimum opt_alpha = optimize_alpha(eta, decay);
            const std::int64_t first = std::llround(3.0 * t1);
            const std::int64_t last = std::llround(6.0 * t1);
            EnsembleConfig cfg;
            cfg.base.cat = CatParams::make(opt_alpha.alpha2, eta);
            cfg.base.decay = decay;
            cfg.base.initial_state = InitialState::bell_e_plus;
            cfg.base.steps = last;
            cfg.base.seed = opt.seed;
            cfg.trajectories = pick(opt.trajectories, 1000);
            cfg.feedback_enabled = true;
            cfg.record_every = last;
            cfg.workers = opt.workers;
            cfg.window = StepWindow{first, last};
            const EnsembleResult res = run_ensemble(cfg);
            t.add_row({eta, t1, opt_alpha.alpha2, static_cast<long long>(opt_alpha.at_boundary ? 1 : 0),
                       opt_alpha.p_opt, static_cast<long long>(first), static_cast<long long>(last),
                       res.window->mean, res.window->sem, static_cast<long long>(cfg.trajectories)});
        }
    }
    return t;
}

CsvTable run_preset(Preset p, const PresetOptions &opt) {
    switch (p) {
        case Preset::fig2a:
            return alpha_sweep_table(false, opt);
        case Preset::fig2b:
            return alpha_sweep_table(true, opt);
        case Preset::fig3:
            return fig3_table();
        case Preset::thyvssim:
            return thyvssim_table(opt);
        case Preset::fbfid:
            return fbfid_table(opt);
    }
    throw UsageError("unknown preset");
}

}  // namespace catparity
