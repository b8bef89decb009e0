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

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "catparity/abstract_protocol.hpp"
#include "catparity/analytics.hpp"
#include "catparity/coherent_oracle.hpp"
#include "catparity/ensemble.hpp"
#include "catparity/error.hpp"
#include "catparity/kernels.hpp"
#include "catparity/presets.hpp"

namespace {

using namespace catparity;
using json = nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct Options {
    std::optional<double> alpha2;
    std::optional<double> eta;
    std::optional<std::int64_t> steps;
    std::optional<std::int64_t> trajectories;
    std::optional<std::uint64_t> seed;
    std::optional<double> t1_ratio;
    std::optional<bool> feedback;
    std::optional<std::string> filter;
    std::optional<std::string> picture;
    std::optional<std::string> start;
    std::optional<std::string> output;
    std::optional<std::string> events;
    std::optional<std::string> kernels;
    std::optional<unsigned> workers;
    std::optional<std::int64_t> record_every;
    std::optional<std::int64_t> window_first;
    std::optional<std::int64_t> window_last;
    std::string config;
    std::string preset;
};

template <class T>
void fill(std::optional<T> &slot, const json &v, const std::string &key) {
    if (slot) return;
    try {
        slot = v.get<T>();
    } catch (const json::exception &e) {
        throw UsageError("config key '" + key + "': " + e.what());
    }
}

void apply_config(Options &o) {
    if (o.config.empty()) return;
    std::ifstream f(o.config);
    if (!f) throw UsageError("cannot read config file " + o.config);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception &e) {
        throw UsageError("config file " + o.config + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");
    for (const auto &[raw_key, v] : j.items()) {
        std::string key = raw_key;
        for (char &c : key)
            if (c == '_') c = '-';
        if (key == "alpha2") fill(o.alpha2, v, key);
        else if (key == "eta") fill(o.eta, v, key);
        else if (key == "steps") fill(o.steps, v, key);
        else if (key == "trajectories") fill(o.trajectories, v, key);
        else if (key == "seed") fill(o.seed, v, key);
        else if (key == "t1-ratio") fill(o.t1_ratio, v, key);
        else if (key == "feedback") fill(o.feedback, v, key);
        else if (key == "filter") fill(o.filter, v, key);
        else if (key == "picture") fill(o.picture, v, key);
        else if (key == "start") fill(o.start, v, key);
        else if (key == "output") fill(o.output, v, key);
        else if (key == "events") fill(o.events, v, key);
        else if (key == "kernels") fill(o.kernels, v, key);
        else if (key == "workers") fill(o.workers, v, key);
        else if (key == "record-every") fill(o.record_every, v, key);
        else if (key == "window-first") fill(o.window_first, v, key);
        else if (key == "window-last") fill(o.window_last, v, key);
        else throw UsageError("unknown config key '" + raw_key + "'");
    }
}

void add_params(CLI::App *app, Options &o) {
    app->add_option("--alpha2", o.alpha2, "Mean probe photon number |alpha|^2");
    app->add_option("--eta", o.eta, "Channel transmittance in [0, 1]");
    app->add_option("--t1-ratio", o.t1_ratio, "Qubit lifetime T1 in measurement iterations");
    app->add_option("--config", o.config, "Flat JSON file with flag values; command-line flags win");
    app->add_option("--output", o.output, "Output CSV path (stdout when omitted)");
}

void add_sim(CLI::App *app, Options &o) {
    add_params(app, o);
    app->add_option("--steps", o.steps, "Measurement iterations per trajectory");
    app->add_option("--trajectories", o.trajectories, "Monte-Carlo trajectories");
    app->add_option("--seed", o.seed, "Master seed");
    app->add_flag("--feedback", o.feedback, "Close the loop with the pi and pi/2 pulses");
    app->add_option("--filter", o.filter, "Filter representation: full or bell");
    app->add_option("--picture", o.picture, "schrodinger or heisenberg");
    app->add_option("--start", o.start, "Initial state: plus_x_plus_x or bell_e_plus");
    app->add_option("--workers", o.workers, "Worker threads (0: all cores)");
    app->add_option("--kernels", o.kernels, "Force a kernel variant: scalar, sse2 or avx2");
    app->add_option("--record-every", o.record_every, "Record statistics every N steps");
}

double need(const std::optional<double> &v, const char *flag) {
    if (!v) throw UsageError(std::string("missing required ") + flag);
    return *v;
}

std::optional<DecayParams> decay_of(const Options &o) {
    if (!o.t1_ratio) return std::nullopt;
    if (!(*o.t1_ratio > 0.0)) throw UsageError("--t1-ratio must be > 0");
    return DecayParams::from_t1_ratio(*o.t1_ratio);
}

FeedbackConfig feedback_config(const Options &o) {
    FeedbackConfig c;
    c.cat = CatParams::make(need(o.alpha2, "--alpha2"), need(o.eta, "--eta"));
    c.decay = decay_of(o);
    c.steps = o.steps.value_or(600);
    c.seed = o.seed.value_or(1);
    const std::string filter = o.filter.value_or("full");
    if (filter == "full") c.filter_mode = FilterMode::full;
    else if (filter == "bell") c.filter_mode = FilterMode::bell;
    else throw UsageError("--filter must be full or bell");
    const std::string picture = o.picture.value_or("schrodinger");
    if (picture == "schrodinger") c.picture = Picture::schrodinger;
    else if (picture == "heisenberg") c.picture = Picture::heisenberg;
    else throw UsageError("--picture must be schrodinger or heisenberg");
    const std::string start = o.start.value_or("plus_x_plus_x");
    if (start == "plus_x_plus_x") c.initial_state = InitialState::plus_x_plus_x;
    else if (start == "bell_e_plus") c.initial_state = InitialState::bell_e_plus;
    else throw UsageError("--start must be plus_x_plus_x or bell_e_plus");
    c.validate();
    return c;
}

void select_kernels(const Options &o) {
    if (!o.kernels) return;
    const auto isa = kernels::parse_isa(*o.kernels);
    if (!isa) throw UsageError("--kernels must be scalar, sse2 or avx2");
    kernels::select(*isa);
}

json config_json(const FeedbackConfig &c) {
    json j;
    j["alpha2"] = c.cat.alpha2;
    j["eta"] = c.cat.eta;
    j["t1_ratio"] = c.decay ? json(c.decay->t1_over_titer) : json(nullptr);
    j["steps"] = c.steps;
    j["seed"] = c.seed;
    j["filter"] = c.filter_mode == FilterMode::full ? "full" : "bell";
    j["picture"] = c.picture == Picture::schrodinger ? "schrodinger" : "heisenberg";
    j["start"] = c.initial_state == InitialState::plus_x_plus_x ? "plus_x_plus_x" : "bell_e_plus";
    return j;
}

void write_output(const CsvTable &t, const Options &o, const std::string &command, json meta) {
    const std::string path = o.output.value_or("");
    t.write_file(path);
    if (path.empty() || path == "-") return;
    meta["command"] = command;
    meta["version"] = std::string(kVersion);
    meta["rng"] = std::string(kRngVersion);
    meta["kernels"] = std::string(kernels::active().name);
    meta["rows"] = t.rows();
    std::ofstream f(path + ".meta.json");
    if (!f) throw UsageError("cannot write " + path + ".meta.json");
    f << meta.dump(2) << '\n';
}

CsvTable summary_row(const CatParams &p, const std::optional<DecayParams> &decay, bool require_nmeas) {
    CsvTable t({"alpha2", "eta", "r_parity", "r_dephasing", "n_meas", "f_meas", "delta", "p_steady"});
    const RatePair r = rates(p);
    double n = std::nan("");
    double f = std::nan("");
    if (require_nmeas || (p.eta > 0.5 && p.eta < 1.0)) {
        const MeasEstimate m = solve_nmeas(p);
        n = m.n_meas;
        f = m.f_meas;
        std::cerr << "n_meas rounds up to " << static_cast<long long>(std::ceil(m.n_meas)) << " measurements\n";
    }
    const SteadyState s = steady_state(r, decay);
    t.add_row({p.alpha2, p.eta, r.r_parity, r.r_dephasing, n, f, s.delta, s.p_target});
    return t;
}

int cmd_rates(const Options &o, bool fmeas) {
    const CatParams p = CatParams::make(need(o.alpha2, "--alpha2"), need(o.eta, "--eta"));
    json meta;
    meta["alpha2"] = p.alpha2;
    meta["eta"] = p.eta;
    write_output(summary_row(p, decay_of(o), fmeas), o, fmeas ? "fmeas" : "rates", meta);
    return 0;
}

int cmd_optimize_alpha(const Options &o) {
    const double eta = need(o.eta, "--eta");
    const auto decay = decay_of(o);
    if (!decay) throw UsageError("missing required --t1-ratio");
    const AlphaOptimum best = optimize_alpha(eta, *decay);
    if (best.at_boundary) std::cerr << "warning: optimum sits on the search window edge\n";
    json meta;
    meta["eta"] = eta;
    meta["t1_ratio"] = decay->t1_over_titer;
    meta["objective"] = best.objective;
    meta["at_boundary"] = best.at_boundary;
    write_output(summary_row(CatParams::make(best.alpha2, eta), decay, false), o, "optimize-alpha", meta);
    return 0;
}

int cmd_validate_kraus(const Options &o) {
    std::vector<double> etas{0.5, 0.6, 0.75, 0.9, 1.0};
    std::vector<double> a2s{0.25, 1.0, 2.0, 4.0, 8.0};
    if (o.eta) etas = {*o.eta};
    if (o.alpha2) a2s = {*o.alpha2};
    CsvTable t({"alpha2", "eta", "oracle_max_deviation", "completeness_error", "ok"});
    bool all_ok = true;
    for (double eta : etas)
        for (double a2 : a2s) {
            const CatParams p = CatParams::make(a2, eta);
            const KrausSet built = build_kraus(p);
            const double dev = oracle::max_kraus_deviation(built, oracle::derive_kraus(p));
            const double comp = completeness_error(built);
            const bool ok = dev <= 1e-10 && comp <= 1e-12;
            all_ok = all_ok && ok;
            t.add_row({a2, eta, dev, comp, static_cast<long long>(ok ? 1 : 0)});
        }
    write_output(t, o, "validate-kraus", json::object());
    return all_ok ? 0 : kExitNumeric;
}

int cmd_trajectory(const Options &o) {
    select_kernels(o);
    const FeedbackConfig cfg = feedback_config(o);
    const bool feedback = o.feedback.value_or(false);
    RandomStream rng = RandomStream::for_trajectory(cfg.seed, 0);
    std::vector<EventRow> events;
    const TrajectoryResult tr =
        run_trajectory(cfg, feedback, rng, o.record_every.value_or(1), o.events ? &events : nullptr);
    CsvTable t({"step", "fid_be_plus", "fid_bo_plus", "fid_closest", "zz_parity", "coherence"});
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        std::vector<CsvCell> row{static_cast<long long>(tr.steps[i])};
        for (int s = 0; s < kSeriesCount; ++s) row.emplace_back(tr.values[s][i]);
        t.add_row(std::move(row));
    }
    if (o.events) event_table(events).write_file(*o.events);
    json meta = config_json(cfg);
    meta["feedback"] = feedback;
    write_output(t, o, "trajectory", meta);
    return 0;
}

int cmd_ensemble(const Options &o) {
    select_kernels(o);
    EnsembleConfig cfg;
    cfg.base = feedback_config(o);
    cfg.trajectories = o.trajectories.value_or(1000);
    cfg.feedback_enabled = o.feedback.value_or(false);
    cfg.record_every = o.record_every.value_or(1);
    cfg.workers = o.workers.value_or(0);
    if (o.window_first || o.window_last) {
        if (!o.window_first || !o.window_last) throw UsageError("--window-first and --window-last go together");
        cfg.window = StepWindow{*o.window_first, *o.window_last};
    }
    const EnsembleResult r = run_ensemble(cfg);
    json meta = config_json(cfg.base);
    meta["trajectories"] = cfg.trajectories;
    meta["feedback"] = cfg.feedback_enabled;
    meta["record_every"] = cfg.record_every;
    if (r.window) {
        meta["window"] = {{"first", r.window->window.first},
                          {"last", r.window->window.last},
                          {"fid_be_plus_mean", r.window->mean},
                          {"fid_be_plus_sem", r.window->sem}};
        std::cerr << "window fid_be_plus mean " << format_double(r.window->mean) << " sem "
                  << format_double(r.window->sem) << '\n';
    }
    write_output(ensemble_table(r), o, "ensemble", meta);
    return 0;
}

int cmd_preset(const Options &o) {
    select_kernels(o);
    const Preset p = parse_preset(o.preset);
    PresetOptions po;
    po.seed = o.seed.value_or(1);
    po.workers = o.workers.value_or(0);
    po.trajectories = o.trajectories.value_or(0);
    po.steps = o.steps.value_or(0);
    po.record_every = o.record_every.value_or(0);
    if (o.eta) po.etas = {*o.eta};
    if (o.t1_ratio) po.t1_ratios = {*o.t1_ratio};
    json meta;
    meta["preset"] = o.preset;
    meta["seed"] = po.seed;
    meta["trajectories"] = po.trajectories;
    write_output(run_preset(p, po), o, "preset", meta);
    return 0;
}

void add_ket(CsvTable &t, const std::string &report, const std::string &item, const Ket4 &k) {
    static const char *labels[4] = {"00", "01", "10", "11"};
    for (int i = 0; i < 4; ++i) {
        t.add_row({report, item, std::string("re_") + labels[i], k[i].real()});
        t.add_row({report, item, std::string("im_") + labels[i], k[i].imag()});
    }
}

int cmd_abstract_demo(const Options &o) {
    CsvTable t({"report", "case", "quantity", "value"});
    const PhaseflipReport pf = phaseflip_counterexample();
    add_ket(t, "phaseflip", "no_flip", pf.without_flip);
    add_ket(t, "phaseflip", "flip", pf.with_flip);
    t.add_row({std::string("phaseflip"), std::string("flip"), std::string("overlap_psi_minus"),
               pf.overlap_with_psi_minus});
    t.add_row({std::string("phaseflip"), std::string("no_flip"), std::string("concurrence"), pf.concurrence_pure});
    t.add_row({std::string("phaseflip"), std::string("mixture"), std::string("concurrence"), pf.concurrence_mixture});
    t.add_row({std::string("phaseflip"), std::string("mixture"), std::string("eof"), pf.eof_mixture});

    struct Named {
        const char *name;
        ProbeChannelSpec spec;
    };
    const std::vector<Named> specs{{"bit_flip", ProbeChannelSpec::bit_flip()},
                                   {"quarter_phase", ProbeChannelSpec::quarter_phase()},
                                   {"shift4", ProbeChannelSpec::cyclic_shift(4)}};
    for (const auto &s : specs) {
        for (Parity par : {Parity::even, Parity::odd}) {
            for (int n = 0; n <= 3 * s.spec.n_root; ++n) {
                const RootChannelResult r = root_channel_demo(s.spec, par, n);
                const std::string c = std::string(s.name) + (par == Parity::even ? "/even/n=" : "/odd/n=") +
                                      std::to_string(n);
                t.add_row({std::string("root_channel"), c, std::string("target_preserved"),
                           static_cast<long long>(r.target_preserved ? 1 : 0)});
                for (int i = 0; i < r.probe_out.size(); ++i) {
                    t.add_row({std::string("root_channel"), c, "probe_re_" + std::to_string(i), r.probe_out[i].real()});
                    t.add_row({std::string("root_channel"), c, "probe_im_" + std::to_string(i), r.probe_out[i].imag()});
                }
            }
        }
    }
    for (double lambda : {0.1, 0.5, 2.0}) {
        t.add_row({std::string("bitflip_xi"), "poisson_lambda=" + format_double(lambda), std::string("xi"),
                   xi_from_bitflips(poisson_pmf(lambda))});
    }
    write_output(t, o, "abstract-demo", json::object());
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Remote parity measurement with cat-state probes: analytics and Monte-Carlo feedback"};
    app.require_subcommand(1);
    Options o;

    auto *rates_cmd = app.add_subcommand("rates", "Parity and dephasing rates, steady state");
    add_params(rates_cmd, o);
    auto *fmeas_cmd = app.add_subcommand("fmeas", "Measurement count and fidelity estimate");
    add_params(fmeas_cmd, o);
    auto *opt_cmd = app.add_subcommand("optimize-alpha", "Photon number maximizing the steady-state fidelity");
    add_params(opt_cmd, o);
    auto *val_cmd = app.add_subcommand("validate-kraus", "Compare closed-form Kraus operators with the oracle");
    add_params(val_cmd, o);
    auto *traj_cmd = app.add_subcommand("trajectory", "Single Monte-Carlo trajectory");
    add_sim(traj_cmd, o);
    traj_cmd->add_option("--events", o.events, "Per-step event log CSV");
    auto *ens_cmd = app.add_subcommand("ensemble", "Monte-Carlo ensemble statistics");
    add_sim(ens_cmd, o);
    ens_cmd->add_option("--window-first", o.window_first, "First step of the fid_be_plus averaging window");
    ens_cmd->add_option("--window-last", o.window_last, "Last step of the averaging window");
    auto *preset_cmd = app.add_subcommand("preset", "Reproduce one figure's data set");
    preset_cmd->add_option("name", o.preset, "fig2a, fig2b, fig3, thyvssim or fbfid")->required();
    add_sim(preset_cmd, o);
    auto *abs_cmd = app.add_subcommand("abstract-demo", "Abstract protocol reports");
    abs_cmd->add_option("--output", o.output, "Output CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        apply_config(o);
        if (*rates_cmd) return cmd_rates(o, false);
        if (*fmeas_cmd) return cmd_rates(o, true);
        if (*opt_cmd) return cmd_optimize_alpha(o);
        if (*val_cmd) return cmd_validate_kraus(o);
        if (*traj_cmd) return cmd_trajectory(o);
        if (*ens_cmd) return cmd_ensemble(o);
        if (*preset_cmd) return cmd_preset(o);
        if (*abs_cmd) return cmd_abstract_demo(o);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}
