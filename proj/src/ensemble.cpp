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

#include "catparity/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "catparity/analytics.hpp"
#include "catparity/error.hpp"

namespace catparity {
namespace {

// Welford running moments; merge() is Chan's pairwise update.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    void merge(const Moments &o) {
        if (o.n == 0.0) return;
        if (n == 0.0) {
            *this = o;
            return;
        }
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }
    double sem() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

struct BlockStats {
    std::array<std::vector<Moments>, kSeriesCount> series;
    Moments window;
};

constexpr std::int64_t kCheckEvery = 4096;

void record(TrajectoryResult &out, const TwoQubitDensity &rho, std::int64_t step) {
    const double be = fidelity(rho, bell_ket(BellState::even_plus));
    const double bo = fidelity(rho, bell_ket(BellState::odd_plus));
    const auto par = parity_probabilities(rho);
    out.steps.push_back(step);
    out.values[0].push_back(be);
    out.values[1].push_back(bo);
    out.values[2].push_back(std::max(be, bo));
    out.values[3].push_back(par[0] - par[1]);
    out.values[4].push_back(coherence_C(rho));
}

}  // namespace

const char *series_name(Series s) {
    switch (s) {
        case Series::fid_be_plus:
            return "fid_be_plus";
        case Series::fid_bo_plus:
            return "fid_bo_plus";
        case Series::fid_closest:
            return "fid_closest";
        case Series::zz_parity:
            return "zz_parity";
        case Series::coherence:
            return "coherence";
    }
    return "?";
}

void EnsembleConfig::validate() const {
    base.validate();
    if (trajectories < 1) throw UsageError("trajectories must be >= 1");
    if (record_every < 1) throw UsageError("record_every must be >= 1");
    if (window && (window->first < 1 || window->last < window->first || window->last > base.steps)) {
        throw UsageError("window must satisfy 1 <= first <= last <= steps");
    }
}

TrajectoryResult run_trajectory(const FeedbackStepper &stepper, bool feedback, RandomStream &rng,
                                std::int64_t record_every, const std::optional<StepWindow> &window,
                                std::vector<EventRow> *events) {
    const FeedbackConfig &cfg = stepper.config();
    TrajectoryResult out;
    const std::int64_t n_records = cfg.steps / record_every;
    out.steps.reserve(n_records);
    for (auto &v : out.values) v.reserve(n_records);

    TwoQubitDensity rho = initial_density(cfg.initial_state);
    FilterState fs = FilterState::initial(cfg.filter_mode, rho);
    const Ket4 target = bell_ket(BellState::even_plus);
    double window_sum = 0.0;

    for (std::int64_t k = 1; k <= cfg.steps; ++k) {
        StepRecord rec{Outcome::plus, Basis::z, false, std::numeric_limits<double>::quiet_NaN()};
        if (feedback) {
            rec = stepper.step(rho, fs, rng, k - 1);
        } else {
            rec.outcome = stepper.open_loop(rho, rng);
        }
        const bool need_fid = events || (window && k >= window->first && k <= window->last);
        const double fid = need_fid ? fidelity(rho, target) : 0.0;
        if (window && k >= window->first && k <= window->last) window_sum += fid;
        if (events) events->push_back({k, rec.outcome, rec.pulse_fired, fid, rec.p_odd_filter});
        if (k % record_every == 0) record(out, rho, k);
        if (k % kCheckEvery == 0) rho.check();
    }
    rho.check();
    if (window) out.window_mean = window_sum / static_cast<double>(window->last - window->first + 1);
    return out;
}

TrajectoryResult run_trajectory(const FeedbackConfig &cfg, bool feedback, RandomStream &rng,
                                std::int64_t record_every, std::vector<EventRow> *events) {
    return run_trajectory(FeedbackStepper(cfg), feedback, rng, record_every, std::nullopt, events);
}

EnsembleResult run_ensemble(const EnsembleConfig &cfg) {
    cfg.validate();
    const FeedbackStepper stepper(cfg.base);
    const std::int64_t n_blocks = (cfg.trajectories + kEnsembleBlock - 1) / kEnsembleBlock;
    const std::int64_t n_records = cfg.base.steps / cfg.record_every;

    std::vector<BlockStats> blocks(n_blocks);
    std::vector<std::exception_ptr> errors(n_blocks);
    std::atomic<std::int64_t> next{0};

    auto work = [&] {
        for (;;) {
            const std::int64_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            try {
                BlockStats &bs = blocks[b];
                for (auto &s : bs.series) s.assign(n_records, Moments{});
                const std::int64_t end = std::min(cfg.trajectories, (b + 1) * kEnsembleBlock);
                for (std::int64_t t = b * kEnsembleBlock; t < end; ++t) {
                    RandomStream rng = RandomStream::for_trajectory(cfg.base.seed, static_cast<std::uint64_t>(t));
                    const TrajectoryResult tr =
                        run_trajectory(stepper, cfg.feedback_enabled, rng, cfg.record_every, cfg.window);
                    for (int s = 0; s < kSeriesCount; ++s)
                        for (std::int64_t i = 0; i < n_records; ++i) bs.series[s][i].add(tr.values[s][i]);
                    if (tr.window_mean) bs.window.add(*tr.window_mean);
                }
            } catch (...) {
                errors[b] = std::current_exception();
            }
        }
    };

    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, n_blocks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto &t : pool) t.join();
    }
    for (const auto &e : errors)
        if (e) std::rethrow_exception(e);

    BlockStats total;
    for (auto &s : total.series) s.assign(n_records, Moments{});
    for (const BlockStats &bs : blocks) {
        for (int s = 0; s < kSeriesCount; ++s)
            for (std::int64_t i = 0; i < n_records; ++i) total.series[s][i].merge(bs.series[s][i]);
        total.window.merge(bs.window);
    }

    EnsembleResult r;
    r.config = cfg;
    for (std::int64_t i = 1; i <= n_records; ++i) r.steps.push_back(i * cfg.record_every);
    for (int s = 0; s < kSeriesCount; ++s) {
        r.series[s].mean.resize(n_records);
        r.series[s].sem.resize(n_records);
        for (std::int64_t i = 0; i < n_records; ++i) {
            r.series[s].mean[i] = total.series[s][i].mean;
            r.series[s].sem[i] = total.series[s][i].sem();
        }
    }
    if (cfg.window) r.window = WindowStats{*cfg.window, total.window.mean, total.window.sem()};
    return r;
}

CsvTable ensemble_table(const EnsembleResult &r) {
    std::vector<std::string> header{"step"};
    for (int s = 0; s < kSeriesCount; ++s) {
        header.push_back(std::string(series_name(static_cast<Series>(s))) + "_mean");
        header.push_back(std::string(series_name(static_cast<Series>(s))) + "_sem");
    }
    CsvTable t(header);
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        std::vector<CsvCell> row{static_cast<long long>(r.steps[i])};
        for (int s = 0; s < kSeriesCount; ++s) {
            row.emplace_back(r.series[s].mean[i]);
            row.emplace_back(r.series[s].sem[i]);
        }
        t.add_row(std::move(row));
    }
    return t;
}

CsvTable event_table(const std::vector<EventRow> &events) {
    CsvTable t({"step", "outcome", "pulse_fired", "fid_be_plus", "p_odd_filter"});
    for (const auto &e : events) {
        t.add_row({static_cast<long long>(e.step), std::string(e.outcome == Outcome::plus ? "+" : "-"),
                   static_cast<long long>(e.pulse_fired ? 1 : 0), e.fid_be_plus, e.p_odd_filter});
    }
    return t;
}

}  // namespace catparity
