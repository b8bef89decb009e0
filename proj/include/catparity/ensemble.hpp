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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catparity/csv.hpp"
#include "catparity/feedback.hpp"
#include "catparity/rng.hpp"

namespace catparity {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Series : std::uint8_t { fid_be_plus, fid_bo_plus, fid_closest, zz_parity, coherence };
inline constexpr int kSeriesCount = 5;
const char *series_name(Series s);

struct StepWindow {
    std::int64_t first;  // inclusive, 1-based step index
    std::int64_t last;   // inclusive
};

struct EnsembleConfig {
    FeedbackConfig base;
    std::int64_t trajectories = 1;
    bool feedback_enabled = false;
    std::int64_t record_every = 1;
    unsigned workers = 1;  // 0 picks the hardware concurrency
    std::optional<StepWindow> window;  // per-trajectory mean of fid_be_plus

    void validate() const;
};

struct EventRow {
    std::int64_t step;
    Outcome outcome;
    bool pulse_fired;
    double fid_be_plus;
    double p_odd_filter;  // NaN in measurement-only mode
};

struct TrajectoryResult {
    std::vector<std::int64_t> steps;
    std::array<std::vector<double>, kSeriesCount> values;
    std::optional<double> window_mean;
};

/// Runs one trajectory, recording after every record_every-th step.
TrajectoryResult run_trajectory(const FeedbackStepper &stepper, bool feedback, RandomStream &rng,
                                std::int64_t record_every = 1, const std::optional<StepWindow> &window = {},
                                std::vector<EventRow> *events = nullptr);
TrajectoryResult run_trajectory(const FeedbackConfig &cfg, bool feedback, RandomStream &rng,
                                std::int64_t record_every = 1, std::vector<EventRow> *events = nullptr);

struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> sem;
};

struct WindowStats {
    StepWindow window;
    double mean;
    double sem;
};

struct EnsembleResult {
    EnsembleConfig config;
    std::vector<std::int64_t> steps;
    std::array<SeriesStats, kSeriesCount> series;
    std::optional<WindowStats> window;

    const SeriesStats &operator[](Series s) const { return series[static_cast<int>(s)]; }
};

/// Trajectory i uses RandomStream::for_trajectory(seed, i). Trajectories are
/// grouped into fixed blocks whose statistics are merged in block order, so the
/// result does not depend on the worker count.
EnsembleResult run_ensemble(const EnsembleConfig &cfg);

inline constexpr std::int64_t kEnsembleBlock = 64;

CsvTable ensemble_table(const EnsembleResult &r);
CsvTable event_table(const std::vector<EventRow> &events);

}  // namespace catparity
