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

#include <cstdint>
#include <string>
#include <vector>

#include "catparity/csv.hpp"

namespace catparity {

enum class Preset : std::uint8_t { fig2a, fig2b, fig3, thyvssim, fbfid };

/// Throws UsageError for an unknown name.
Preset parse_preset(const std::string &name);
const char *preset_name(Preset p);

struct PresetOptions {
    std::uint64_t seed = 1;
    unsigned workers = 0;
    // Zero keeps the preset default.
    std::int64_t trajectories = 0;
    std::int64_t steps = 0;
    std::int64_t record_every = 0;
    // fbfid grid; empty keeps the default grid.
    std::vector<double> etas;
    std::vector<double> t1_ratios;
};

inline const std::vector<double> kSweepAlpha2{0.5, 1.0, 2.0, 4.0};
inline const std::vector<double> kFig3Alpha2{1.0, 1.63, 2.0, 3.273, 4.0};
inline const std::vector<double> kFbfidEtas{0.75, 0.85, 0.95};
inline const std::vector<double> kFbfidT1Ratios{300.0, 1000.0, 3000.0};

CsvTable run_preset(Preset p, const PresetOptions &opt);

CsvTable fig3_table();
CsvTable thyvssim_table(const PresetOptions &opt);
CsvTable fbfid_table(const PresetOptions &opt);
CsvTable alpha_sweep_table(bool feedback, const PresetOptions &opt);

}  // namespace catparity
