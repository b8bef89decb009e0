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

// Reproducible random streams.
//
// Generator "mt19937_64/v1": std::mt19937_64 (its output sequence is fixed by
// the C++ standard) seeded with a single 64-bit value. Uniform doubles take
// the top 53 bits: (x >> 11) * 2^-53, so every platform draws the same values.
//
// Stream splitting: trajectory i of a run with master seed s uses
//     stream_seed(s, i) = mix64(s ^ mix64(i + 0x9E3779B97F4A7C15))
// where mix64 is the SplitMix64 finalizer.

#include <cstdint>
#include <random>
#include <string_view>

namespace catparity {

inline constexpr std::string_view kRngVersion = "mt19937_64/v1";

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream for_trajectory(std::uint64_t master, std::uint64_t index) {
        return RandomStream(stream_seed(master, index));
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace catparity
