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

#include <atomic>
#include <cstdlib>
#include <string>

#include "catparity/error.hpp"
#include "catparity/kernels.hpp"

namespace catparity::kernels {
namespace {

const KernelTable *initial_table() {
    if (const char *env = std::getenv("CATPARITY_KERNELS")) {
        if (auto isa = parse_isa(env); isa && supported(*isa)) return &table(*isa);
    }
    if (supported(Isa::avx2)) return &table(Isa::avx2);
    if (supported(Isa::sse2)) return &table(Isa::sse2);
    return &scalar_table();
}

std::atomic<const KernelTable *> &active_slot() {
    static std::atomic<const KernelTable *> slot{initial_table()};
    return slot;
}

}  // namespace

bool supported(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
#if defined(CATPARITY_HAVE_X86_KERNELS)
        case Isa::sse2:
            return __builtin_cpu_supports("sse2");
        case Isa::avx2:
            return __builtin_cpu_supports("avx2");
#else
        case Isa::sse2:
        case Isa::avx2:
            return false;
#endif
    }
    return false;
}

const KernelTable &table(Isa isa) {
    if (!supported(isa)) {
        throw DomainError("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this CPU");
    }
    switch (isa) {
#if defined(CATPARITY_HAVE_X86_KERNELS)
        case Isa::sse2:
            return sse2_table();
        case Isa::avx2:
            return avx2_table();
#endif
        default:
            return scalar_table();
    }
}

const KernelTable &active() { return *active_slot().load(std::memory_order_acquire); }

void select(Isa isa) { active_slot().store(&table(isa), std::memory_order_release); }

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "sse2") return Isa::sse2;
    if (name == "avx2") return Isa::avx2;
    return std::nullopt;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::sse2:
            return "sse2";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace catparity::kernels
