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

// Dense 4x4 kernels behind every two-qubit channel. A density matrix is passed
// as 32 doubles: 16 complex entries, row-major, interleaved (re, im). Real 4x4
// operators are 16 doubles, row-major.
//
// All variants evaluate the same arithmetic in the same order with no fused
// multiply-add, so they agree bit for bit. The project is compiled with
// -ffp-contract=off to keep it that way.

#include <cstdint>
#include <optional>
#include <string_view>

namespace catparity::kernels {

enum class Isa : std::uint8_t { scalar, sse2, avx2 };

struct KernelTable {
    Isa isa;
    const char *name;
    // out[ij] = w[ij] * rho[ij]  (real weight applied to re and im).
    void (*hadamard_real)(const double *w, const double *rho, double *out);
    // acc += U * rho * U^T.
    void (*conjugate_real_add)(const double *u, const double *rho, double *acc);
    // out = s * rho.
    void (*scale)(double s, const double *rho, double *out);
};

const KernelTable &scalar_table();
#if defined(CATPARITY_HAVE_X86_KERNELS)
const KernelTable &sse2_table();
const KernelTable &avx2_table();
#endif

/// True when the variant is compiled in and the running CPU can execute it.
bool supported(Isa isa);

/// Kernel table for a given variant; throws DomainError when unsupported.
const KernelTable &table(Isa isa);

/// The process-wide active table. Chosen on first use: CATPARITY_KERNELS
/// (scalar|sse2|avx2) if set, otherwise the widest supported variant.
const KernelTable &active();

/// Replace the active table. Intended for tests and the --kernels CLI flag.
void select(Isa isa);

std::optional<Isa> parse_isa(std::string_view name);
std::string_view isa_name(Isa isa);

}  // namespace catparity::kernels
