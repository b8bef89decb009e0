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

#include <stdexcept>
#include <string>

namespace catparity {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A measurement outcome whose probability is below the structural-zero threshold.
class ImpossibleOutcome : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A state or result violated one of its numerical invariants.
class NumericFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: unknown preset, malformed config file, missing flag.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace catparity
