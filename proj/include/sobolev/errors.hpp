// Copyright 2026 The sobolev-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sobolev {

// Precondition or invariant of an operation was violated by the caller.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A function was evaluated outside its domain (e.g. f'(0) for x ln x).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// The computation broke down numerically (non-finite values, failed solver).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Verdict { Pass, Fail, Inconclusive, Informational };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Informational: return "informational";
    }
    return "unknown";
}

}  // namespace sobolev
