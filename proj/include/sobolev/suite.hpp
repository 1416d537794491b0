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

#include "sobolev/certify.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sobolev {

struct CheckOptions {
    std::uint64_t seed = 0;
    int trials = 0;  // 0 = the check's default
    std::optional<Tolerance> tolerance;
};

using CheckFn = std::function<CheckReport(const CheckOptions&)>;

struct CheckSpec {
    std::string id;
    std::string description;
    int default_trials = 0;
    Tolerance default_tolerance;
    bool informational = false;
    // Part of the default suite. Slow or known-failing checks are opt-in.
    bool in_default_suite = true;
    CheckFn run;
};

const std::vector<CheckSpec>& check_registry();
const CheckSpec& find_check(const std::string& id);  // ContractError on unknown ids
std::vector<std::string> default_check_ids();

CheckReport run_check(const std::string& id, const CheckOptions& options);

struct CheckOverride {
    std::optional<int> trials;
    std::optional<Tolerance> tolerance;
};

struct SuiteConfig {
    std::vector<std::string> checks;
    std::uint64_t seed = 0;
    std::map<std::string, CheckOverride> overrides;
};

// Checks run in the listed order; each gets a seed derived from the suite
// seed and its id, so dropping a check does not reshuffle the others.
std::vector<CheckReport> suite_run(const SuiteConfig& config);
Verdict aggregate_verdict(const std::vector<CheckReport>& reports);

std::uint64_t check_seed(std::uint64_t suite_seed, const std::string& id);

}  // namespace sobolev
