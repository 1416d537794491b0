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
#include "sobolev/doi.hpp"
#include "sobolev/entropy.hpp"
#include "sobolev/generator.hpp"
#include "sobolev/suite.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sobolev {

using json = nlohmann::json;

// Malformed config or model spec; the CLI maps this to exit status 2.
struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// 12 significant digits, locale-independent.
std::string format_double(double x);
// x rounded to 12 significant digits (what the reports print).
double round12(double x);

// Model spec:
//   {"model": "random_transposition" | "bernoulli_laplace" | "depolarizing" | "graph" | "tensor",
//    "params": {...}, "matrix_dim": k}
// Parameters may also sit at top level, e.g. {"model": "random_transposition", "n": 3}.
json canonical_model_spec(const json& spec);
Generator build_model(const json& spec);

json canonical_function_spec(const json& spec);
ScalarFunction build_function(const json& spec);

json canonical_kernel_spec(const json& spec);
Kernel build_kernel(const json& spec);

json to_json(const CheckReport& r);
json to_json(const CertificationResult& r);
json to_json(const ConeTestReport& r);
json to_json(const EntropyValue& v);
json to_json(const AlgebraElement& x);

inline const char* kCsvHeader = "check_id,model,f,p,k,seed,value,slack,verdict";
std::string to_csv(const std::vector<CheckReport>& reports);

// Write to a sibling temp file, then rename over the target.
void write_atomic(const std::string& path, const std::string& content);

// Columns t, entropy, bound_e_minus_lambda_t with the bound anchored at the
// first grid point.
std::string decay_curve_csv(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho,
                            const std::vector<double>& t_grid, double lambda);
void emit_decay_curve(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho,
                      const std::vector<double>& t_grid, double lambda, const std::string& path);

struct ExperimentConfig {
    std::string command;
    json model;
    json f;
    int k = 1;
    Budget budget;
    std::uint64_t seed = 0;
    std::vector<double> t_grid;
    std::optional<double> lambda;
    std::optional<double> p;
    int trials = 0;
    std::optional<std::vector<std::string>> checks;
    std::map<std::string, Tolerance> tolerances;
    std::map<std::string, int> check_trials;
    json cone;
    bool unrestricted = false;
    std::string json_name = "report.json";
    std::string csv_name = "report.csv";
    std::string curve_name = "decay_curve.csv";

    json to_json() const;
};

ExperimentConfig parse_config(const json& j);

struct RunResult {
    int exit_code = 0;
    Verdict verdict = Verdict::Pass;
    json report;
    std::string csv;
    std::string curve_csv;  // decay command only
    std::string summary;    // one or more lines for stdout
};

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumerical = 3;

// Runs a validated config. Numerical breakdowns propagate as exceptions.
RunResult run_experiment(const ExperimentConfig& config);

// parse + run + write artifacts under out_dir (if non-empty), mapping errors
// to exit codes. check_filter restricts suite checks.
RunResult run_cli(const json& config, std::optional<std::uint64_t> seed_override, const std::string& out_dir,
                  const std::vector<std::string>& check_filter);

}  // namespace sobolev
