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

// Acceptance driver: one line per criterion, "PASS" or "FAIL", followed by the
// evidence. Exit status is nonzero when any selected criterion fails.

#include "sobolev/certify.hpp"
#include "sobolev/experiment.hpp"
#include "sobolev/models.hpp"
#include "sobolev/suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace sobolev;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int number;
    std::string title;
    std::function<Outcome(std::uint64_t)> run;
};

std::string g(double x) { return format_double(x); }

CheckReport run(const std::string& id, std::uint64_t seed, int trials = 0) {
    CheckOptions o;
    o.seed = check_seed(seed, id);
    o.trials = trials;
    return run_check(id, o);
}

std::string brief(const CheckReport& r) {
    std::ostringstream os;
    os << r.id << " records=" << r.records.size() << " worst_slack=" << g(r.worst_slack)
       << " worst_margin=" << g(r.worst_margin) << " violations=" << r.violations;
    return os.str();
}

Outcome from_checks(const std::vector<CheckReport>& reps) {
    Outcome o{true, ""};
    for (const auto& r : reps) {
        o.pass = o.pass && r.verdict == Verdict::Pass;
        o.detail += (o.detail.empty() ? "" : "; ") + brief(r);
    }
    return o;
}

// Lowest estimate, highest estimate and worst reject rate of a bracket check.
Outcome from_brackets(const CheckReport& r) {
    double lo = INFINITY, hi = -INFINITY, rej = 0;
    for (const auto& rec : r.records) {
        if (rec.tag.ends_with(":rejects")) {
            rej = std::max(rej, rec.value);
        } else {
            lo = std::min(lo, rec.value);
            hi = std::max(hi, rec.value);
        }
    }
    std::ostringstream os;
    os << r.trials << " estimates in [" << g(lo) << ", " << g(hi) << "], max reject rate " << g(rej)
       << ", worst margin " << g(r.worst_margin);
    for (const auto& rec : r.records)
        if (rec.slack + rec.allowed < 0) os << "; out of bracket: " << rec.tag << " = " << g(rec.value);
    return {r.verdict == Verdict::Pass, os.str()};
}

std::vector<Criterion> criteria() {
    return {
        {1, "spectral gap of random transposition is 2",
         [](std::uint64_t) {
             Outcome o{true, ""};
             for (int n : {3, 4}) {
                 const double gap = spectral_gap(random_transposition(n));
                 o.pass = o.pass && std::abs(gap - 2.0) <= 1e-9;
                 o.detail += (n == 3 ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " + g(gap);
             }
             return o;
         }},
        {2, "random transposition constants within [p or 1, 4]",
         [](std::uint64_t s) { return from_brackets(run("brackets-rt", s)); }},
        {3, "Bernoulli-Laplace constants within [p/2 or 1/2, 2]",
         [](std::uint64_t s) { return from_brackets(run("brackets-bl", s)); }},
        {4, "depolarizing Fisher information identity",
         [](std::uint64_t s) { return from_checks({run("depolarizing-identity", s, 100)}); }},
        {5, "martingale additivity", [](std::uint64_t s) { return from_checks({run("martingale-additivity", s, 100)}); }},
        {6, "gradient identity at h = 1e-4",
         [](std::uint64_t s) { return from_checks({run("gradient-identity", s, 50)}); }},
        {7, "entropy decay at the known rates",
         [](std::uint64_t s) { return from_checks({run("decay-rt", s, 100), run("decay-bl", s, 100)}); }},
        {8, "p-norm decay", [](std::uint64_t s) { return from_checks({run("pnorm-decay", s, 50)}); }},
        {9, "cone membership of log and power kernels, side plus",
         [](std::uint64_t s) {
             auto general = run("cone-membership", s, 500);
             auto unital = run("cone-membership-unital", s, 500);
             Outcome o = from_checks({general});
             std::ostringstream os;
             os << o.detail << " [";
             for (const auto& r : general.records) os << " " << r.tag << ":" << g(r.value);
             os << " ]; restricted to unital channels: " << to_string(unital.verdict) << " ("
                << brief(unital) << ")";
             o.detail = os.str();
             return o;
         }},
        {10, "data processing, unital channels and sigma = c 1",
         [](std::uint64_t s) { return from_checks({run("dpi", s, 200)}); }},
        {11, "joint convexity",
         [](std::uint64_t s) {
             return from_checks({run("joint-convexity-rtc", s, 200), run("joint-convexity-metric", s, 200)});
         }},
        {12, "change-of-measure bounds", [](std::uint64_t s) { return from_checks({run("change-of-measure", s, 100)}); }},
        {13, "two-point p-entropy bound for matrix tuples",
         [](std::uint64_t s) { return from_checks({run("lemma-rtl", s, 100)}); }},
        {14, "Daleckii-Krein identity", [](std::uint64_t s) { return from_checks({run("daleckii-krein", s, 100)}); }},
        {15, "tensorization spot check", [](std::uint64_t s) { return from_checks({run("tensorization", s, 200)}); }},
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    std::uint64_t seed = 1;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 15));
    app.add_option("--seed", seed, "base seed");
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (const auto& c : criteria()) {
        if (only && c.number != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(seed);
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("criterion %2d %s | %s | %s (%.1fs)\n", c.number, o.pass ? "PASS" : "FAIL", c.title.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
