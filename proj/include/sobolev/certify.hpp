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

#include "sobolev/algebra.hpp"
#include "sobolev/errors.hpp"
#include "sobolev/generator.hpp"
#include "sobolev/scalar_function.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sobolev {

// Denominators at or below this are rejected samples.
inline constexpr double kRatioDenominatorFloor = 1e-12;

struct Tolerance {
    double abs = 0.0;
    double rel = 0.0;
};

struct CheckRecord {
    std::uint64_t seed = 0;
    double t = 0.0;
    std::string tag;
    double value = 0.0;
    double slack = 0.0;
    double allowed = 0.0;
};

/// Outcome of one verification check. A record violates when
/// slack + allowed < 0, with allowed = abs + rel * (check-specific scale).
struct CheckReport {
    std::string id;
    std::string model;
    std::string f;
    double p = 0.0;
    int k = 1;
    int trials = 0;
    Tolerance tolerance;
    bool informational = false;
    double worst_slack = 0.0;
    double worst_margin = 0.0;
    int violations = 0;
    Verdict verdict = Verdict::Pass;
    std::string note;
    std::vector<CheckRecord> records;

    void add(std::uint64_t seed, double t, double value, double slack, double scale,
             std::string tag = {});
    // Recomputes worst slack/margin, violation count and the verdict.
    void finalize();
    void merge(const CheckReport& other);
};

// tau-normalized random state; the seed also picks one of three shapes
// (full rank, half rank plus a small floor, identity plus a Hermitian bump).
AlgebraElement random_state(const AlgebraPtr& alg, std::uint64_t seed);

std::optional<double> try_sobolev_ratio(const Generator& a, const ScalarFunction& f,
                                        const AlgebraElement& rho);
// Throws DomainError on a degenerate denominator.
double sobolev_ratio(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho);

struct Budget {
    int restarts = 32;
    int iters = 2000;
    std::uint64_t seed = 0;
};

struct CertificationResult {
    std::string model;
    std::string f;
    int k = 1;
    double estimate = 0.0;
    AlgebraElement witness;
    int restarts = 0;
    long samples = 0;
    long rejected = 0;
    std::vector<double> restart_best;
    std::optional<std::pair<double, double>> bracket;
};

// Known lower/upper bounds for the built-in families, when the theory gives them.
std::optional<std::pair<double, double>> paper_bracket(const Generator& a, const ScalarFunction& f);
std::string describe_model(const Generator& a);

// Minimizes the ratio over rho = G G^dagger + 1e-8 (on the k-ampliation),
// an upper estimate of the infimum.
CertificationResult estimate_constant(const Generator& a, const ScalarFunction& f, int k,
                                      const Budget& budget = {});

std::vector<double> default_t_grid();

CheckReport decay_check(const Generator& a, const ScalarFunction& f, double lambda,
                        const AlgebraElement& rho, const std::vector<double>& t_grid,
                        Tolerance tol = {0.0, 1e-9});
CheckReport fisher_decay_check(const Generator& a, const ScalarFunction& f, double lambda,
                               const AlgebraElement& rho, const std::vector<double>& t_grid);
CheckReport pnorm_decay_check(const Generator& a, double p, double lambda, const AlgebraElement& rho,
                              const std::vector<double>& t_grid, Tolerance tol = {0.0, 1e-9});

double tau_pnorm(const AlgebraElement& x, double p);

CheckReport lemma_rtl_check(int n, int k, int trials, double p, std::uint64_t seed,
                            Tolerance tol = {1e-9, 1e-9});

enum class ReplayFamily { RandomTransposition, BernoulliLaplace };

// Checks the two ingredient inequalities of the martingale induction on the
// model with n + 1 sites (r particles for Bernoulli-Laplace).
CheckReport martingale_recursion_replay(ReplayFamily family, int n, int r, double p, int trials,
                                        std::uint64_t seed, int k = 1, Tolerance tol = {1e-10, 1e-9});
// Inductive lower bounds used by the replay.
double replay_constant_rt(int n, double p);
double replay_constant_bl(int n, int r, double p);

// Samples random states and checks ratio >= bound.
CheckReport ratio_lower_bound_check(const Generator& a, const ScalarFunction& f, double bound,
                                    int samples, std::uint64_t seed, Tolerance tol = {1e-6, 0.0});

}  // namespace sobolev
