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

#include "util.hpp"

#include "sobolev/certify.hpp"
#include "sobolev/entropy.hpp"
#include "sobolev/expectation.hpp"
#include "sobolev/models.hpp"
#include "sobolev/nelder_mead.hpp"
#include "sobolev/spectral.hpp"

#include <cmath>
#include <limits>

using namespace sobolev;
using testutil::diag;

TEST_SUITE("certify") {

TEST_CASE("check report bookkeeping") {
    CheckReport r;
    r.tolerance = {1e-3, 1e-2};
    r.add(1, 0.0, 5.0, 0.5, 10.0);
    CHECK(r.records.back().allowed == doctest::Approx(1e-3 + 1e-1));
    r.add(2, 0.0, 5.0, -0.1, -10.0);  // inside the allowance
    r.finalize();
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.violations == 0);
    CHECK(r.worst_slack == doctest::Approx(-0.1));
    CHECK(r.worst_margin == doctest::Approx(0.001));
    r.add(3, 0.0, 5.0, -0.2, 10.0);
    r.finalize();
    CHECK(r.verdict == Verdict::Fail);
    CHECK(r.violations == 1);
    CheckReport nan_rep;
    nan_rep.add(0, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0);
    nan_rep.finalize();
    CHECK(nan_rep.verdict == Verdict::Fail);

    CheckReport info;
    info.informational = true;
    info.add(0, 0.0, 0.0, -5.0, 0.0);
    info.finalize();
    CHECK(info.verdict == Verdict::Informational);
    CHECK(info.violations == 1);

    CheckReport empty;
    empty.finalize();
    CHECK(empty.verdict == Verdict::Pass);
    r.merge(info);
    CHECK(r.records.size() == 4);
    CHECK(r.violations == 2);
}

TEST_CASE("random states are tau-normalized and positive") {
    auto alg = make_algebra({{"a", 2}, {"b", 3}}, {0.4, 0.6});
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto rho = random_state(alg, s);
        CHECK(std::abs(trace(rho) - 1.0) < 1e-12);
        CHECK(min_eigenvalue(rho) > 0.0);
    }
}

TEST_CASE("sobolev ratio") {
    auto a = random_transposition(3);
    auto one = AlgebraElement::identity(a.algebra());
    CHECK_FALSE(try_sobolev_ratio(a, ScalarFunction::xlogx(), one).has_value());
    CHECK_THROWS_AS(sobolev_ratio(a, ScalarFunction::xlogx(), one), DomainError);
    // degree-p homogeneity of both numerator and denominator
    auto rho = random_state(a.algebra(), 4);
    for (const auto& f : {ScalarFunction::xlogx(), ScalarFunction::power(1.5)}) {
        const double r1 = sobolev_ratio(a, f, rho);
        const double r2 = sobolev_ratio(a, f, 3.7 * rho);
        CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
    }
}

TEST_CASE("two-point ratio by hand") {
    // Delta_2 = 2 (I - E). For f = (1 + u, 1 - u) and x log x:
    // Fisher = 2 * u * atanh-like log term, entropy = relative entropy to 1.
    auto a = random_transposition(2);
    const double u = 0.6;
    AlgebraElement rho(a.algebra(), {diag({1 + u}), diag({1 - u})});
    const double ent = 0.5 * ((1 + u) * std::log(1 + u) + (1 - u) * std::log(1 - u));
    const double fisher = 0.5 * (2 * u * std::log(1 + u) - 2 * u * std::log(1 - u));
    CHECK(entropy_vs_subalgebra(ScalarFunction::xlogx(), rho, a.fixed_point_expectation()).value ==
          doctest::Approx(ent).epsilon(1e-13));
    CHECK(fisher_generator(a, ScalarFunction::xlogx(), rho) == doctest::Approx(fisher).epsilon(1e-13));
    CHECK(sobolev_ratio(a, ScalarFunction::xlogx(), rho) == doctest::Approx(fisher / ent).epsilon(1e-12));
}

TEST_CASE("brackets and model descriptions") {
    auto rt = random_transposition(3);
    auto bl = bernoulli_laplace(4, 2, 2);
    auto dep = depolarizing(full_trace(matrix_algebra(2)));
    CHECK(describe_model(rt) == "random_transposition(n=3,k=1)");
    CHECK(describe_model(bl) == "bernoulli_laplace(n=4,r=2,k=2)");
    CHECK(describe_model(dep) == "depolarizing");
    CHECK(*paper_bracket(rt, ScalarFunction::power(1.5)) == std::make_pair(1.5, 4.0));
    CHECK(*paper_bracket(rt, ScalarFunction::xlogx()) == std::make_pair(1.0, 4.0));
    CHECK(*paper_bracket(bl, ScalarFunction::power(1.5)) == std::make_pair(0.75, 2.0));
    CHECK(*paper_bracket(bl, ScalarFunction::xlogx()) == std::make_pair(0.5, 2.0));
    CHECK(paper_bracket(dep, ScalarFunction::power(1.25))->first == 1.25);
    CHECK(std::isinf(paper_bracket(dep, ScalarFunction::power(1.25))->second));
    CHECK_FALSE(paper_bracket(rt, ScalarFunction::power(2.5)).has_value());
    CHECK_FALSE(paper_bracket(rt, ScalarFunction::log()).has_value());
}

TEST_CASE("nelder mead minimizes a quadratic") {
    Eigen::VectorXd c(3);
    c << 1.0, -2.0, 0.5;
    auto fn = [&](const Eigen::VectorXd& x) { return (x - c).squaredNorm() + 3.0; };
    auto r = nelder_mead(fn, Eigen::VectorXd::Zero(3), {4000, 1e-12, 0.5, 6});
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK((r.x - c).norm() < 1e-4);
    auto rosen = [](const Eigen::VectorXd& x) {
        return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
    };
    auto rr = nelder_mead(rosen, Eigen::Vector2d(-1.2, 1.0), {5000, 1e-14, 0.5, 6});
    CHECK(rr.value < 1e-8);
}

TEST_CASE("estimate_constant on small models") {
    auto a = bernoulli_laplace(3, 1);
    const auto f = ScalarFunction::power(1.5);
    auto res = estimate_constant(a, f, 1, {6, 600, 5});
    REQUIRE(res.bracket.has_value());
    CHECK(res.estimate >= res.bracket->first - 1e-6);
    CHECK(res.estimate <= res.bracket->second + 1e-6);
    CHECK(res.restarts == 6);
    CHECK(res.restart_best.size() == 6);
    CHECK(sobolev_ratio(a, f, res.witness) == doctest::Approx(res.estimate).epsilon(1e-9));
    CHECK(std::abs(trace(res.witness) - 1.0) < 1e-12);
    // the minimum over restarts
    double lo = INFINITY;
    for (double v : res.restart_best) lo = std::min(lo, v);
    CHECK(lo == doctest::Approx(res.estimate).epsilon(1e-12));
    auto again = estimate_constant(a, f, 1, {6, 600, 5});
    CHECK(again.estimate == res.estimate);
    CHECK_THROWS_AS(estimate_constant(a, f, 0, {2, 10, 0}), ContractError);
}

TEST_CASE("ampliating a state leaves the ratio unchanged") {
    auto a = random_transposition(3);
    auto a2 = ampliate_generator(a, 2);
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto rho = random_state(a.algebra(), s);
        for (const auto& f : {ScalarFunction::xlogx(), ScalarFunction::power(1.5)})
            CHECK(sobolev_ratio(a2, f, ampliate(rho, 2)) == doctest::Approx(sobolev_ratio(a, f, rho)).epsilon(1e-9));
    }
}

TEST_CASE("decay check") {
    auto a = random_transposition(3);
    const auto f = ScalarFunction::xlogx();
    auto rho = random_state(a.algebra(), 2);
    auto rep = decay_check(a, f, 1.0, rho, default_t_grid());
    CHECK(rep.id == "decay");
    REQUIRE(rep.records.size() == default_t_grid().size());
    CHECK(rep.records[0].t == 0.0);
    CHECK(rep.records[0].slack == 0.0);
    CHECK(rep.verdict == Verdict::Pass);
    for (std::size_t i = 1; i < rep.records.size(); ++i) CHECK(rep.records[i].value <= rep.records[i - 1].value + 1e-15);
    // a rate far above the true constant must fail
    CHECK(decay_check(a, f, 50.0, rho, default_t_grid()).verdict == Verdict::Fail);
}

TEST_CASE("p-norm decay and the tau p-norm") {
    auto m2 = matrix_algebra(2);
    CHECK(tau_pnorm(AlgebraElement::identity(m2), 1.5) == doctest::Approx(1.0));
    CHECK(tau_pnorm(testutil::single(diag({2, 0})), 2.0) == doctest::Approx(std::sqrt(2.0)));
    Matrix off = Matrix::Zero(2, 2);
    off(0, 1) = 3;  // singular values (3, 0)
    CHECK(tau_pnorm(testutil::single(off), 1.5) == doctest::Approx(std::pow(0.5 * std::pow(3.0, 1.5), 1 / 1.5)));
    auto a = random_transposition(3);
    auto rep = pnorm_decay_check(a, 1.5, 0.75, random_state(a.algebra(), 3), default_t_grid());
    CHECK(rep.verdict == Verdict::Pass);
    CHECK_THROWS_AS(pnorm_decay_check(a, 2.5, 0.75, random_state(a.algebra(), 3), default_t_grid()), ContractError);
}

TEST_CASE("rtl inequality by hand and at random") {
    // f = (2, 0), p = 3/2: the entropy side is sqrt(2) - 1 and the
    // pairwise side is (1/8) * 2 * (2 * sqrt(2)) = sqrt(2) / 2.
    auto alg = uniform_algebra(2, 1);
    AlgebraElement f(alg, {diag({2}), diag({0})});
    auto e = partition_average(alg, {{0, 1}});
    const double lhs = entropy_vs_subalgebra(ScalarFunction::power(1.5), f, e).value;
    CHECK(lhs == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-13));
    CHECK(lhs <= std::sqrt(2.0) / 2.0);
    // constant tuples give zero on both sides
    auto flat = AlgebraElement::identity(uniform_algebra(3, 2));
    CHECK(std::abs(entropy_vs_subalgebra(ScalarFunction::power(1.5), flat,
                                         partition_average(flat.algebra(), {{0, 1, 2}}))
                       .value) < 1e-14);
    for (double p : {1.25, 1.5, 1.75}) {
        auto rep = lemma_rtl_check(3, 2, 20, p, 7);
        CHECK(rep.verdict == Verdict::Pass);
        CHECK(rep.records.size() == 20);
    }
    CHECK_THROWS_AS(lemma_rtl_check(3, 1, 5, 2.0, 0), ContractError);
}

TEST_CASE("replay constants") {
    for (double p : {1.25, 1.5, 1.75}) {
        CHECK(replay_constant_rt(2, p) == doctest::Approx(2 * p));
        CHECK(replay_constant_rt(3, p) == doctest::Approx(12 * p / 7));
        // 1 / (2/(3 c3) + 1/(4p)) with c3 = 12p/7
        CHECK(replay_constant_rt(4, p) == doctest::Approx(1.0 / (14.0 / (36 * p) + 1.0 / (4 * p))));
        CHECK(replay_constant_bl(3, 1, p) == doctest::Approx(p));
        CHECK(replay_constant_bl(3, 2, p) == doctest::Approx(p));
        CHECK(replay_constant_bl(4, 2, p) == doctest::Approx(6 * p / 7));
        CHECK(std::isinf(replay_constant_bl(4, 0, p)));
        // the recursion stays inside the bracket
        for (int n = 2; n <= 6; ++n) CHECK(replay_constant_rt(n, p) >= p - 1e-12);
    }
}

TEST_CASE("replay and ratio checks pass on small models") {
    auto rt = martingale_recursion_replay(ReplayFamily::RandomTransposition, 3, 0, 1.5, 6, 1);
    CHECK(rt.id == "replay-rt");
    CHECK(rt.verdict == Verdict::Pass);
    auto bl = martingale_recursion_replay(ReplayFamily::BernoulliLaplace, 3, 1, 1.5, 6, 1);
    CHECK(bl.verdict == Verdict::Pass);
    auto a = random_transposition(3);
    CHECK(ratio_lower_bound_check(a, ScalarFunction::power(1.5), 1.5, 40, 3).verdict == Verdict::Pass);
    CHECK(ratio_lower_bound_check(a, ScalarFunction::power(1.5), 10.0, 40, 3).verdict == Verdict::Fail);
}

}  // TEST_SUITE
