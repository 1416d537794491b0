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

#include "sobolev/entropy.hpp"
#include "sobolev/expectation.hpp"
#include "sobolev/models.hpp"

#include <cmath>

using namespace sobolev;
using testutil::diag;
using testutil::dist;
using testutil::single;

TEST_SUITE("entropy") {

TEST_CASE("ln 2 example") {
    const auto f = ScalarFunction::xlogx();
    auto m2 = matrix_algebra(2);
    auto v = bregman(f, single(diag({2, 0})), AlgebraElement::identity(m2), 1e-8);
    CHECK(v.value == doctest::Approx(std::log(2.0)).epsilon(1e-7));
    CHECK(v.epsilon == 1e-8);
    // the same numbers on a two-point classical space
    auto pts = make_algebra({{"x", 1}, {"y", 1}}, {0.5, 0.5});
    AlgebraElement rho(pts, {diag({2}), diag({0})});
    CHECK(bregman(f, rho, AlgebraElement::identity(pts), 1e-8).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-7));
    CHECK(entropy_vs_subalgebra(f, rho, full_trace(pts)).value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("singular sigma needs epsilon") {
    auto m2 = matrix_algebra(2);
    auto rho = AlgebraElement::identity(m2);
    CHECK_THROWS_AS(bregman(ScalarFunction::xlogx(), rho, single(diag({2, 0}))), DomainError);
    CHECK_THROWS_AS(bregman(ScalarFunction::xlogx(), rho, rho, -1.0), ContractError);
    CHECK(std::isfinite(bregman(ScalarFunction::xlogx(), rho, single(diag({2, 0})), 1e-8).value));
}

TEST_CASE("power bregman on commuting states matches the scalar formula") {
    auto alg = make_algebra({{"a", 1}, {"b", 1}, {"c", 1}}, {0.2, 0.3, 0.5});
    const std::vector<double> x{0.4, 1.7, 0.9}, y{1.1, 0.6, 1.2};
    for (double p : {1.25, 1.5, 1.75}) {
        AlgebraElement rho(alg, {diag({x[0]}), diag({x[1]}), diag({x[2]})});
        AlgebraElement sigma(alg, {diag({y[0]}), diag({y[1]}), diag({y[2]})});
        double expect = 0;
        for (int i = 0; i < 3; ++i)
            expect += alg->weight(i) * (std::pow(x[i], p) - std::pow(y[i], p) -
                                        p * std::pow(y[i], p - 1) * (x[i] - y[i]));
        CHECK(bregman(ScalarFunction::power(p), rho, sigma).value == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("bregman is nonnegative and vanishes on the diagonal") {
    auto alg = make_algebra({{"a", 3}, {"b", 2}}, {0.5, 0.5});
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto rho = normalized(random_positive(alg, 0.7, 0.0, s));
        auto sigma = normalized(random_positive(alg, 1.0, 0.01, s + 100));
        for (const auto& f : {ScalarFunction::xlogx(), ScalarFunction::power(1.5)}) {
            CHECK(bregman(f, rho, sigma).value >= -1e-12);
            CHECK(std::abs(bregman(f, sigma, sigma).value) < 1e-12);
        }
    }
}

TEST_CASE("entropy relative to a subalgebra equals the bregman divergence to E(rho)") {
    auto m4 = matrix_algebra(4);
    const std::vector<ConditionalExpectation> es{full_trace(m4), pinching(m4, {{1, 3}}), pinching(m4, {{2, 2}})};
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto rho = normalized(random_positive(m4, 1.0, 0.01, s));
        for (const auto& e : es)
            for (const auto& f : {ScalarFunction::xlogx(), ScalarFunction::power(1.25)}) {
                const double a = entropy_vs_subalgebra(f, rho, e).value;
                const double b = bregman(f, rho, e(rho)).value;
                CHECK(a == doctest::Approx(b).epsilon(1e-9).scale(1.0));
            }
    }
}

TEST_CASE("fisher information is the entropy production rate") {
    auto a = random_transposition(3, 2);
    const auto& e = a.fixed_point_expectation();
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto rho = normalized(random_positive(a.algebra(), 1.0, 0.05, s));
        for (const auto& f : {ScalarFunction::xlogx(), ScalarFunction::power(1.5)}) {
            const double h = 1e-5;
            const double d1 = entropy_vs_subalgebra(f, semigroup_apply(a, h, rho), e).value;
            const double d2 = entropy_vs_subalgebra(f, semigroup_apply(a, 2 * h, rho), e).value;
            const double d0 = entropy_vs_subalgebra(f, rho, e).value;
            const double rate = -(-3 * d0 + 4 * d1 - d2) / (2 * h);
            CHECK(fisher_generator(a, f, rho) == doctest::Approx(rate).epsilon(1e-6));
        }
    }
}

TEST_CASE("commutator derivation") {
    auto m3 = matrix_algebra(3);
    auto v = random_hermitian(m3, 4);
    auto d = Derivation::commutator(v);
    auto x = random_element(m3, 5), y = random_element(m3, 6);
    CHECK(dist(d(x * y), d(x) * y + x * d(y)) < 1e-12 * (1 + x.norm() * y.norm() * v.norm()));
    CHECK(dist(d.involution(d(x)), d(x.adjoint())) < 1e-13 * (1 + x.norm() * v.norm()));
    CHECK_THROWS_AS(Derivation::commutator(random_element(m3, 7)), ContractError);
}

TEST_CASE("commutator fisher information against the index sum") {
    // With rho diagonal, [v, rho]_ij = v_ij (l_j - l_i) and the information is
    // (1/d) sum |v_ij|^2 (l_i - l_j) (f'(l_i) - f'(l_j)), diagonal terms vanish.
    const std::vector<double> l{0.3, 1.1, 1.6};
    auto rho = single(diag({l[0], l[1], l[2]}));
    auto v = random_hermitian(matrix_algebra(3), 11);
    for (const auto& f : {ScalarFunction::xlogx(), ScalarFunction::power(1.5), ScalarFunction::power(1.75)}) {
        double expect = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) expect += std::norm(v.block(0)(i, j)) * (l[i] - l[j]) * (f.deriv(l[i]) - f.deriv(l[j]));
        expect /= 3;
        CHECK(fisher_derivation(Derivation::commutator(v), f, rho) == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("fisher information through the derivation matches the generator form") {
    auto m3 = matrix_algebra(3);
    auto v = random_hermitian(m3, 21);
    auto d = Derivation::commutator(v);
    auto gen = generator_from_derivation(d);
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto rho = normalized(random_positive(m3, 1.0, 0.05, s));
        for (const auto& f : {ScalarFunction::xlogx(), ScalarFunction::power(1.25)})
            CHECK(fisher_derivation(d, f, rho) == doctest::Approx(fisher_generator(gen, f, rho)).epsilon(1e-9));
    }
}

TEST_CASE("difference derivation of a classical generator") {
    auto a = bernoulli_laplace(4, 2);
    auto d = Derivation::difference(a);
    auto gen = generator_from_derivation(d);
    CHECK((gen.matrix() - a.matrix()).norm() < 1e-10 * (1 + a.matrix().norm()));
    auto x = random_element(a.algebra(), 1), y = random_element(a.algebra(), 2);
    CHECK(dist(d(x * y), d.left(x) * d(y) + d(x) * d.right(y)) < 1e-10 * (1 + x.norm() * y.norm()));
    CHECK(dist(d.involution(d(x)), d(x.adjoint())) < 1e-13 * (1 + x.norm()));
    auto rho = normalized(random_positive(a.algebra(), 1.0, 0.05, 3));
    const auto f = ScalarFunction::power(1.5);
    CHECK(fisher_derivation(d, f, rho) == doctest::Approx(fisher_generator(a, f, rho)).epsilon(1e-9));
}

TEST_CASE("fisher information with a singular state") {
    auto a = random_transposition(3);
    auto rho = normalized(random_positive(a.algebra(), 0.5, 0.0, 3));
    const double v = fisher_generator(a, ScalarFunction::xlogx(), rho);
    CHECK(std::isfinite(v));
}

TEST_CASE("monotone metric") {
    auto alg = make_algebra({{"a", 3}, {"b", 2}}, {0.5, 0.5});
    auto rho = normalized(random_positive(alg, 1.0, 0.01, 2));
    auto a = random_element(alg, 3), b = random_element(alg, 4);
    CHECK(std::abs(monotone_metric(Kernel::constant(1.0), rho, rho, a, b) - inner(a, b)) < 1e-12);
    const Kernel F = log_kernel();
    auto ab = monotone_metric(F, rho, rho, a, b), ba = monotone_metric(F, rho, rho, b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-11);
    CHECK(monotone_metric(F, rho, rho, a, a).real() > 0);
}

}  // TEST_SUITE
