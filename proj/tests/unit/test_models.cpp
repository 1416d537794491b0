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

#include "sobolev/configuration.hpp"
#include "sobolev/expectation.hpp"
#include "sobolev/models.hpp"
#include "sobolev/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

using namespace sobolev;
using testutil::dist;

namespace {

// Spectrum given as (eigenvalue, multiplicity) pairs, checked against a sorted vector.
void check_spectrum(const Eigen::VectorXd& ev, std::vector<std::pair<double, int>> expect, int scale = 1) {
    std::sort(expect.begin(), expect.end());
    std::vector<double> flat;
    for (auto [v, m] : expect)
        for (int i = 0; i < m * scale; ++i) flat.push_back(v);
    REQUIRE(static_cast<std::size_t>(ev.size()) == flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) CHECK(ev(i) == doctest::Approx(flat[i]).epsilon(1e-9).scale(1.0));
}

long choose(int n, int r) {
    if (r < 0 || r > n) return 0;
    long v = 1;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("configuration spaces") {
    auto p = ConfigurationSpace::permutations(3);
    CHECK(p.size() == 6);
    CHECK(p.moves_are_involutions());
    CHECK(p.is_connected());
    for (int i = 0; i < p.size(); ++i) {
        CHECK(p.index_of(p.label(i)) == i);
        CHECK(p.moves(i).size() == 3);
    }
    auto s = ConfigurationSpace::subsets(4, 2);
    CHECK(s.size() == 6);
    CHECK(s.moves_are_involutions());
    CHECK(s.is_connected());
    for (int i = 0; i < s.size(); ++i) {
        CHECK(s.moves(i).size() == 4);  // r (n - r)
        int occ = 0;
        for (int j = 0; j < 4; ++j) occ += s.value_at(i, j);
        CHECK(occ == 2);
    }
}

TEST_CASE("random transposition spectrum") {
    // On the irrep of shape lambda the generator acts as (2/n)(C(n,2) - content sum).
    check_spectrum(random_transposition(2).spectrum().eigenvalues, {{0, 1}, {2, 1}});
    check_spectrum(random_transposition(3).spectrum().eigenvalues, {{0, 1}, {2, 4}, {4, 1}});
    check_spectrum(random_transposition(4).spectrum().eigenvalues, {{0, 1}, {2, 9}, {3, 4}, {4, 9}, {6, 1}});
    check_spectrum(random_transposition(3, 2).spectrum().eigenvalues, {{0, 1}, {2, 4}, {4, 1}}, 4);
    for (int n : {2, 3, 4, 5}) CHECK(spectral_gap(random_transposition(n)) == doctest::Approx(2.0));
    CHECK_THROWS_AS(random_transposition(1), ContractError);
    CHECK_THROWS_AS(random_transposition(6), ContractError);
}

TEST_CASE("bernoulli laplace spectrum") {
    // Johnson graph: j (n + 1 - j) / n with multiplicity C(n,j) - C(n,j-1).
    for (auto [n, r] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}, {5, 2}, {6, 3}}) {
        std::vector<std::pair<double, int>> expect;
        for (int j = 0; j <= std::min(r, n - r); ++j)
            expect.push_back({double(j * (n + 1 - j)) / n, int(choose(n, j) - choose(n, j - 1))});
        check_spectrum(bernoulli_laplace(n, r).spectrum().eigenvalues, expect);
    }
    CHECK_THROWS_AS(bernoulli_laplace(4, 0), ContractError);
    CHECK_THROWS_AS(bernoulli_laplace(4, 4), ContractError);
    CHECK_THROWS_AS(bernoulli_laplace(9, 4), ContractError);  // C(9,4) = 126
}

TEST_CASE("bernoulli laplace with one particle is I - E") {
    for (int n : {2, 3, 5}) {
        auto a = bernoulli_laplace(n, 1);
        auto e = full_trace(a.algebra());
        Matrix ie = Matrix::Identity(n, n) - e.matrix();
        CHECK((a.matrix() - ie).norm() < 1e-12);
    }
}

TEST_CASE("generators kill the identity and are tau-symmetric") {
    Eigen::MatrixXd w(3, 3);
    w << 0, 1, 0.5, 1, 0, 2, 0.5, 2, 0;
    const std::vector<Generator> gens{random_transposition(3),      bernoulli_laplace(4, 2, 2),
                                      graph_laplacian(w, {0.2, 0.3, 0.5}, 2),
                                      depolarizing(pinching(matrix_algebra(3), {{1, 2}}))};
    for (const auto& a : gens) {
        CHECK(a.apply(AlgebraElement::identity(a.algebra())).norm() < 1e-12);
        const Matrix& m = a.matrix();
        CHECK((m - m.adjoint()).norm() < 1e-10 * (1 + m.norm()));
        CHECK(a.spectrum().eigenvalues.minCoeff() > -1e-10);
        auto x = random_element(a.algebra(), 3);
        CHECK(std::abs(trace(a.apply(x))) < 1e-12 * (1 + x.norm()));
    }
}

TEST_CASE("two-point graph") {
    Eigen::MatrixXd w(2, 2);
    w << 0, 0.7, 0.7, 0;
    auto a = graph_laplacian(w, {0.25, 0.75});
    check_spectrum(a.spectrum().eigenvalues, {{0, 1}, {0.7 / 0.25 + 0.7 / 0.75, 1}});
    Eigen::MatrixXd bad = w;
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(graph_laplacian(bad, {0.5, 0.5}), ContractError);
    Eigen::MatrixXd disc = Eigen::MatrixXd::Zero(3, 3);
    disc(0, 1) = disc(1, 0) = 1;
    CHECK_THROWS_AS(graph_laplacian(disc, {0.3, 0.3, 0.4}), ContractError);
}

TEST_CASE("depolarizing generator is a projection") {
    auto alg = make_algebra({{"a", 2}, {"b", 3}}, {0.4, 0.6});
    for (const auto& e : {full_trace(alg), center(alg), pinching(alg, {{1, 1}, {2, 1}})}) {
        auto a = depolarizing(e);
        const Matrix& m = a.matrix();
        CHECK((m * m - m).norm() < 1e-12);
        CHECK(spectral_gap(a) == doctest::Approx(1.0));
    }
}

TEST_CASE("conditional expectations") {
    auto alg = make_algebra({{"a", 2}, {"b", 2}, {"c", 1}}, {0.3, 0.3, 0.4});
    const std::vector<ConditionalExpectation> es{
        full_trace(alg), center(alg), identity_expectation(alg), partition_average(alg, {{0, 1}, {2}}),
        partition_average(alg, {{0, 1}, {2}}, true), pinching(alg, {{1, 1}, {2}, {1}})};
    for (const auto& e : es) {
        auto x = random_element(alg, 1);
        auto ex = e(x);
        CHECK(dist(e(ex), ex) < 1e-12 * (1 + x.norm()));                 // idempotent
        CHECK(std::abs(trace(ex) - trace(x)) < 1e-12 * (1 + x.norm()));  // trace preserving
        CHECK(dist(e(x.adjoint()), ex.adjoint()) < 1e-12 * (1 + x.norm()));
        // bimodule property over the range
        auto a = e(random_element(alg, 2)), b = e(random_element(alg, 3));
        CHECK(dist(e(a * x * b), a * ex * b) < 1e-11 * (1 + a.norm() * x.norm() * b.norm()));
        // positivity
        auto rho = random_positive(alg, 0.5, 0.0, 4);
        CHECK(min_eigenvalue(e(rho).hermitian_part()) > -1e-12);
        // the dense form agrees
        CHECK((e.matrix() * to_vector(x) - to_vector(ex)).norm() < 1e-12 * (1 + x.norm()));
    }
    CHECK_THROWS_AS(partition_average(alg, {{0, 1}}), ContractError);
    CHECK_THROWS_AS(partition_average(alg, {{0, 2}, {1}}), ContractError);  // dims differ
}

TEST_CASE("semigroup") {
    auto a = bernoulli_laplace(4, 2);
    auto x = random_hermitian(a.algebra(), 5);
    CHECK(dist(semigroup_apply(a, 0.0, x), x) == 0.0);
    CHECK_THROWS_AS(semigroup_apply(a, -1.0, x), ContractError);
    auto one = AlgebraElement::identity(a.algebra());
    CHECK(dist(semigroup_apply(a, 2.0, one), one) < 1e-12);
    CHECK(dist(semigroup_apply(a, 0.3, semigroup_apply(a, 0.5, x)), semigroup_apply(a, 0.8, x)) < 1e-12);
    // converges to the fixed-point expectation
    CHECK(dist(semigroup_apply(a, 40.0, x), a.fixed_point_expectation()(x)) < 1e-12);
}

TEST_CASE("ampliated generators") {
    auto a = random_transposition(3);
    auto a2 = ampliate_generator(a, 2);
    CHECK(a2.info().k == 2);
    auto x = random_element(a.algebra(), 1);
    CHECK(dist(a2.apply(ampliate(x, 2)), ampliate(a.apply(x), 2)) < 1e-12);
    auto d = depolarizing(pinching(matrix_algebra(2), {{1, 1}}));
    auto d3 = ampliate_generator(d, 3);
    check_spectrum(d3.spectrum().eigenvalues, {{0, 2}, {1, 2}}, 9);
}

TEST_CASE("tensor generator exponentiates to the tensor of semigroups") {
    auto a = random_transposition(3);
    auto b = depolarizing(full_trace(matrix_algebra(2)));
    auto ab = tensor_generator(a, b);
    CHECK(ab.info().family == "tensor(random_transposition,depolarizing)");
    auto x = random_element(a.algebra(), 1), y = random_element(b.algebra(), 2);
    for (double t : {0.1, 0.7, 2.0})
        CHECK(dist(semigroup_apply(ab, t, kron(x, y)), kron(semigroup_apply(a, t, x), semigroup_apply(b, t, y))) <
              1e-11 * (1 + x.norm() * y.norm()));
    CHECK(spectral_gap(ab) == doctest::Approx(1.0));
}

TEST_CASE("martingale subalgebra expectations") {
    for (const auto& a : {random_transposition(3), random_transposition(4, 2), bernoulli_laplace(4, 2)}) {
        const auto& e = a.fixed_point_expectation();
        auto es = martingale_subalgebra_expectations(a);
        CHECK(static_cast<int>(es.size()) == a.info().n);
        auto x = random_element(a.algebra(), 9);
        for (const auto& ei : es) {
            // tower property: the fixed points sit inside each subalgebra
            CHECK(dist(e(ei(x)), e(x)) < 1e-12 * (1 + x.norm()));
            CHECK(dist(ei(e(x)), e(x)) < 1e-12 * (1 + x.norm()));
            CHECK(dist(ei(ei(x)), ei(x)) < 1e-12 * (1 + x.norm()));
        }
    }
    CHECK_THROWS_AS(martingale_subalgebra_expectation(random_transposition(3), 3), ContractError);
    CHECK_THROWS_AS(martingale_subalgebra_expectations(depolarizing(full_trace(matrix_algebra(2)))), ContractError);
}

TEST_CASE("random transposition martingale groups fix sigma_i") {
    auto a = random_transposition(3);
    const auto& c = *a.info().config;
    auto e0 = martingale_subalgebra_expectation(a, 0);
    REQUIRE(e0.groups().size() == 3);
    for (const auto& g : e0.groups()) {
        CHECK(g.size() == 2);
        CHECK(c.value_at(g[0], 0) == c.value_at(g[1], 0));
    }
}

}  // TEST_SUITE
