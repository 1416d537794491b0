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

#include "sobolev/channel.hpp"
#include "sobolev/doi.hpp"
#include "sobolev/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

using namespace sobolev;
using testutil::diag;
using testutil::dist;
using testutil::single;

TEST_SUITE("doi") {

TEST_CASE("divided differences") {
    const auto sq = ScalarFunction::power(2.0);
    CHECK(divided_diff(sq, 1, 1.0, 3.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(divided_diff(sq, 1, 3.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    for (double p : {1.25, 1.5, 1.75, 2.5}) {
        const auto f = ScalarFunction::power(p);
        for (double x : {0.3, 1.0, 2.7}) {
            CHECK(divided_diff(f, 2, x, x) == doctest::Approx(p * (p - 1) * std::pow(x, p - 2)).epsilon(1e-12));
            CHECK(divided_diff(f, 1, x, x) == doctest::Approx(p * std::pow(x, p - 1)).epsilon(1e-12));
        }
    }
    // inside the cluster tolerance the midpoint derivative is used
    CHECK(divided_diff(ScalarFunction::xlogx(), 1, 2.0, 2.0 + 1e-12) ==
          doctest::Approx(std::log(2.0) + 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(divided_diff(sq, 3, 1.0, 2.0), ContractError);
}

TEST_CASE("divided differences are continuous across the cluster threshold") {
    const auto f = ScalarFunction::power(1.5);
    const double x = 1.3;
    const double inside = divided_diff(f, 1, x, x + 0.5e-8);
    const double outside = divided_diff(f, 1, x, x + 5e-8);
    CHECK(std::abs(inside - outside) < 1e-6);
}

TEST_CASE("scalar function domains") {
    CHECK_THROWS_AS(ScalarFunction::log()(0.0), DomainError);
    CHECK_THROWS_AS(ScalarFunction::xlogx().deriv(0.0), DomainError);
    CHECK(ScalarFunction::xlogx()(0.0) == 0.0);
    CHECK(ScalarFunction::power(1.5)(4.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(ScalarFunction::power(1.5)(-1.0), DomainError);
    CHECK(ScalarFunction::power(1.5).tag() == FunctionTag::Power);
    CHECK(ScalarFunction::power(1.5).exponent() == 1.5);
}

TEST_CASE("kernel names") {
    const auto f = ScalarFunction::power(1.5);
    CHECK(Kernel::diff_quot(f, 1).kind() == KernelKind::DiffQuot1);
    CHECK(Kernel::diff_quot(f, 2).kind() == KernelKind::DiffQuot2);
    CHECK(Kernel::inverse(Kernel::constant(2.0)).kind() == KernelKind::Inverse);
    CHECK(Kernel::constant(2.0).name().find("const") == 0);
    CHECK(Kernel::perspective(f).name().find("persp") == 0);
}

TEST_CASE("constant kernel acts as a multiple of the identity") {
    auto alg = make_algebra({{"a", 3}, {"b", 2}}, {0.6, 0.4});
    auto rho = random_positive(alg, 1.0, 0.01, 1);
    auto a = random_element(alg, 2);
    CHECK(dist(schur_q(Kernel::constant(1.0), eigh(rho), a), a) < 1e-12 * a.norm());
    CHECK(dist(schur_q(Kernel::constant(2.5), eigh(rho), a), 2.5 * a) < 1e-12 * a.norm());
}

TEST_CASE("perspective of the identity function is left multiplication") {
    auto alg = matrix_algebra(4);
    auto rho = random_positive(alg, 1.0, 0.05, 3);
    auto sigma = random_positive(alg, 1.0, 0.05, 4);
    auto a = random_element(alg, 5);
    const Kernel left = Kernel::perspective(ScalarFunction::power(1.0));
    CHECK(dist(schur_q(left, eigh(rho), eigh(sigma), a), rho * a) < 1e-10 * (1 + (rho * a).norm()));
    const Kernel right = Kernel::custom("right", [](double, double y) { return y; }, false);
    CHECK(dist(schur_q(right, eigh(rho), eigh(sigma), a), a * sigma) < 1e-10 * (1 + (a * sigma).norm()));
}

TEST_CASE("worked example on diag(1,2)") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = a(1, 0) = 1;
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 1) = expect(1, 0) = 3;
    auto out = schur_q(Kernel::diff_quot(ScalarFunction::power(2.0), 1), eigh(single(diag({1, 2}))), single(a));
    CHECK((out.block(0) - expect).norm() < 1e-13);
    // the diagonal picks up f'(lambda)
    auto d = schur_q(Kernel::diff_quot(ScalarFunction::power(2.0), 1), eigh(single(diag({1, 2}))),
                     single(diag({1, 1})));
    CHECK((d.block(0) - diag({2, 4})).norm() < 1e-13);
}

TEST_CASE("schur_q of the first divided difference is the Frechet derivative") {
    auto alg = matrix_algebra(3);
    const auto f = ScalarFunction::power(1.5);
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto rho = random_positive(alg, 1.0, 0.2, s);
        auto h = random_hermitian(alg, 100 + s);
        const double eps = 1e-6;
        auto fd = (1.0 / (2 * eps)) *
                  (matrix_function(f, rho + eps * h) - matrix_function(f, rho - eps * h));
        auto dk = schur_q(Kernel::diff_quot(f, 1), eigh(rho), h);
        CHECK(dist(fd, dk) < 1e-6 * (1 + h.norm()));
    }
}

TEST_CASE("superoperator matrix agrees with schur_q and has the kernel grid as spectrum") {
    auto alg = make_algebra({{"a", 3}, {"b", 2}}, {0.3, 0.7});
    auto rho = random_positive(alg, 1.0, 0.05, 8);
    auto spec = eigh(rho);
    const Kernel F = power_kernel(0.5);
    Matrix m = superoperator_matrix(F, spec, spec);
    auto a = random_element(alg, 9);
    CHECK((m * to_vector(a) - to_vector(schur_q(F, spec, a))).norm() < 1e-11 * (1 + a.norm()));

    std::vector<double> grid;
    for (std::size_t s = 0; s < alg->num_sites(); ++s)
        for (double x : spec.eigenvalues[s])
            for (double y : spec.eigenvalues[s]) grid.push_back(F(x, y));
    std::sort(grid.begin(), grid.end());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    REQUIRE(static_cast<std::size_t>(es.eigenvalues().size()) == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(es.eigenvalues()(i) == doctest::Approx(grid[i]).epsilon(1e-9));
}

TEST_CASE("inverse kernel inverts the superoperator") {
    auto alg = matrix_algebra(4);
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto rho = random_positive(alg, 1.0, 0.01, s);
        auto spec = eigh(rho);
        auto a = random_element(alg, s + 50);
        for (const Kernel& F : {log_kernel(), power_kernel(0.5), Kernel::diff_quot(ScalarFunction::power(1.5), 2)}) {
            auto back = schur_q(Kernel::inverse(F), spec, schur_q(F, spec, a));
            CHECK(dist(back, a) < 1e-9 * (1 + a.norm()));
        }
    }
    CHECK_THROWS_AS(schur_q(Kernel::inverse(Kernel::constant(0.0)), eigh(single(diag({1, 2}))),
                            single(diag({1, 1}))),
                    DomainError);
}

TEST_CASE("symmetric real kernels preserve Hermiticity") {
    auto alg = matrix_algebra(5);
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto rho = random_positive(alg, 0.6, 0.0, s);
        auto h = random_hermitian(alg, s + 7);
        auto out = schur_q(log_kernel(), eigh(rho), h);
        CHECK((out - out.adjoint()).norm() <= 1e-12 * (1 + out.norm()));
    }
}

TEST_CASE("near-degenerate spectra give nearly the same result") {
    const Kernel F = Kernel::diff_quot(ScalarFunction::xlogx(), 1);
    Matrix u = random_channel(3, 1, 4).kraus()[0];
    auto at = [&](double gap) {
        Matrix d = diag({0.5, 0.5 + gap, 2.0});
        return single(Matrix(u * d * u.adjoint()));
    };
    auto a = random_hermitian(matrix_algebra(3), 3);
    auto exact = schur_q(F, eigh(at(0.0)), a);
    for (double gap : {1e-12, 1e-9, 1e-7, 1e-5}) {
        auto near = schur_q(F, eigh(at(gap)), a);
        CHECK(dist(near, exact) < 10 * gap + 1e-9);
    }
}

TEST_CASE("translated kernel") {
    const Kernel F = Kernel::translated(log_kernel(), 1.0, 1.0);
    CHECK(F(0.0, 0.0) == doctest::Approx(1.0));
    CHECK(F(1.0, 3.0) == doctest::Approx(std::log(4.0 / 2.0) / 2.0));
}

TEST_CASE("kernel floor clamps arguments") {
    const Kernel inv_xy = Kernel::custom("inv_xy", [](double x, double y) { return 1.0 / (x * y); }, true);
    CHECK(std::isfinite(inv_xy(0.0, 0.0)));
    CHECK(inv_xy(0.0, 0.0) == doctest::Approx(1e24));
}

TEST_CASE("homogeneity") {
    const std::vector<double> lam{0.1, 0.5, 0.9, 1.0};
    const std::vector<double> grid{0.05, 0.3, 1.0, 2.0, 7.0};
    CHECK(homogeneity_check(log_kernel(), lam, grid));
    for (double p : {0.25, 0.5, 0.75}) CHECK(homogeneity_check(power_kernel(p), lam, grid));
    CHECK(homogeneity_check(Kernel::constant(1.0), lam, grid));
    CHECK(homogeneity_check(Kernel::diff_quot(ScalarFunction::power(1.5), 2), lam, grid));
    const Kernel inv_xy = Kernel::custom("inv_xy", [](double x, double y) { return 1.0 / (x * y); }, true);
    CHECK_FALSE(homogeneity_check(inv_xy, lam, grid));
    CHECK_THROWS_AS(homogeneity_check(log_kernel(), {1.5}, grid), ContractError);
}

TEST_CASE("cone test for a constant kernel under unital channels") {
    // B^dagger B <= 1 whenever the channel is unital, so the constant kernel passes.
    ConeTestOptions opt;
    opt.trials = 30;
    opt.unital_only = true;
    opt.seed = 3;
    auto rep = cone_test(Kernel::constant(1.0), ConeSide::Plus, opt);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.violations.empty());
    CHECK(rep.trials == 30);

    opt.unital_only = false;
    auto nonunital = cone_test(Kernel::constant(1.0), ConeSide::Plus, opt);
    CHECK(nonunital.verdict == Verdict::Fail);

    opt.dims = {1};
    CHECK_THROWS_AS(cone_test(Kernel::constant(1.0), ConeSide::Plus, opt), ContractError);
}

TEST_CASE("cone test is deterministic in its seed") {
    ConeTestOptions opt;
    opt.trials = 12;
    opt.seed = 99;
    auto a = cone_test(power_kernel(0.5), ConeSide::Minus, opt);
    auto b = cone_test(power_kernel(0.5), ConeSide::Minus, opt);
    CHECK(a.min_eig == b.min_eig);
    CHECK(a.violations.size() == b.violations.size());
}

}  // TEST_SUITE
