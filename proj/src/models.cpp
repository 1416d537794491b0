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

#include "sobolev/models.hpp"

#include "sobolev/errors.hpp"

#include <cmath>
#include <deque>

namespace sobolev {

namespace {

AlgebraPtr config_algebra(const ConfigurationSpace& c, int k) {
    std::vector<Site> sites;
    for (int i = 0; i < c.size(); ++i) sites.push_back({c.label_string(i), k});
    std::vector<double> w(c.size(), 1.0 / c.size());
    return make_algebra(std::move(sites), std::move(w));
}

Generator chain_generator(std::shared_ptr<const ConfigurationSpace> c, double rate, int k,
                          ModelInfo info) {
    SiteRates rates;
    rates.out.resize(c->size());
    for (int s = 0; s < c->size(); ++s)
        for (const auto& m : c->moves(s)) rates.out[s].push_back({m.target, rate});
    info.k = k;
    info.config = c;
    return Generator::from_rates(config_algebra(*c, k), std::move(rates), std::move(info));
}

long binomial(int n, int r) {
    long v = 1;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

}  // namespace

Generator random_transposition(int n, int k) {
    if (n < 2 || n > 5) throw ContractError("random_transposition: n must lie in [2, 5]");
    if (k < 1) throw ContractError("random_transposition: k must be >= 1");
    auto c = std::make_shared<const ConfigurationSpace>(ConfigurationSpace::permutations(n));
    ModelInfo info;
    info.family = "random_transposition";
    info.n = n;
    // Each unordered pair appears twice in the ordered double sum.
    return chain_generator(c, 2.0 / n, k, std::move(info));
}

Generator bernoulli_laplace(int n, int r, int k) {
    if (n < 2 || r < 1 || r > n - 1) throw ContractError("bernoulli_laplace: need n >= 2, 1 <= r <= n-1");
    if (binomial(n, r) > 70) throw ContractError("bernoulli_laplace: C(n, r) exceeds 70");
    if (k < 1) throw ContractError("bernoulli_laplace: k must be >= 1");
    auto c = std::make_shared<const ConfigurationSpace>(ConfigurationSpace::subsets(n, r));
    ModelInfo info;
    info.family = "bernoulli_laplace";
    info.n = n;
    info.r = r;
    return chain_generator(c, 1.0 / n, k, std::move(info));
}

Generator depolarizing(const ConditionalExpectation& e) {
    ModelInfo info;
    info.family = "depolarizing";
    return Generator::from_map(
        e.algebra(), [e](const AlgebraElement& x) { return x - e(x); }, e, std::move(info));
}

Generator graph_laplacian(const Eigen::MatrixXd& weights, const std::vector<double>& mu, int k) {
    const int n = static_cast<int>(weights.rows());
    if (weights.cols() != n || static_cast<int>(mu.size()) != n || n < 1)
        throw ContractError("graph_laplacian: size mismatch");
    for (int a = 0; a < n; ++a) {
        if (weights(a, a) != 0.0) throw ContractError("graph_laplacian: self loops are not allowed");
        for (int b = 0; b < n; ++b) {
            if (weights(a, b) < 0.0) throw ContractError("graph_laplacian: negative edge weight");
            if (std::abs(weights(a, b) - weights(b, a)) > 1e-12 * (1.0 + std::abs(weights(a, b))))
                throw ContractError("graph_laplacian: detailed balance violated (asymmetric weights)");
        }
    }
    std::vector<Site> sites;
    for (int i = 0; i < n; ++i) sites.push_back({"v" + std::to_string(i), k});
    auto alg = make_algebra(std::move(sites), mu);
    SiteRates rates;
    rates.out.resize(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (weights(a, b) > 0.0) rates.out[a].push_back({b, weights(a, b) / mu[a]});
    std::vector<char> seen(n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (const auto& j : rates.out[v])
            if (!seen[j.to]) {
                seen[j.to] = 1;
                ++count;
                q.push_back(j.to);
            }
    }
    if (count != n) throw ContractError("graph_laplacian: graph is not connected");
    ModelInfo info;
    info.family = "graph";
    info.n = n;
    info.k = k;
    return Generator::from_rates(alg, std::move(rates), std::move(info));
}

AlgebraElement semigroup_apply(const Generator& a, double t, const AlgebraElement& x) {
    if (t < 0.0) throw ContractError("semigroup_apply: t must be >= 0");
    require_same_algebra(a.algebra(), x.algebra(), "semigroup_apply");
    if (t == 0.0) return x;
    const auto& sp = a.spectrum();
    Eigen::VectorXcd decay = (-t * sp.eigenvalues.array()).exp().cast<cplx>();
    Vector coeff = sp.eigenvectors.adjoint() * to_vector(x);
    return from_vector(a.algebra(), sp.eigenvectors * (decay.asDiagonal() * coeff));
}

Generator ampliate_generator(const Generator& a, int k) {
    if (k < 1) throw ContractError("ampliate_generator: k must be >= 1");
    if (k == 1) return a;
    ModelInfo info = a.info();
    info.k *= k;
    AlgebraPtr big = ampliate(a.algebra(), k);
    const auto& fixed = a.fixed_point_expectation();
    if (a.rates() && !fixed.groups().empty() && !fixed.traces_blocks())
        return Generator::from_rates(big, *a.rates(), std::move(info));
    AlgebraPtr small = a.algebra();
    AlgebraPtr mk = matrix_algebra(k);
    ElementMap am = [a](const AlgebraElement& x) { return a.apply(x); };
    ElementMap em = [fixed](const AlgebraElement& x) { return fixed(x); };
    auto lift = [small, mk](ElementMap m) {
        return [small, mk, m](const AlgebraElement& x) {
            return apply_left_factor(small, mk, m, x);
        };
    };
    return Generator::from_map(big, lift(am), ConditionalExpectation("ampliated", big, lift(em)),
                               std::move(info));
}

Generator tensor_generator(const Generator& a1, const Generator& a2) {
    AlgebraPtr l = a1.algebra(), r = a2.algebra();
    AlgebraPtr prod = tensor_product(l, r);
    ModelInfo info;
    info.family = "tensor(" + a1.info().family + "," + a2.info().family + ")";
    ElementMap m1 = [a1](const AlgebraElement& x) { return a1.apply(x); };
    ElementMap m2 = [a2](const AlgebraElement& x) { return a2.apply(x); };
    return Generator::from_map(
        prod,
        [l, r, m1, m2](const AlgebraElement& x) {
            return apply_left_factor(l, r, m1, x) + apply_right_factor(l, r, m2, x);
        },
        tensor(a1.fixed_point_expectation(), a2.fixed_point_expectation()), std::move(info));
}

double spectral_gap(const Generator& a) {
    const auto& ev = a.spectrum().eigenvalues;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > kGapTol) return ev(i);
    throw ContractError("spectral_gap: generator is identically zero");
}

ConditionalExpectation martingale_subalgebra_expectation(const Generator& a, int i) {
    const auto& c = a.info().config;
    if (!c) throw ContractError("martingale expectations need a configuration model");
    if (i < 0 || i >= c->n()) throw ContractError("martingale expectations: site index out of range");
    const int values = c->kind() == ConfigurationSpace::Kind::Permutations ? c->n() : 2;
    std::vector<std::vector<int>> groups(values);
    for (int s = 0; s < c->size(); ++s) groups[c->value_at(s, i)].push_back(s);
    std::erase_if(groups, [](const auto& g) { return g.empty(); });
    return partition_average(a.algebra(), std::move(groups));
}

std::vector<ConditionalExpectation> martingale_subalgebra_expectations(const Generator& a) {
    const auto& c = a.info().config;
    if (!c) throw ContractError("martingale expectations need a configuration model");
    std::vector<ConditionalExpectation> out;
    for (int i = 0; i < c->n(); ++i) out.push_back(martingale_subalgebra_expectation(a, i));
    return out;
}

}  // namespace sobolev
