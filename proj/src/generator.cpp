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

#include "sobolev/generator.hpp"

#include "sobolev/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace sobolev {

struct Generator::State {
    AlgebraPtr alg;
    ModelInfo info;
    std::optional<SiteRates> rates;
    ElementMap map;
    std::optional<ConditionalExpectation> fixed;

    std::once_flag dense_once;
    Matrix dense;
    bool dense_given = false;

    std::once_flag spec_once;
    GeneratorSpectrum spectrum;

    std::once_flag fixed_once;
};

namespace {

void check_self_adjoint(const Matrix& m) {
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale))
        throw ContractError("generator is not tau-self-adjoint");
}

// Connected components of the jump graph; these are the site groups of the
// fixed-point algebra.
std::vector<std::vector<int>> components(const SiteRates& rates) {
    const int n = static_cast<int>(rates.out.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> groups;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        const int id = static_cast<int>(groups.size());
        groups.push_back({});
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            groups[id].push_back(v);
            for (const auto& j : rates.out[v])
                if (comp[j.to] < 0) {
                    comp[j.to] = id;
                    stack.push_back(j.to);
                }
        }
        std::sort(groups[id].begin(), groups[id].end());
    }
    return groups;
}

}  // namespace

Generator Generator::from_rates(AlgebraPtr alg, SiteRates rates, ModelInfo info) {
    const int n = static_cast<int>(alg->num_sites());
    if (static_cast<int>(rates.out.size()) != n) throw ContractError("rates: one jump list per site");
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (int s = 0; s < n; ++s)
        for (const auto& j : rates.out[s]) {
            if (j.to < 0 || j.to >= n || j.to == s) throw ContractError("rates: bad jump target");
            if (!(j.rate >= 0.0)) throw ContractError("rates: negative jump rate");
            if (alg->dim(s) != alg->dim(j.to)) throw ContractError("rates: jump between unequal blocks");
            q[s][j.to] += j.rate;
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const double fa = alg->weight(a) * q[a][b], fb = alg->weight(b) * q[b][a];
            if (std::abs(fa - fb) > 1e-12 * (1.0 + std::max(fa, fb)))
                throw ContractError("rates violate detailed balance for the site weights");
        }
    auto st = std::make_shared<State>();
    st->alg = alg;
    st->info = std::move(info);
    st->fixed.emplace(partition_average(alg, components(rates)));
    st->rates = std::move(rates);
    return Generator(st);
}

Generator Generator::from_map(AlgebraPtr alg, ElementMap map, ConditionalExpectation fixed,
                              ModelInfo info) {
    require_same_algebra(alg, fixed.algebra(), "Generator::from_map");
    auto st = std::make_shared<State>();
    st->alg = std::move(alg);
    st->map = std::move(map);
    st->fixed.emplace(std::move(fixed));
    st->info = std::move(info);
    return Generator(st);
}

Generator Generator::from_matrix(AlgebraPtr alg, Matrix a, ModelInfo info) {
    if (a.rows() != alg->super_dim() || a.cols() != alg->super_dim())
        throw ContractError("generator matrix size mismatch");
    check_self_adjoint(a);
    auto st = std::make_shared<State>();
    st->alg = std::move(alg);
    st->info = std::move(info);
    st->dense = 0.5 * (a + a.adjoint());
    st->dense_given = true;
    return Generator(st);
}

Generator Generator::zero(AlgebraPtr alg) {
    ModelInfo info;
    info.family = "zero";
    return from_map(
        alg, [](const AlgebraElement& x) { return AlgebraElement::zero(x.algebra()); },
        identity_expectation(alg), std::move(info));
}

AlgebraElement Generator::apply(const AlgebraElement& x) const {
    require_same_algebra(s_->alg, x.algebra(), "Generator::apply");
    if (s_->rates) {
        const auto& out = s_->rates->out;
        return x.map_blocks([&](std::size_t s, const Matrix& m) -> Matrix {
            Matrix acc = Matrix::Zero(m.rows(), m.cols());
            for (const auto& j : out[s]) acc += j.rate * (m - x.block(j.to));
            return acc;
        });
    }
    if (s_->map) return s_->map(x);
    return from_vector(s_->alg, s_->dense * to_vector(x));
}

const AlgebraPtr& Generator::algebra() const { return s_->alg; }
const ModelInfo& Generator::info() const { return s_->info; }
const std::optional<SiteRates>& Generator::rates() const { return s_->rates; }
bool Generator::has_dense() const { return s_->dense_given || s_->alg->super_dim() <= kDenseLimit; }

const Matrix& Generator::matrix() const {
    if (s_->dense_given) return s_->dense;
    if (s_->alg->super_dim() > kDenseLimit)
        throw ContractError("dense generator refused above the size limit");
    std::call_once(s_->dense_once, [this] {
        Matrix m = superoperator_of(s_->alg, [this](const AlgebraElement& x) { return apply(x); });
        check_self_adjoint(m);
        s_->dense = 0.5 * (m + m.adjoint());
    });
    return s_->dense;
}

const GeneratorSpectrum& Generator::spectrum() const {
    std::call_once(s_->spec_once, [this] {
        Eigen::SelfAdjointEigenSolver<Matrix> es(matrix());
        if (es.info() != Eigen::Success) throw NumericalError("generator eigensolver failed");
        s_->spectrum.eigenvalues = es.eigenvalues();
        s_->spectrum.eigenvectors = es.eigenvectors();
    });
    return s_->spectrum;
}

const ConditionalExpectation& Generator::fixed_point_expectation() const {
    std::call_once(s_->fixed_once, [this] {
        if (s_->fixed) return;
        const auto& sp = spectrum();
        int m = 0;
        while (m < sp.eigenvalues.size() && sp.eigenvalues(m) <= kGapTol) ++m;
        Matrix v = sp.eigenvectors.leftCols(m);
        s_->fixed.emplace(from_projection(s_->alg, v * v.adjoint(), "kernel-projection"));
    });
    return *s_->fixed;
}

}  // namespace sobolev
