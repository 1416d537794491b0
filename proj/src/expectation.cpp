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

#include "sobolev/expectation.hpp"

#include "sobolev/errors.hpp"

#include <mutex>

namespace sobolev {

struct ConditionalExpectation::DenseCache {
    std::once_flag once;
    Matrix m;
};

ConditionalExpectation::ConditionalExpectation(std::string description, AlgebraPtr alg,
                                               ElementMap map)
    : description_(std::move(description)),
      alg_(std::move(alg)),
      map_(std::move(map)),
      dense_(std::make_shared<DenseCache>()) {}

AlgebraElement ConditionalExpectation::operator()(const AlgebraElement& x) const {
    require_same_algebra(alg_, x.algebra(), description_.c_str());
    return map_(x);
}

const Matrix& ConditionalExpectation::matrix() const {
    std::call_once(dense_->once, [this] { dense_->m = superoperator_of(alg_, map_); });
    return dense_->m;
}

ConditionalExpectation partition_average(const AlgebraPtr& alg, std::vector<std::vector<int>> groups,
                                         bool trace_blocks) {
    std::vector<int> seen(alg->num_sites(), 0);
    for (const auto& g : groups) {
        if (g.empty()) throw ContractError("partition_average: empty group");
        for (int s : g) {
            if (s < 0 || s >= static_cast<int>(alg->num_sites()))
                throw ContractError("partition_average: site index out of range");
            if (alg->dim(s) != alg->dim(g.front()))
                throw ContractError("partition_average: group mixes block dimensions");
            ++seen[s];
        }
    }
    for (int c : seen)
        if (c != 1) throw ContractError("partition_average: groups must partition the sites");

    auto map = [alg, groups, trace_blocks](const AlgebraElement& x) {
        std::vector<Matrix> out(x.num_sites());
        for (const auto& g : groups) {
            const int k = alg->dim(g.front());
            Matrix acc = Matrix::Zero(k, k);
            double mass = 0.0;
            for (int s : g) {
                acc += alg->weight(s) * x.block(s);
                mass += alg->weight(s);
            }
            acc /= mass;
            if (trace_blocks) acc = (acc.trace() / static_cast<double>(k)) * Matrix::Identity(k, k);
            for (int s : g) out[s] = acc;
        }
        return AlgebraElement(x.algebra(), std::move(out));
    };
    std::string desc = trace_blocks ? "partition-trace" : "partition";
    ConditionalExpectation e(desc, alg, map);
    e.groups_ = std::move(groups);
    e.trace_blocks_ = trace_blocks;
    return e;
}

ConditionalExpectation full_trace(const AlgebraPtr& alg) {
    return ConditionalExpectation("trace", alg, [alg](const AlgebraElement& x) {
        return AlgebraElement::scalar(alg, trace(x));
    });
}

ConditionalExpectation center(const AlgebraPtr& alg) {
    std::vector<std::vector<int>> groups;
    for (int s = 0; s < static_cast<int>(alg->num_sites()); ++s) groups.push_back({s});
    return partition_average(alg, std::move(groups), true);
}

ConditionalExpectation identity_expectation(const AlgebraPtr& alg) {
    return ConditionalExpectation("identity", alg, [](const AlgebraElement& x) { return x; });
}

ConditionalExpectation pinching(const AlgebraPtr& alg, const std::vector<std::vector<int>>& sizes) {
    if (sizes.size() != alg->num_sites()) throw ContractError("pinching: one size list per site");
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        int total = 0;
        for (int b : sizes[s]) {
            if (b < 1) throw ContractError("pinching: block sizes must be positive");
            total += b;
        }
        if (total != alg->dim(s)) throw ContractError("pinching: sizes must sum to the site dim");
    }
    return ConditionalExpectation("pinching", alg, [sizes](const AlgebraElement& x) {
        return x.map_blocks([&](std::size_t s, const Matrix& m) -> Matrix {
            Matrix out = Matrix::Zero(m.rows(), m.cols());
            int off = 0;
            for (int b : sizes[s]) {
                out.block(off, off, b, b) = m.block(off, off, b, b);
                off += b;
            }
            return out;
        });
    });
}

ConditionalExpectation from_projection(const AlgebraPtr& alg, Matrix projection,
                                       std::string description) {
    if (projection.rows() != alg->super_dim() || projection.cols() != alg->super_dim())
        throw ContractError("from_projection: matrix size mismatch");
    auto p = std::make_shared<const Matrix>(std::move(projection));
    return ConditionalExpectation(std::move(description), alg, [alg, p](const AlgebraElement& x) {
        return from_vector(alg, *p * to_vector(x));
    });
}

ConditionalExpectation tensor(const ConditionalExpectation& e1, const ConditionalExpectation& e2) {
    AlgebraPtr a1 = e1.algebra(), a2 = e2.algebra();
    AlgebraPtr prod = tensor_product(a1, a2);
    return ConditionalExpectation(
        e1.description() + "(x)" + e2.description(), prod,
        [a1, a2, e1, e2](const AlgebraElement& x) {
            ElementMap f1 = [&e1](const AlgebraElement& y) { return e1(y); };
            ElementMap f2 = [&e2](const AlgebraElement& y) { return e2(y); };
            return apply_right_factor(a1, a2, f2, apply_left_factor(a1, a2, f1, x));
        });
}

}  // namespace sobolev
