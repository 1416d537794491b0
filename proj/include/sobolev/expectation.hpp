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

#include <memory>
#include <string>
#include <vector>

namespace sobolev {

/// Conditional expectation onto a subalgebra, tau-preserving.
class ConditionalExpectation {
 public:
    ConditionalExpectation(std::string description, AlgebraPtr alg, ElementMap map);

    AlgebraElement operator()(const AlgebraElement& x) const;
    const AlgebraPtr& algebra() const { return alg_; }
    const std::string& description() const { return description_; }
    // Dense matrix in the orthonormal tau-basis; built on first use.
    const Matrix& matrix() const;

    // Site groups when this is a partition average, else empty.
    const std::vector<std::vector<int>>& groups() const { return groups_; }
    bool traces_blocks() const { return trace_blocks_; }

 private:
    friend ConditionalExpectation partition_average(const AlgebraPtr&, std::vector<std::vector<int>>,
                                                    bool);
    std::string description_;
    AlgebraPtr alg_;
    ElementMap map_;
    std::vector<std::vector<int>> groups_;
    bool trace_blocks_ = false;
    struct DenseCache;
    std::shared_ptr<DenseCache> dense_;
};

// Weighted average of the blocks within each site group; groups must have
// equal block dims. With trace_blocks the result is further replaced by
// tr(b)/k times the identity, i.e. the target is group-constant scalars.
ConditionalExpectation partition_average(const AlgebraPtr& alg, std::vector<std::vector<int>> groups,
                                         bool trace_blocks = false);
// x -> tau(x) 1.
ConditionalExpectation full_trace(const AlgebraPtr& alg);
// Onto the center: every block replaced by its normalized trace.
ConditionalExpectation center(const AlgebraPtr& alg);
ConditionalExpectation identity_expectation(const AlgebraPtr& alg);
// Block-diagonal compression inside each site: sizes[s] lists the diagonal
// block sizes of site s (summing to its dim).
ConditionalExpectation pinching(const AlgebraPtr& alg, const std::vector<std::vector<int>>& sizes);
// Orthogonal projection given by a dense matrix in the tau-basis.
ConditionalExpectation from_projection(const AlgebraPtr& alg, Matrix projection,
                                       std::string description);
// E1 (x) E2 on tensor_product(E1.algebra(), E2.algebra()).
ConditionalExpectation tensor(const ConditionalExpectation& e1, const ConditionalExpectation& e2);

}  // namespace sobolev
