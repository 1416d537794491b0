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
#include "sobolev/configuration.hpp"
#include "sobolev/expectation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sobolev {

// Dense spectral data is refused above this super dimension.
inline constexpr int kDenseLimit = 4096;
inline constexpr double kGapTol = 1e-9;

/// Classical jump rates between sites: (A x)(w) = sum_{w'} q(w, w') (x(w) - x(w')).
struct SiteRates {
    struct Jump {
        int to = 0;
        double rate = 0.0;
    };
    std::vector<std::vector<Jump>> out;
};

struct GeneratorSpectrum {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // columns, orthonormal in the tau-basis
};

struct ModelInfo {
    std::string family = "custom";
    int n = 0;
    int r = 0;
    int k = 1;
    std::shared_ptr<const ConfigurationSpace> config;
};

/// tau-self-adjoint positive generator A with its fixed-point expectation.
class Generator {
 public:
    static Generator from_rates(AlgebraPtr alg, SiteRates rates, ModelInfo info = {});
    static Generator from_map(AlgebraPtr alg, ElementMap map, ConditionalExpectation fixed,
                              ModelInfo info = {});
    // Fixed points are read off the spectrum.
    static Generator from_matrix(AlgebraPtr alg, Matrix a, ModelInfo info = {});
    static Generator zero(AlgebraPtr alg);

    AlgebraElement apply(const AlgebraElement& x) const;
    AlgebraElement operator()(const AlgebraElement& x) const { return apply(x); }

    const AlgebraPtr& algebra() const;
    const ConditionalExpectation& fixed_point_expectation() const;
    const ModelInfo& info() const;
    const std::optional<SiteRates>& rates() const;

    bool has_dense() const;
    // Dense superoperator in the tau-basis; throws above kDenseLimit.
    const Matrix& matrix() const;
    // Computed once, thread-safe.
    const GeneratorSpectrum& spectrum() const;

    struct State;

 private:
    explicit Generator(std::shared_ptr<State> s) : s_(std::move(s)) {}
    std::shared_ptr<State> s_;
};

}  // namespace sobolev
