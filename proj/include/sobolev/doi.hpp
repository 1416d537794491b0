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
#include "sobolev/kernel.hpp"
#include "sobolev/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sobolev {

// Q_F^{rho,sigma}(a) = sum_ij F(s_i, t_j) P_i a Q_j, block by block.
// Passing the same decomposition object for rho and sigma enables the
// cluster fallback for difference quotients.
AlgebraElement schur_q(const Kernel& F, const SpectralDecomposition& spec_rho,
                       const SpectralDecomposition& spec_sigma, const AlgebraElement& a);
AlgebraElement schur_q(const Kernel& F, const SpectralDecomposition& spec, const AlgebraElement& a);

// Matrix of Q_F in the orthonormal tau-basis (block diagonal over sites).
Matrix superoperator_matrix(const Kernel& F, const SpectralDecomposition& spec_rho,
                            const SpectralDecomposition& spec_sigma);

enum class ConeSide { Plus, Minus };

const char* to_string(ConeSide side);

struct ConeViolation {
    std::uint64_t seed = 0;
    int dim = 0;
    int env_dim = 0;
    double min_eig = 0.0;
};

struct ConeTestOptions {
    int trials = 500;
    std::vector<int> dims{2, 3, 4};
    std::vector<int> env_dims{1, 2, 4};
    std::uint64_t seed = 0;
    // Restrict to mixed-unitary (unital) channels.
    bool unital_only = false;
};

struct ConeTestReport {
    std::string kernel;
    ConeSide side = ConeSide::Plus;
    int trials = 0;
    std::vector<int> dims;
    std::vector<int> env_dims;
    bool unital_only = false;
    double min_eig = 0.0;
    // Most negative min_eig / (1 + ||Gram||) over the trials.
    double min_relative_eig = 0.0;
    int breakdowns = 0;
    std::vector<ConeViolation> violations;
    Verdict verdict = Verdict::Pass;
};

ConeTestReport cone_test(const Kernel& F, ConeSide side, const ConeTestOptions& options = {});

// True iff lambda F(lambda x, lambda y) <= F(x, y) on every (lambda, x, y).
bool homogeneity_check(const Kernel& F, const std::vector<double>& lambdas,
                       const std::vector<double>& grid);

}  // namespace sobolev
