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
#include "sobolev/scalar_function.hpp"

#include <functional>
#include <vector>

namespace sobolev {

inline constexpr double kDefaultClusterTol = 1e-8;
// Eigenvalues in [-kPsdSlack * ||block||, 0) are treated as 0.
inline constexpr double kPsdSlack = 1e-10;

struct SpectralDecomposition {
    AlgebraPtr algebra;
    std::vector<Eigen::VectorXd> eigenvalues;  // ascending per site
    std::vector<Matrix> eigenvectors;          // unitary per site, columns
    double cluster_tol = kDefaultClusterTol;
    std::vector<std::vector<int>> clusters;    // cluster id per eigenvalue, per site

    AlgebraElement reconstruct() const;
    AlgebraElement apply(const std::function<double(double)>& fn) const;
    double min_eigenvalue() const;
    double max_abs_eigenvalue() const;
};

SpectralDecomposition eigh(const AlgebraElement& h, double cluster_tol = kDefaultClusterTol);

// Clamps rounding negatives of a PSD spectrum to 0; genuine negatives raise DomainError.
Eigen::VectorXd floored_spectrum(const Eigen::VectorXd& eigenvalues);

// U f^{(derivative)}(diag(lambda)) U^dagger per block, with eigenvalues floored
// at 0 and then raised to epsilon_floor when epsilon_floor > 0.
AlgebraElement matrix_function(const ScalarFunction& f, const AlgebraElement& rho,
                               int derivative = 0, double epsilon_floor = 0.0);
AlgebraElement matrix_function(const ScalarFunction& f, const SpectralDecomposition& spec,
                               int derivative = 0, double epsilon_floor = 0.0);

double min_eigenvalue(const AlgebraElement& h);

}  // namespace sobolev
