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

#include "sobolev/generator.hpp"

#include <vector>

namespace sobolev {

// (Delta_n f)(sigma) = (1/n) sum over ordered pairs (i, j) of f(sigma) - f(sigma^{ij}).
Generator random_transposition(int n, int k = 1);
// (Delta_{n,r} f)(sigma) = (1/n) sum over i < j of f(sigma) - f(sigma^{ij}).
Generator bernoulli_laplace(int n, int r, int k = 1);
// A = I - E.
Generator depolarizing(const ConditionalExpectation& e);
// Symmetric edge weights w (n x n, zero diagonal). Jump rates w(x, y) / mu(x).
Generator graph_laplacian(const Eigen::MatrixXd& weights, const std::vector<double>& mu, int k = 1);

AlgebraElement semigroup_apply(const Generator& a, double t, const AlgebraElement& x);

// A (x) id_{M_k}.
Generator ampliate_generator(const Generator& a, int k);
// A1 (x) id + id (x) A2.
Generator tensor_generator(const Generator& a1, const Generator& a2);

double spectral_gap(const Generator& a);

// Onto functions of the value at position (or site) i, tensored with M_k.
ConditionalExpectation martingale_subalgebra_expectation(const Generator& a, int i);
std::vector<ConditionalExpectation> martingale_subalgebra_expectations(const Generator& a);

}  // namespace sobolev
