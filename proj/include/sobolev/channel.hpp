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
#include "sobolev/rng.hpp"

#include <cstdint>
#include <vector>

namespace sobolev {

/// CPTP map on M_d in Kraus form, x -> sum_i K_i x K_i^dagger.
class QuantumChannel {
 public:
    QuantumChannel(int d, std::vector<Matrix> kraus);

    int dim() const { return dim_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    bool is_unital(double tol = 1e-10) const;

 private:
    int dim_;
    std::vector<Matrix> kraus_;
};

Matrix haar_unitary(int n, Rng& rng);

// Stinespring dilation: first d columns of a Haar unitary on C^{d * env_dim}.
QuantumChannel random_channel(int d, int env_dim, std::uint64_t seed);
// Convex combination of n_unitaries Haar unitaries with Dirichlet(1) weights.
QuantumChannel random_mixed_unitary(int d, int n_unitaries, std::uint64_t seed);

Matrix apply_channel(const QuantumChannel& ch, const Matrix& x);
Matrix adjoint_apply(const QuantumChannel& ch, const Matrix& x);
AlgebraElement apply_channel(const QuantumChannel& ch, const AlgebraElement& x);
AlgebraElement adjoint_apply(const QuantumChannel& ch, const AlgebraElement& x);

// Unnormalized Choi matrix sum_{ij} E_ij tensor ch(E_ij).
Matrix choi_matrix(const QuantumChannel& ch);
// Matrix of ch in the orthonormal basis of M_d (row-major vec): sum K tensor conj(K).
Matrix channel_matrix(const QuantumChannel& ch);

}  // namespace sobolev
