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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace sobolev {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Site {
    std::string label;
    int dim = 1;
};

/// Finite direct sum of full matrix blocks with a faithful tracial state
///   tau(x) = sum_w mu_w * tr(x_w) / k_w.
class WeightedAlgebra {
 public:
    WeightedAlgebra(std::vector<Site> sites, std::vector<double> weights);

    std::size_t num_sites() const { return sites_.size(); }
    const std::vector<Site>& sites() const { return sites_; }
    const std::vector<double>& weights() const { return weights_; }
    int dim(std::size_t site) const { return sites_[site].dim; }
    double weight(std::size_t site) const { return weights_[site]; }

    // D = sum_w k_w.
    int hilbert_dim() const;
    // Dimension of the algebra as a vector space, sum_w k_w^2.
    int super_dim() const;
    // Offset of a site's block inside the orthonormal-basis vectorization.
    int super_offset(std::size_t site) const { return offsets_[site]; }

    bool same_shape(const WeightedAlgebra& other) const;
    bool operator==(const WeightedAlgebra& other) const;

 private:
    std::vector<Site> sites_;
    std::vector<double> weights_;
    std::vector<int> offsets_;
};

using AlgebraPtr = std::shared_ptr<const WeightedAlgebra>;

AlgebraPtr make_algebra(std::vector<Site> sites, std::vector<double> weights);
// Single-site M_d with tau = tr/d.
AlgebraPtr matrix_algebra(int d);
// n sites of block dimension k with uniform weights (l_inf^n tensor M_k).
AlgebraPtr uniform_algebra(int n_sites, int k, const std::string& label_prefix = "s");
// Same sites, new weights.
AlgebraPtr reweighted(const AlgebraPtr& alg, std::vector<double> weights);
// Sites (w1, w2) in w1-major order, block dims k1*k2, weights mu1*mu2.
AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b);
// A tensor M_k: block dims k_w * k, weights unchanged.
AlgebraPtr ampliate(const AlgebraPtr& alg, int k);

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* what);

/// Block-diagonal element of a WeightedAlgebra. Immutable after construction.
class AlgebraElement {
 public:
    AlgebraElement() = default;
    AlgebraElement(AlgebraPtr alg, std::vector<Matrix> blocks);

    static AlgebraElement zero(const AlgebraPtr& alg);
    static AlgebraElement identity(const AlgebraPtr& alg);
    static AlgebraElement scalar(const AlgebraPtr& alg, cplx c);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Matrix>& blocks() const { return blocks_; }
    const Matrix& block(std::size_t site) const { return blocks_[site]; }
    std::size_t num_sites() const { return blocks_.size(); }

    AlgebraElement adjoint() const;
    AlgebraElement hermitian_part() const;
    // Largest block operator norm.
    double norm() const;
    bool is_hermitian(double rel_tol = 1e-12) const;
    // min eigenvalue >= -rel_tol * ||block|| on every block (Hermitian input).
    bool is_positive(double rel_tol = 1e-10) const;

    AlgebraElement map_blocks(const std::function<Matrix(std::size_t, const Matrix&)>& fn) const;

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(cplx c, const AlgebraElement& a);
    friend AlgebraElement operator*(double c, const AlgebraElement& a);
    AlgebraElement operator-() const;

 private:
    AlgebraPtr alg_;
    std::vector<Matrix> blocks_;
};

// Normalized weighted trace.
cplx trace(const AlgebraElement& x);
// <a, b> = tau(a* b).
cplx inner(const AlgebraElement& a, const AlgebraElement& b);
// Real part of tau(a b) for Hermitian a, b (cheaper than forming a*b).
double trace_product_real(const AlgebraElement& a, const AlgebraElement& b);

// x tensor I_k in ampliate(algebra, k).
AlgebraElement ampliate(const AlgebraElement& x, int k);
// Elementwise x tensor y in tensor_product(x.algebra, y.algebra).
AlgebraElement kron(const AlgebraElement& x, const AlgebraElement& y);

// Coordinates in the tau-orthonormal basis of scaled matrix units: entry (i, j)
// of block w maps to sqrt(mu_w / k_w) * x_w(i, j), blocks concatenated, each
// block row-major. Adjoints of superoperators are then conjugate transposes.
Vector to_vector(const AlgebraElement& x);
AlgebraElement from_vector(const AlgebraPtr& alg, const Vector& v);

using ElementMap = std::function<AlgebraElement(const AlgebraElement&)>;

// Matrix of a linear map on alg in the orthonormal basis.
Matrix superoperator_of(const AlgebraPtr& alg, const ElementMap& map);

// For x in tensor_product(left, right), apply phi tensor id (resp. id tensor psi).
AlgebraElement apply_left_factor(const AlgebraPtr& left, const AlgebraPtr& right,
                                 const ElementMap& phi, const AlgebraElement& x);
AlgebraElement apply_right_factor(const AlgebraPtr& left, const AlgebraPtr& right,
                                  const ElementMap& psi, const AlgebraElement& x);

// G G^dagger + floor * I per block, G complex Gaussian k_w x ceil(rank_fraction * k_w).
AlgebraElement random_positive(const AlgebraPtr& alg, double rank_fraction, double floor,
                               std::uint64_t seed);
// Random Hermitian element with i.i.d. Gaussian entries (GUE-like).
AlgebraElement random_hermitian(const AlgebraPtr& alg, std::uint64_t seed);
// Random element with i.i.d. complex Gaussian entries.
AlgebraElement random_element(const AlgebraPtr& alg, std::uint64_t seed);
// rho / tau(rho).
AlgebraElement normalized(const AlgebraElement& rho);

}  // namespace sobolev
