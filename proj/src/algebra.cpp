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

#include "sobolev/algebra.hpp"

#include "sobolev/errors.hpp"
#include "sobolev/rng.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <numeric>

namespace sobolev {

WeightedAlgebra::WeightedAlgebra(std::vector<Site> sites, std::vector<double> weights)
    : sites_(std::move(sites)), weights_(std::move(weights)) {
    if (sites_.empty()) throw ContractError("algebra needs at least one site");
    if (sites_.size() != weights_.size())
        throw ContractError("site and weight counts differ");
    double total = 0.0;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        if (sites_[i].dim < 1) throw ContractError("block dimension must be >= 1");
        if (!(weights_[i] > 0.0)) throw ContractError("site weights must be positive");
        total += weights_[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw ContractError("site weights must sum to 1");
    int off = 0;
    offsets_.reserve(sites_.size());
    for (const auto& s : sites_) {
        offsets_.push_back(off);
        off += s.dim * s.dim;
    }
}

int WeightedAlgebra::hilbert_dim() const {
    int d = 0;
    for (const auto& s : sites_) d += s.dim;
    return d;
}

int WeightedAlgebra::super_dim() const {
    return offsets_.back() + sites_.back().dim * sites_.back().dim;
}

bool WeightedAlgebra::same_shape(const WeightedAlgebra& other) const {
    if (sites_.size() != other.sites_.size()) return false;
    for (std::size_t i = 0; i < sites_.size(); ++i)
        if (sites_[i].dim != other.sites_[i].dim) return false;
    return true;
}

bool WeightedAlgebra::operator==(const WeightedAlgebra& other) const {
    return same_shape(other) && weights_ == other.weights_;
}

AlgebraPtr make_algebra(std::vector<Site> sites, std::vector<double> weights) {
    return std::make_shared<const WeightedAlgebra>(std::move(sites), std::move(weights));
}

AlgebraPtr matrix_algebra(int d) { return make_algebra({{"m", d}}, {1.0}); }

AlgebraPtr uniform_algebra(int n_sites, int k, const std::string& label_prefix) {
    if (n_sites < 1) throw ContractError("need at least one site");
    std::vector<Site> sites;
    for (int i = 0; i < n_sites; ++i) sites.push_back({label_prefix + std::to_string(i), k});
    // Spread the rounding so the weights still sum to 1 within 1e-12.
    std::vector<double> w(n_sites, 1.0 / n_sites);
    return make_algebra(std::move(sites), std::move(w));
}

AlgebraPtr reweighted(const AlgebraPtr& alg, std::vector<double> weights) {
    return make_algebra(alg->sites(), std::move(weights));
}

AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b) {
    std::vector<Site> sites;
    std::vector<double> w;
    for (std::size_t i = 0; i < a->num_sites(); ++i)
        for (std::size_t j = 0; j < b->num_sites(); ++j) {
            sites.push_back({a->sites()[i].label + "|" + b->sites()[j].label,
                             a->dim(i) * b->dim(j)});
            w.push_back(a->weight(i) * b->weight(j));
        }
    return make_algebra(std::move(sites), std::move(w));
}

AlgebraPtr ampliate(const AlgebraPtr& alg, int k) {
    if (k < 1) throw ContractError("ampliation factor must be >= 1");
    if (k == 1) return alg;
    std::vector<Site> sites = alg->sites();
    for (auto& s : sites) s.dim *= k;
    return make_algebra(std::move(sites), alg->weights());
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && *a == *b);
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* what) {
    if (!same_algebra(a, b)) throw ContractError(std::string(what) + ": algebra mismatch");
}

AlgebraElement::AlgebraElement(AlgebraPtr alg, std::vector<Matrix> blocks)
    : alg_(std::move(alg)), blocks_(std::move(blocks)) {
    if (!alg_) throw ContractError("element needs an algebra");
    if (blocks_.size() != alg_->num_sites()) throw ContractError("wrong number of blocks");
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].rows() != alg_->dim(i) || blocks_[i].cols() != alg_->dim(i))
            throw ContractError("block shape does not match site dimension");
}

AlgebraElement AlgebraElement::zero(const AlgebraPtr& alg) { return scalar(alg, 0.0); }

AlgebraElement AlgebraElement::identity(const AlgebraPtr& alg) { return scalar(alg, 1.0); }

AlgebraElement AlgebraElement::scalar(const AlgebraPtr& alg, cplx c) {
    std::vector<Matrix> b;
    b.reserve(alg->num_sites());
    for (std::size_t i = 0; i < alg->num_sites(); ++i)
        b.push_back(c * Matrix::Identity(alg->dim(i), alg->dim(i)));
    return {alg, std::move(b)};
}

AlgebraElement AlgebraElement::map_blocks(
    const std::function<Matrix(std::size_t, const Matrix&)>& fn) const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) out.push_back(fn(i, blocks_[i]));
    return {alg_, std::move(out)};
}

AlgebraElement AlgebraElement::adjoint() const {
    return map_blocks([](std::size_t, const Matrix& m) -> Matrix { return m.adjoint(); });
}

AlgebraElement AlgebraElement::hermitian_part() const {
    return map_blocks(
        [](std::size_t, const Matrix& m) -> Matrix { return 0.5 * (m + m.adjoint()); });
}

namespace {

double op_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

double AlgebraElement::norm() const {
    double n = 0.0;
    for (const auto& b : blocks_) n = std::max(n, op_norm(b));
    return n;
}

bool AlgebraElement::is_hermitian(double rel_tol) const {
    for (const auto& b : blocks_) {
        double scale = b.cwiseAbs().maxCoeff();
        if ((b - b.adjoint()).cwiseAbs().maxCoeff() > rel_tol * std::max(scale, 1e-300))
            return false;
    }
    return true;
}

bool AlgebraElement::is_positive(double rel_tol) const {
    for (const auto& b : blocks_) {
        Matrix h = 0.5 * (b + b.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        double scale = ev.cwiseAbs().maxCoeff();
        if (ev(0) < -rel_tol * scale) return false;
    }
    return true;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_algebra(a.alg_, b.alg_, "operator+");
    return a.map_blocks([&](std::size_t i, const Matrix& m) -> Matrix { return m + b.blocks_[i]; });
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_algebra(a.alg_, b.alg_, "operator-");
    return a.map_blocks([&](std::size_t i, const Matrix& m) -> Matrix { return m - b.blocks_[i]; });
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_algebra(a.alg_, b.alg_, "operator*");
    return a.map_blocks([&](std::size_t i, const Matrix& m) -> Matrix { return m * b.blocks_[i]; });
}

AlgebraElement operator*(cplx c, const AlgebraElement& a) {
    return a.map_blocks([&](std::size_t, const Matrix& m) -> Matrix { return c * m; });
}

AlgebraElement operator*(double c, const AlgebraElement& a) {
    return a.map_blocks([&](std::size_t, const Matrix& m) -> Matrix { return c * m; });
}

AlgebraElement AlgebraElement::operator-() const { return -1.0 * *this; }

cplx trace(const AlgebraElement& x) {
    const auto& alg = *x.algebra();
    cplx t = 0.0;
    for (std::size_t i = 0; i < x.num_sites(); ++i)
        t += alg.weight(i) * x.block(i).trace() / static_cast<double>(alg.dim(i));
    return t;
}

cplx inner(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_algebra(a.algebra(), b.algebra(), "inner");
    const auto& alg = *a.algebra();
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.num_sites(); ++i)
        t += alg.weight(i) / alg.dim(i) * (a.block(i).conjugate().cwiseProduct(b.block(i))).sum();
    return t;
}

double trace_product_real(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_algebra(a.algebra(), b.algebra(), "trace_product_real");
    const auto& alg = *a.algebra();
    double t = 0.0;
    for (std::size_t i = 0; i < a.num_sites(); ++i)
        t += alg.weight(i) / alg.dim(i) *
             (a.block(i).transpose().cwiseProduct(b.block(i))).sum().real();
    return t;
}

AlgebraElement ampliate(const AlgebraElement& x, int k) {
    if (k < 1) throw ContractError("ampliation factor must be >= 1");
    if (k == 1) return x;
    auto alg = ampliate(x.algebra(), k);
    std::vector<Matrix> b;
    for (const auto& m : x.blocks())
        b.push_back(Eigen::kroneckerProduct(m, Matrix::Identity(k, k)).eval());
    return {alg, std::move(b)};
}

AlgebraElement kron(const AlgebraElement& x, const AlgebraElement& y) {
    auto alg = tensor_product(x.algebra(), y.algebra());
    std::vector<Matrix> b;
    for (const auto& mx : x.blocks())
        for (const auto& my : y.blocks()) b.push_back(Eigen::kroneckerProduct(mx, my).eval());
    return {alg, std::move(b)};
}

Vector to_vector(const AlgebraElement& x) {
    const auto& alg = *x.algebra();
    Vector v(alg.super_dim());
    for (std::size_t s = 0; s < alg.num_sites(); ++s) {
        const int k = alg.dim(s);
        const double c = std::sqrt(alg.weight(s) / k);
        const int off = alg.super_offset(s);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) v(off + i * k + j) = c * x.block(s)(i, j);
    }
    return v;
}

AlgebraElement from_vector(const AlgebraPtr& alg, const Vector& v) {
    if (v.size() != alg->super_dim()) throw ContractError("vector length mismatch");
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < alg->num_sites(); ++s) {
        const int k = alg->dim(s);
        const double c = std::sqrt(k / alg->weight(s));
        const int off = alg->super_offset(s);
        Matrix m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = c * v(off + i * k + j);
        b.push_back(std::move(m));
    }
    return {alg, std::move(b)};
}

Matrix superoperator_of(const AlgebraPtr& alg, const ElementMap& map) {
    const int n = alg->super_dim();
    Matrix s(n, n);
    Vector e = Vector::Zero(n);
    for (int j = 0; j < n; ++j) {
        e(j) = 1.0;
        s.col(j) = to_vector(map(from_vector(alg, e)));
        e(j) = 0.0;
    }
    return s;
}

namespace {

// Element of `left` read off the (w2, i2, j2) slice of x in left (x) right.
AlgebraElement left_slice(const AlgebraPtr& left, const AlgebraPtr& right, const AlgebraElement& x,
                          std::size_t w2, int i2, int j2) {
    const std::size_t n2 = right->num_sites();
    const int k2 = right->dim(w2);
    std::vector<Matrix> b;
    for (std::size_t w1 = 0; w1 < left->num_sites(); ++w1) {
        const int k1 = left->dim(w1);
        const Matrix& xb = x.block(w1 * n2 + w2);
        Matrix m(k1, k1);
        for (int a = 0; a < k1; ++a)
            for (int c = 0; c < k1; ++c) m(a, c) = xb(a * k2 + i2, c * k2 + j2);
        b.push_back(std::move(m));
    }
    return {left, std::move(b)};
}

AlgebraElement right_slice(const AlgebraPtr& right, const AlgebraElement& x, std::size_t w1, int i1, int j1) {
    const std::size_t n2 = right->num_sites();
    std::vector<Matrix> b;
    for (std::size_t w2 = 0; w2 < n2; ++w2) {
        const int k2 = right->dim(w2);
        b.push_back(x.block(w1 * n2 + w2).block(i1 * k2, j1 * k2, k2, k2));
    }
    return {right, std::move(b)};
}

}  // namespace

AlgebraElement apply_left_factor(const AlgebraPtr& left, const AlgebraPtr& right,
                                 const ElementMap& phi, const AlgebraElement& x) {
    const std::size_t n2 = right->num_sites();
    std::vector<Matrix> out = x.blocks();
    for (std::size_t w2 = 0; w2 < n2; ++w2) {
        const int k2 = right->dim(w2);
        for (int i2 = 0; i2 < k2; ++i2)
            for (int j2 = 0; j2 < k2; ++j2) {
                AlgebraElement y = phi(left_slice(left, right, x, w2, i2, j2));
                for (std::size_t w1 = 0; w1 < left->num_sites(); ++w1) {
                    const int k1 = left->dim(w1);
                    Matrix& ob = out[w1 * n2 + w2];
                    for (int a = 0; a < k1; ++a)
                        for (int c = 0; c < k1; ++c) ob(a * k2 + i2, c * k2 + j2) = y.block(w1)(a, c);
                }
            }
    }
    return {x.algebra(), std::move(out)};
}

AlgebraElement apply_right_factor(const AlgebraPtr& left, const AlgebraPtr& right,
                                  const ElementMap& psi, const AlgebraElement& x) {
    const std::size_t n2 = right->num_sites();
    std::vector<Matrix> out = x.blocks();
    for (std::size_t w1 = 0; w1 < left->num_sites(); ++w1) {
        const int k1 = left->dim(w1);
        for (int i1 = 0; i1 < k1; ++i1)
            for (int j1 = 0; j1 < k1; ++j1) {
                AlgebraElement y = psi(right_slice(right, x, w1, i1, j1));
                for (std::size_t w2 = 0; w2 < n2; ++w2) {
                    const int k2 = right->dim(w2);
                    out[w1 * n2 + w2].block(i1 * k2, j1 * k2, k2, k2) = y.block(w2);
                }
            }
    }
    return {x.algebra(), std::move(out)};
}

AlgebraElement random_positive(const AlgebraPtr& alg, double rank_fraction, double floor,
                               std::uint64_t seed) {
    if (!(rank_fraction > 0.0 && rank_fraction <= 1.0))
        throw ContractError("rank_fraction must lie in (0, 1]");
    if (floor < 0.0) throw ContractError("floor must be >= 0");
    Rng rng(seed);
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < alg->num_sites(); ++s) {
        const int k = alg->dim(s);
        const int r = std::max(1, static_cast<int>(std::ceil(rank_fraction * k - 1e-12)));
        Matrix g(k, r);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < r; ++j) g(i, j) = rng.complex_normal();
        Matrix m = g * g.adjoint() + floor * Matrix::Identity(k, k);
        b.push_back(0.5 * (m + m.adjoint()));
    }
    return {alg, std::move(b)};
}

AlgebraElement random_element(const AlgebraPtr& alg, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < alg->num_sites(); ++s) {
        const int k = alg->dim(s);
        Matrix m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = rng.complex_normal();
        b.push_back(std::move(m));
    }
    return {alg, std::move(b)};
}

AlgebraElement random_hermitian(const AlgebraPtr& alg, std::uint64_t seed) {
    return random_element(alg, seed).hermitian_part();
}

AlgebraElement normalized(const AlgebraElement& rho) {
    const double t = trace(rho).real();
    if (!(t > 0.0)) throw DomainError("cannot normalize an element with nonpositive trace");
    return (1.0 / t) * rho;
}

}  // namespace sobolev
