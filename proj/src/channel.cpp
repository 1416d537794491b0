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

#include "sobolev/channel.hpp"

#include "sobolev/errors.hpp"

#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

namespace sobolev {

QuantumChannel::QuantumChannel(int d, std::vector<Matrix> kraus)
    : dim_(d), kraus_(std::move(kraus)) {
    if (d < 1 || kraus_.empty()) throw ContractError("channel needs d >= 1 and Kraus operators");
    Matrix s = Matrix::Zero(d, d);
    for (const auto& k : kraus_) {
        if (k.rows() != d || k.cols() != d) throw ContractError("Kraus operator has wrong shape");
        s += k.adjoint() * k;
    }
    if ((s - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
        throw ContractError("Kraus operators are not trace preserving");
}

bool QuantumChannel::is_unital(double tol) const {
    Matrix s = Matrix::Zero(dim_, dim_);
    for (const auto& k : kraus_) s += k * k.adjoint();
    return (s - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() <= tol;
}

Matrix haar_unitary(int n, Rng& rng) {
    Matrix z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

QuantumChannel random_channel(int d, int env_dim, std::uint64_t seed) {
    if (d < 2 || env_dim < 1) throw ContractError("random_channel needs d >= 2, env_dim >= 1");
    Rng rng(seed);
    Matrix u = haar_unitary(d * env_dim, rng);
    std::vector<Matrix> kraus;
    for (int e = 0; e < env_dim; ++e) kraus.push_back(u.block(e * d, 0, d, d));
    return {d, std::move(kraus)};
}

QuantumChannel random_mixed_unitary(int d, int n_unitaries, std::uint64_t seed) {
    if (d < 1 || n_unitaries < 1) throw ContractError("random_mixed_unitary: bad arguments");
    Rng rng(seed);
    std::vector<double> w(n_unitaries);
    double total = 0.0;
    for (auto& x : w) {
        x = -std::log(1.0 - rng.uniform());
        total += x;
    }
    std::vector<Matrix> kraus;
    for (int i = 0; i < n_unitaries; ++i) kraus.push_back(std::sqrt(w[i] / total) * haar_unitary(d, rng));
    return {d, std::move(kraus)};
}

Matrix apply_channel(const QuantumChannel& ch, const Matrix& x) {
    if (x.rows() != ch.dim() || x.cols() != ch.dim()) throw ContractError("channel dim mismatch");
    Matrix y = Matrix::Zero(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus()) y += k * x * k.adjoint();
    return y;
}

Matrix adjoint_apply(const QuantumChannel& ch, const Matrix& x) {
    if (x.rows() != ch.dim() || x.cols() != ch.dim()) throw ContractError("channel dim mismatch");
    Matrix y = Matrix::Zero(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus()) y += k.adjoint() * x * k;
    return y;
}

namespace {

void require_single_site(const QuantumChannel& ch, const AlgebraElement& x) {
    if (x.num_sites() != 1 || x.algebra()->dim(0) != ch.dim())
        throw ContractError("channels act on a single site of matching dimension");
}

}  // namespace

AlgebraElement apply_channel(const QuantumChannel& ch, const AlgebraElement& x) {
    require_single_site(ch, x);
    return {x.algebra(), {apply_channel(ch, x.block(0))}};
}

AlgebraElement adjoint_apply(const QuantumChannel& ch, const AlgebraElement& x) {
    require_single_site(ch, x);
    return {x.algebra(), {adjoint_apply(ch, x.block(0))}};
}

Matrix choi_matrix(const QuantumChannel& ch) {
    const int d = ch.dim();
    Matrix c = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = 1.0;
            c.block(i * d, j * d, d, d) = apply_channel(ch, e);
        }
    return c;
}

Matrix channel_matrix(const QuantumChannel& ch) {
    const int d = ch.dim();
    Matrix b = Matrix::Zero(d * d, d * d);
    for (const auto& k : ch.kraus()) b += Eigen::kroneckerProduct(k, k.conjugate()).eval();
    return b;
}

}  // namespace sobolev
