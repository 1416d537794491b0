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

#include "sobolev/spectral.hpp"

#include "sobolev/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace sobolev {

SpectralDecomposition eigh(const AlgebraElement& h, double cluster_tol) {
    SpectralDecomposition out;
    out.algebra = h.algebra();
    out.cluster_tol = cluster_tol;
    for (const auto& b : h.blocks()) {
        const double scale = b.cwiseAbs().maxCoeff();
        if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale))
            throw ContractError("eigh: input is not Hermitian");
        Matrix sym = 0.5 * (b + b.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
        if (es.info() != Eigen::Success) throw NumericalError("eigh: eigensolver failed");
        Eigen::VectorXd ev = es.eigenvalues();
        const double thr = cluster_tol * (1.0 + ev.cwiseAbs().maxCoeff());
        std::vector<int> ids(ev.size());
        int id = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (i > 0 && ev(i) - ev(i - 1) > thr) ++id;
            ids[i] = id;
        }
        out.eigenvalues.push_back(std::move(ev));
        out.eigenvectors.push_back(es.eigenvectors());
        out.clusters.push_back(std::move(ids));
    }
    return out;
}

AlgebraElement SpectralDecomposition::apply(const std::function<double(double)>& fn) const {
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < eigenvalues.size(); ++s) {
        const Matrix& u = eigenvectors[s];
        Eigen::VectorXcd d = eigenvalues[s].unaryExpr(fn).cast<cplx>();
        Matrix m = u * d.asDiagonal() * u.adjoint();
        b.push_back(0.5 * (m + m.adjoint()));
    }
    return {algebra, std::move(b)};
}

AlgebraElement SpectralDecomposition::reconstruct() const {
    return apply([](double x) { return x; });
}

double SpectralDecomposition::min_eigenvalue() const {
    double m = eigenvalues.front()(0);
    for (const auto& ev : eigenvalues) m = std::min(m, ev(0));
    return m;
}

double SpectralDecomposition::max_abs_eigenvalue() const {
    double m = 0.0;
    for (const auto& ev : eigenvalues) m = std::max(m, ev.cwiseAbs().maxCoeff());
    return m;
}

Eigen::VectorXd floored_spectrum(const Eigen::VectorXd& eigenvalues) {
    const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    Eigen::VectorXd out = eigenvalues;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out(i) >= 0.0) continue;
        if (out(i) < -kPsdSlack * scale)
            throw DomainError("negative eigenvalue on a positive-element argument");
        out(i) = 0.0;
    }
    return out;
}

AlgebraElement matrix_function(const ScalarFunction& f, const SpectralDecomposition& spec,
                               int derivative, double epsilon_floor) {
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < spec.eigenvalues.size(); ++s) {
        Eigen::VectorXd lam = floored_spectrum(spec.eigenvalues[s]);
        if (epsilon_floor > 0.0) lam = lam.cwiseMax(epsilon_floor);
        Eigen::VectorXcd d(lam.size());
        for (Eigen::Index i = 0; i < lam.size(); ++i) d(i) = f.eval(derivative, lam(i));
        const Matrix& u = spec.eigenvectors[s];
        Matrix m = u * d.asDiagonal() * u.adjoint();
        b.push_back(0.5 * (m + m.adjoint()));
    }
    return {spec.algebra, std::move(b)};
}

AlgebraElement matrix_function(const ScalarFunction& f, const AlgebraElement& rho, int derivative,
                               double epsilon_floor) {
    return matrix_function(f, eigh(rho), derivative, epsilon_floor);
}

double min_eigenvalue(const AlgebraElement& h) { return eigh(h).min_eigenvalue(); }

}  // namespace sobolev
