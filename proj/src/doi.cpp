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

#include "sobolev/doi.hpp"

#include "sobolev/channel.hpp"
#include "sobolev/parallel.hpp"
#include "sobolev/rng.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sobolev {

namespace {

Eigen::MatrixXd kernel_grid(const Kernel& F, const SpectralDecomposition& sr,
                            const SpectralDecomposition& ss, std::size_t site) {
    const bool shared = &sr == &ss;
    const Eigen::VectorXd s = floored_spectrum(sr.eigenvalues[site]);
    const Eigen::VectorXd t = floored_spectrum(ss.eigenvalues[site]);
    Eigen::MatrixXd m(s.size(), t.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        for (Eigen::Index j = 0; j < t.size(); ++j) {
            const bool same = shared && sr.clusters[site][i] == sr.clusters[site][j];
            m(i, j) = F.eval(s(i), t(j), same);
        }
    return m;
}

void require_compatible(const SpectralDecomposition& a, const SpectralDecomposition& b,
                        const AlgebraPtr& alg) {
    if (!a.algebra->same_shape(*b.algebra) || !a.algebra->same_shape(*alg))
        throw ContractError("schur_q: spectra and argument live on different algebras");
}

}  // namespace

AlgebraElement schur_q(const Kernel& F, const SpectralDecomposition& spec_rho,
                       const SpectralDecomposition& spec_sigma, const AlgebraElement& a) {
    require_compatible(spec_rho, spec_sigma, a.algebra());
    return a.map_blocks([&](std::size_t s, const Matrix& x) -> Matrix {
        const Matrix& ur = spec_rho.eigenvectors[s];
        const Matrix& us = spec_sigma.eigenvectors[s];
        Matrix inner = ur.adjoint() * x * us;
        inner.array() *= kernel_grid(F, spec_rho, spec_sigma, s).cast<cplx>().array();
        return ur * inner * us.adjoint();
    });
}

AlgebraElement schur_q(const Kernel& F, const SpectralDecomposition& spec, const AlgebraElement& a) {
    return schur_q(F, spec, spec, a);
}

Matrix superoperator_matrix(const Kernel& F, const SpectralDecomposition& spec_rho,
                            const SpectralDecomposition& spec_sigma) {
    require_compatible(spec_rho, spec_sigma, spec_rho.algebra);
    const auto& alg = *spec_rho.algebra;
    Matrix out = Matrix::Zero(alg.super_dim(), alg.super_dim());
    for (std::size_t s = 0; s < alg.num_sites(); ++s) {
        const int k = alg.dim(s);
        Eigen::MatrixXd m = kernel_grid(F, spec_rho, spec_sigma, s);
        // Row-major vec: vec(U X V^dagger) = (U (x) conj(V)) vec(X).
        Matrix w = Eigen::kroneckerProduct(spec_rho.eigenvectors[s],
                                           spec_sigma.eigenvectors[s].conjugate())
                       .eval();
        Eigen::VectorXcd diag(k * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) diag(i * k + j) = m(i, j);
        const int off = alg.super_offset(s);
        out.block(off, off, k * k, k * k) = w * diag.asDiagonal() * w.adjoint();
    }
    return out;
}

const char* to_string(ConeSide side) { return side == ConeSide::Plus ? "plus" : "minus"; }

namespace {

struct TrialOutcome {
    std::uint64_t seed = 0;
    int dim = 0;
    int env = 0;
    double min_eig = 0.0;
    double gram = 0.0;
    bool breakdown = false;
};

double op_norm_hermitian(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// tau-normalized state mixed with the identity so that its smallest
// eigenvalue is at least eta.
AlgebraElement sample_state(const AlgebraPtr& alg, double eta, std::uint64_t seed) {
    AlgebraElement r = normalized(random_positive(alg, 1.0, 0.0, seed));
    return (1.0 - eta) * r + eta * AlgebraElement::identity(alg);
}

}  // namespace

ConeTestReport cone_test(const Kernel& F, ConeSide side, const ConeTestOptions& options) {
    if (options.trials < 0) throw ContractError("cone_test: negative trial count");
    if (options.dims.empty() || options.env_dims.empty())
        throw ContractError("cone_test: empty dimension lists");
    for (int d : options.dims)
        if (d < 2) throw ContractError("cone_test: dims must be >= 2");

    static constexpr double kEtas[] = {1e-1, 1e-2, 1e-3};
    const std::size_t nd = options.dims.size();
    const std::size_t ne = options.env_dims.size();
    std::vector<TrialOutcome> out(options.trials);
    const Rng root(options.seed);

    parallel_for(out.size(), [&](std::size_t t) {
        TrialOutcome& o = out[t];
        o.seed = root.split(t).seed();
        o.dim = options.dims[t % nd];
        o.env = options.env_dims[(t / nd) % ne];
        const double eta = kEtas[(t / (nd * ne)) % 3];
        try {
            auto alg = matrix_algebra(o.dim);
            AlgebraElement rho = sample_state(alg, eta, splitmix64(o.seed ^ 1));
            AlgebraElement sigma = sample_state(alg, eta, splitmix64(o.seed ^ 2));
            QuantumChannel beta = options.unital_only
                                      ? random_mixed_unitary(o.dim, std::max(2, o.env),
                                                             splitmix64(o.seed ^ 3))
                                      : random_channel(o.dim, o.env, splitmix64(o.seed ^ 3));
            AlgebraElement brho = apply_channel(beta, rho).hermitian_part();
            AlgebraElement bsigma = apply_channel(beta, sigma).hermitian_part();

            auto sr = eigh(rho), ss = eigh(sigma), sbr = eigh(brho), sbs = eigh(bsigma);
            Matrix s1 = superoperator_matrix(F, sr, ss);
            Matrix s2 = superoperator_matrix(F, sbr, sbs);
            Matrix b = channel_matrix(beta);
            Matrix lhs, rhs;
            if (side == ConeSide::Plus) {
                lhs = b.adjoint() * s2 * b;
                rhs = s1;
            } else {
                lhs = b * s1 * b.adjoint();
                rhs = s2;
            }
            Matrix delta = rhs - lhs;
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (delta + delta.adjoint()),
                                                     Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
            o.min_eig = es.eigenvalues()(0);
            o.gram = std::max(op_norm_hermitian(lhs), op_norm_hermitian(rhs));
            if (!std::isfinite(o.min_eig) || !std::isfinite(o.gram)) o.breakdown = true;
        } catch (const DomainError&) {
            o.breakdown = true;
        } catch (const NumericalError&) {
            o.breakdown = true;
        }
    });

    ConeTestReport rep;
    rep.kernel = F.name();
    rep.side = side;
    rep.trials = options.trials;
    rep.dims = options.dims;
    rep.env_dims = options.env_dims;
    rep.unital_only = options.unital_only;
    rep.min_eig = std::numeric_limits<double>::infinity();
    rep.min_relative_eig = std::numeric_limits<double>::infinity();
    for (const auto& o : out) {
        if (o.breakdown) {
            ++rep.breakdowns;
            continue;
        }
        rep.min_eig = std::min(rep.min_eig, o.min_eig);
        rep.min_relative_eig = std::min(rep.min_relative_eig, o.min_eig / (1.0 + o.gram));
        if (o.min_eig < -1e-8 * (1.0 + o.gram))
            rep.violations.push_back({o.seed, o.dim, o.env, o.min_eig});
    }
    if (!rep.violations.empty())
        rep.verdict = Verdict::Fail;
    else if (rep.breakdowns > 0)
        rep.verdict = Verdict::Inconclusive;
    else
        rep.verdict = Verdict::Pass;
    return rep;
}

bool homogeneity_check(const Kernel& F, const std::vector<double>& lambdas,
                       const std::vector<double>& grid) {
    for (double lam : lambdas) {
        if (!(lam > 0.0 && lam <= 1.0)) throw ContractError("homogeneity_check: lambda outside (0,1]");
        for (double x : grid)
            for (double y : grid) {
                const double base = F(x, y);
                if (lam * F(lam * x, lam * y) > base + 1e-12 * (1.0 + std::abs(base))) return false;
            }
    }
    return true;
}

}  // namespace sobolev
