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

#include "sobolev/entropy.hpp"

#include "sobolev/doi.hpp"
#include "sobolev/errors.hpp"
#include "sobolev/spectral.hpp"

#include <cmath>

namespace sobolev {

namespace {

// tau(g(h)) straight from the spectrum.
double trace_of_function(const SpectralDecomposition& spec, int order, const ScalarFunction& f,
                         double shift = 0.0) {
    const auto& alg = *spec.algebra;
    double t = 0.0;
    for (std::size_t s = 0; s < alg.num_sites(); ++s) {
        Eigen::VectorXd lam = floored_spectrum(spec.eigenvalues[s]);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < lam.size(); ++i) acc += f.eval(order, lam(i) + shift);
        t += alg.weight(s) * acc / alg.dim(s);
    }
    return t;
}

double floored_min(const SpectralDecomposition& spec) {
    double m = INFINITY;
    for (const auto& ev : spec.eigenvalues) m = std::min(m, floored_spectrum(ev).minCoeff());
    return m;
}

}  // namespace

EntropyValue bregman(const ScalarFunction& f, const AlgebraElement& rho, const AlgebraElement& sigma,
                     double epsilon) {
    require_same_algebra(rho.algebra(), sigma.algebra(), "bregman");
    if (epsilon < 0.0) throw ContractError("bregman: epsilon must be >= 0");
    auto sr = eigh(rho.hermitian_part());
    AlgebraElement s = sigma.hermitian_part();
    if (epsilon > 0.0) s = s + AlgebraElement::scalar(s.algebra(), epsilon);
    auto ss = eigh(s);
    if (epsilon == 0.0 && !(floored_min(ss) > 0.0))
        throw DomainError("bregman: singular sigma requires epsilon > 0");
    const double frho = trace_of_function(sr, 0, f);
    const double fs = trace_of_function(ss, 0, f);
    AlgebraElement fprime = matrix_function(f, ss, 1);
    const double lin = trace_product_real(rho.hermitian_part() - s, fprime);
    return {frho - fs - lin, epsilon, f.name()};
}

EntropyValue entropy_vs_subalgebra(const ScalarFunction& f, const AlgebraElement& rho,
                                   const ConditionalExpectation& e) {
    AlgebraElement h = rho.hermitian_part();
    const double a = trace_of_function(eigh(h), 0, f);
    const double b = trace_of_function(eigh(e(h).hermitian_part()), 0, f);
    return {a - b, 0.0, f.name()};
}

double fisher_generator(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho,
                        double epsilon) {
    if (epsilon < 0.0) throw ContractError("fisher_generator: epsilon must be >= 0");
    AlgebraElement h = rho.hermitian_part();
    AlgebraElement arho = a.apply(h).hermitian_part();
    auto spec = eigh(h);
    auto at = [&](double eps) {
        AlgebraElement fp = spec.apply([&](double x) { return f.eval(1, std::max(x, 0.0) + eps); });
        return trace_product_real(arho, fp);
    };
    // Validates the spectrum (raises on genuinely negative eigenvalues).
    const double lo = floored_min(spec);
    if (lo > 0.0 || f.defined_at_zero(1)) return at(epsilon);
    const double eps = epsilon > 0.0 ? epsilon : kDefaultEpsilon;
    return (4.0 * at(0.25 * eps) - at(eps)) / 3.0;
}

Derivation Derivation::commutator(const AlgebraElement& v) {
    if (!v.is_hermitian(1e-12)) throw ContractError("commutator derivation needs a Hermitian v");
    Derivation d;
    d.kind_ = Kind::Commutator;
    d.source_ = d.target_ = v.algebra();
    d.delta_ = [v](const AlgebraElement& x) { return v * x - x * v; };
    d.left_ = d.right_ = [](const AlgebraElement& x) { return x; };
    d.involution_ = [](const AlgebraElement& xi) { return -xi.adjoint(); };
    return d;
}

Derivation Derivation::difference(const Generator& a) {
    if (!a.rates()) throw ContractError("difference derivation needs a rate-based generator");
    AlgebraPtr src = a.algebra();
    struct Edge {
        int from, to;
    };
    std::vector<Edge> edges;
    std::vector<Site> sites;
    std::vector<double> w;
    double z = 0.0;
    const auto& out = a.rates()->out;
    for (int s = 0; s < static_cast<int>(out.size()); ++s)
        for (const auto& j : out[s]) {
            if (j.rate <= 0.0) continue;
            edges.push_back({s, j.to});
            sites.push_back({src->sites()[s].label + ">" + src->sites()[j.to].label, src->dim(s)});
            w.push_back(0.5 * src->weight(s) * j.rate);
            z += w.back();
        }
    if (edges.empty()) throw ContractError("difference derivation of a zero generator");
    for (auto& x : w) x /= z;
    AlgebraPtr tgt = make_algebra(std::move(sites), std::move(w));
    const double root_z = std::sqrt(z);
    auto pick = [tgt, edges](bool from) {
        return [tgt, edges, from](const AlgebraElement& x) {
            std::vector<Matrix> b;
            for (const auto& e : edges) b.push_back(x.block(from ? e.from : e.to));
            return AlgebraElement(tgt, std::move(b));
        };
    };
    Derivation d;
    d.kind_ = Kind::Difference;
    d.source_ = src;
    d.target_ = tgt;
    d.left_ = pick(true);
    d.right_ = pick(false);
    d.delta_ = [l = d.left_, r = d.right_, root_z](const AlgebraElement& x) {
        return root_z * (l(x) - r(x));
    };
    d.involution_ = [](const AlgebraElement& xi) { return xi.adjoint(); };
    return d;
}

Derivation Derivation::explicit_map(AlgebraPtr source, AlgebraPtr target, ElementMap delta,
                                    ElementMap left, ElementMap right, ElementMap involution) {
    Derivation d;
    d.kind_ = Kind::Explicit;
    d.source_ = std::move(source);
    d.target_ = std::move(target);
    d.delta_ = std::move(delta);
    d.left_ = std::move(left);
    d.right_ = std::move(right);
    d.involution_ = std::move(involution);
    return d;
}

AlgebraElement Derivation::operator()(const AlgebraElement& x) const {
    require_same_algebra(source_, x.algebra(), "Derivation");
    return delta_(x);
}

Generator generator_from_derivation(const Derivation& d) {
    const int n = d.source()->super_dim();
    const int m = d.target()->super_dim();
    Matrix dm(m, n);
    Vector e = Vector::Zero(n);
    for (int j = 0; j < n; ++j) {
        e(j) = 1.0;
        dm.col(j) = to_vector(d(from_vector(d.source(), e)));
        e(j) = 0.0;
    }
    ModelInfo info;
    info.family = "derivation";
    return Generator::from_matrix(d.source(), dm.adjoint() * dm, std::move(info));
}

double fisher_derivation(const Derivation& d, const ScalarFunction& f, const AlgebraElement& rho) {
    AlgebraElement h = rho.hermitian_part();
    AlgebraElement xi = d(h);
    Kernel k2 = Kernel::diff_quot(f, 2);
    AlgebraElement q;
    if (d.kind() == Derivation::Kind::Commutator) {
        auto spec = eigh(h);
        q = schur_q(k2, spec, xi);
    } else {
        auto sl = eigh(d.left(h).hermitian_part());
        auto sr = eigh(d.right(h).hermitian_part());
        q = schur_q(k2, sl, sr, xi);
    }
    return inner(xi, q).real();
}

cplx monotone_metric(const Kernel& F, const AlgebraElement& rho, const AlgebraElement& sigma,
                     const AlgebraElement& a, const AlgebraElement& b) {
    auto sr = eigh(rho.hermitian_part());
    if (&rho == &sigma) return inner(a, schur_q(F, sr, b));
    auto ss = eigh(sigma.hermitian_part());
    return inner(a, schur_q(F, sr, ss, b));
}

}  // namespace sobolev
