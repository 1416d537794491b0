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
#include "sobolev/expectation.hpp"
#include "sobolev/generator.hpp"
#include "sobolev/kernel.hpp"
#include "sobolev/scalar_function.hpp"

#include <string>

namespace sobolev {

inline constexpr double kDefaultEpsilon = 1e-8;

struct EntropyValue {
    double value = 0.0;
    double epsilon = 0.0;
    std::string f;
};

// d^f(rho || sigma + eps 1) = tau(f(rho) - f(s) - (rho - s) f'(s)), s = sigma + eps 1.
EntropyValue bregman(const ScalarFunction& f, const AlgebraElement& rho, const AlgebraElement& sigma,
                     double epsilon = 0.0);
// tau(f(rho) - f(E rho)).
EntropyValue entropy_vs_subalgebra(const ScalarFunction& f, const AlgebraElement& rho,
                                   const ConditionalExpectation& e);

// tau(A(rho) f'(rho + eps 1)). Exact when f'(rho) is finite; otherwise
// Richardson-extrapolated from eps and eps/4 (eps = kDefaultEpsilon if 0).
double fisher_generator(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho,
                        double epsilon = 0.0);

/// Derivation delta from a source algebra into a target algebra, together
/// with the left and right embeddings of the source and the involution J on
/// the target with delta(x*) = J(delta(x)).
class Derivation {
 public:
    enum class Kind { Commutator, Difference, Explicit };

    // delta(x) = [v, x]; J(xi) = -xi* when v is Hermitian.
    static Derivation commutator(const AlgebraElement& v);
    // Edge differences of a classical generator, one target site per
    // ordered edge, scaled so that delta^dagger delta = A.
    static Derivation difference(const Generator& a);
    static Derivation explicit_map(AlgebraPtr source, AlgebraPtr target, ElementMap delta,
                                   ElementMap left, ElementMap right, ElementMap involution);

    Kind kind() const { return kind_; }
    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    AlgebraElement operator()(const AlgebraElement& x) const;
    AlgebraElement left(const AlgebraElement& x) const { return left_(x); }
    AlgebraElement right(const AlgebraElement& x) const { return right_(x); }
    AlgebraElement involution(const AlgebraElement& xi) const { return involution_(xi); }

 private:
    Derivation() = default;
    Kind kind_ = Kind::Explicit;
    AlgebraPtr source_, target_;
    ElementMap delta_, left_, right_, involution_;
};

// delta^dagger delta with tau-adjoints, as a dense generator.
Generator generator_from_derivation(const Derivation& d);

// <delta(rho), Q_{f^{[2]}}^{L rho, R rho}(delta(rho))> in the target trace.
double fisher_derivation(const Derivation& d, const ScalarFunction& f, const AlgebraElement& rho);

// gamma^F_{rho,sigma}(a, b) = <a, Q_F^{rho,sigma}(b)>.
cplx monotone_metric(const Kernel& F, const AlgebraElement& rho, const AlgebraElement& sigma,
                     const AlgebraElement& a, const AlgebraElement& b);

}  // namespace sobolev
