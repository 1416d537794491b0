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

#include <functional>
#include <string>

namespace sobolev {

enum class FunctionTag { XLogX, Power, Log, Custom };

/// Entropy function f on [0, inf) with its first two derivatives.
///
/// Each derivative order carries a flag saying whether it has a finite value
/// at 0; evaluations at 0 of an order without one raise DomainError.
class ScalarFunction {
 public:
    using Fn = std::function<double(double)>;

    static ScalarFunction xlogx();
    static ScalarFunction power(double p);
    static ScalarFunction log();
    static ScalarFunction custom(std::string name, Fn f, Fn d1, Fn d2, bool convex,
                                 bool f_at_zero = true, bool d1_at_zero = true,
                                 bool d2_at_zero = true);

    double operator()(double x) const { return eval(0, x); }
    double deriv(double x) const { return eval(1, x); }
    double deriv2(double x) const { return eval(2, x); }
    // order in {0, 1, 2}; throws DomainError below the domain or on non-finite values.
    double eval(int order, double x) const;

    bool defined_at_zero(int order) const;
    FunctionTag tag() const { return tag_; }
    double exponent() const { return exponent_; }
    const std::string& name() const { return name_; }
    bool convex() const { return convex_; }

 private:
    ScalarFunction() = default;

    FunctionTag tag_ = FunctionTag::Custom;
    double exponent_ = 0.0;
    std::string name_;
    Fn fns_[3];
    bool at_zero_[3] = {true, true, true};
    bool convex_ = false;
};

/// Divided difference of order 1 or 2. Arguments closer than
/// cluster_tol * (1 + max(|x|, |y|)) use the derivative at the midpoint, which
/// keeps the result exactly symmetric in (x, y).
double divided_diff(const ScalarFunction& f, int order, double x, double y,
                    double cluster_tol = 1e-8);

}  // namespace sobolev
