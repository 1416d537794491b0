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

#include "sobolev/scalar_function.hpp"

#include "sobolev/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sobolev {

ScalarFunction ScalarFunction::xlogx() {
    ScalarFunction s;
    s.tag_ = FunctionTag::XLogX;
    s.name_ = "xlogx";
    s.fns_[0] = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
    s.fns_[1] = [](double x) { return std::log(x) + 1.0; };
    s.fns_[2] = [](double x) { return 1.0 / x; };
    s.at_zero_[1] = false;
    s.at_zero_[2] = false;
    s.convex_ = true;
    return s;
}

ScalarFunction ScalarFunction::power(double p) {
    if (!(p > 0.0)) throw ContractError("power exponent must be positive");
    ScalarFunction s;
    s.tag_ = FunctionTag::Power;
    s.exponent_ = p;
    std::ostringstream os;
    os << "power(" << p << ")";
    s.name_ = os.str();
    s.fns_[0] = [p](double x) { return std::pow(x, p); };
    s.fns_[1] = [p](double x) { return p * std::pow(x, p - 1.0); };
    s.fns_[2] = [p](double x) { return p * (p - 1.0) * std::pow(x, p - 2.0); };
    s.at_zero_[1] = p >= 1.0;
    s.at_zero_[2] = p == 1.0 || p >= 2.0;
    s.convex_ = p >= 1.0;
    return s;
}

ScalarFunction ScalarFunction::log() {
    ScalarFunction s;
    s.tag_ = FunctionTag::Log;
    s.name_ = "log";
    s.fns_[0] = [](double x) { return std::log(x); };
    s.fns_[1] = [](double x) { return 1.0 / x; };
    s.fns_[2] = [](double x) { return -1.0 / (x * x); };
    s.at_zero_[0] = s.at_zero_[1] = s.at_zero_[2] = false;
    s.convex_ = false;
    return s;
}

ScalarFunction ScalarFunction::custom(std::string name, Fn f, Fn d1, Fn d2, bool convex,
                                      bool f_at_zero, bool d1_at_zero, bool d2_at_zero) {
    ScalarFunction s;
    s.name_ = std::move(name);
    s.fns_[0] = std::move(f);
    s.fns_[1] = std::move(d1);
    s.fns_[2] = std::move(d2);
    s.at_zero_[0] = f_at_zero;
    s.at_zero_[1] = d1_at_zero;
    s.at_zero_[2] = d2_at_zero;
    s.convex_ = convex;
    return s;
}

bool ScalarFunction::defined_at_zero(int order) const {
    if (order < 0 || order > 2) throw ContractError("derivative order must be 0, 1 or 2");
    return at_zero_[order];
}

double ScalarFunction::eval(int order, double x) const {
    if (order < 0 || order > 2) throw ContractError("derivative order must be 0, 1 or 2");
    if (x < 0.0 || std::isnan(x)) throw DomainError(name_ + ": argument below domain");
    if (x == 0.0 && !at_zero_[order])
        throw DomainError(name_ + ": derivative of order " + std::to_string(order) +
                          " undefined at 0");
    const double v = fns_[order](x);
    if (!std::isfinite(v)) throw DomainError(name_ + ": non-finite value");
    return v;
}

double divided_diff(const ScalarFunction& f, int order, double x, double y, double cluster_tol) {
    if (order != 1 && order != 2) throw ContractError("divided difference order must be 1 or 2");
    const double scale = 1.0 + std::max(std::abs(x), std::abs(y));
    if (std::abs(x - y) <= cluster_tol * scale) return f.eval(order, 0.5 * (x + y));
    return (f.eval(order - 1, x) - f.eval(order - 1, y)) / (x - y);
}

}  // namespace sobolev
