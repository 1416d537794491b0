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

#include "sobolev/scalar_function.hpp"

#include <functional>
#include <memory>
#include <string>

namespace sobolev {

// Spectra are raised to this value before any kernel evaluation.
inline constexpr double kKernelFloor = 1e-12;

enum class KernelKind {
    Constant,
    DiffQuot1,
    DiffQuot2,
    Perspective,
    Inverse,
    Product,
    Sum,
    Translated,
    Custom
};

/// Two-variable kernel F(x, y) on (0, inf)^2.
///
/// Kernels are small immutable expression trees. Difference quotients know
/// when their arguments come from one eigenvalue cluster and switch to the
/// derivative at the midpoint there.
class Kernel {
 public:
    using Fn2 = std::function<double(double, double)>;

    static Kernel constant(double c);
    // f^{[1]} (order 1) or f^{[2]} (order 2).
    static Kernel diff_quot(const ScalarFunction& f, int order);
    // f(x / y) y.
    static Kernel perspective(const ScalarFunction& f);
    static Kernel inverse(const Kernel& k);
    static Kernel product(const Kernel& a, const Kernel& b);
    static Kernel sum(const Kernel& a, const Kernel& b);
    // F(x + t, y + s).
    static Kernel translated(const Kernel& k, double t, double s);
    static Kernel custom(std::string name, Fn2 fn, bool symmetric, double floor = kKernelFloor);

    double operator()(double x, double y) const { return eval(x, y, false); }
    double eval(double x, double y, bool same_cluster) const;

    KernelKind kind() const;
    bool symmetric() const;
    double domain_floor() const;
    const std::string& name() const;
    Kernel with_floor(double floor) const;

    struct Node;

 private:
    explicit Kernel(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// (ln x - ln y) / (x - y).
Kernel log_kernel();
// (x^p - y^p) / (x - y).
Kernel power_kernel(double p);

}  // namespace sobolev
