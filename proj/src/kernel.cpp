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

#include "sobolev/kernel.hpp"

#include "sobolev/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace sobolev {

struct Kernel::Node {
    KernelKind kind = KernelKind::Custom;
    std::string name;
    bool symmetric = false;
    double floor = kKernelFloor;
    double c = 0.0;          // constant
    double t = 0.0, s = 0.0; // translation
    int order = 1;
    std::shared_ptr<const ScalarFunction> f;
    std::vector<std::shared_ptr<const Node>> kids;
    Fn2 fn;

    double eval(double x, double y, bool same) const {
        switch (kind) {
            case KernelKind::Constant:
                return c;
            case KernelKind::DiffQuot1:
            case KernelKind::DiffQuot2:
                if (same) return f->eval(order, 0.5 * (x + y));
                return divided_diff(*f, order, x, y);
            case KernelKind::Perspective:
                return (*f)(x / y) * y;
            case KernelKind::Inverse: {
                const double v = kids[0]->eval(x, y, same);
                if (v == 0.0 || !std::isfinite(v))
                    throw DomainError("inverse kernel: base kernel vanishes on the spectrum");
                return 1.0 / v;
            }
            case KernelKind::Product:
                return kids[0]->eval(x, y, same) * kids[1]->eval(x, y, same);
            case KernelKind::Sum:
                return kids[0]->eval(x, y, same) + kids[1]->eval(x, y, same);
            case KernelKind::Translated:
                return kids[0]->eval(x + t, y + s, same && t == s);
            case KernelKind::Custom:
                return fn(x, y);
        }
        return 0.0;
    }
};

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

Kernel Kernel::constant(double c) {
    auto n = std::make_shared<Node>();
    n->kind = KernelKind::Constant;
    n->name = "const(" + fmt(c) + ")";
    n->symmetric = true;
    n->c = c;
    return Kernel(n);
}

Kernel Kernel::diff_quot(const ScalarFunction& f, int order) {
    if (order != 1 && order != 2) throw ContractError("difference quotient order must be 1 or 2");
    auto n = std::make_shared<Node>();
    n->kind = order == 1 ? KernelKind::DiffQuot1 : KernelKind::DiffQuot2;
    n->name = (order == 1 ? "dq1(" : "dq2(") + f.name() + ")";
    n->symmetric = true;
    n->order = order;
    n->f = std::make_shared<const ScalarFunction>(f);
    return Kernel(n);
}

Kernel Kernel::perspective(const ScalarFunction& f) {
    auto n = std::make_shared<Node>();
    n->kind = KernelKind::Perspective;
    n->name = "persp(" + f.name() + ")";
    n->f = std::make_shared<const ScalarFunction>(f);
    return Kernel(n);
}

Kernel Kernel::inverse(const Kernel& k) {
    auto n = std::make_shared<Node>();
    n->kind = KernelKind::Inverse;
    n->name = "inv(" + k.name() + ")";
    n->symmetric = k.symmetric();
    n->floor = k.domain_floor();
    n->kids = {k.node_};
    return Kernel(n);
}

Kernel Kernel::product(const Kernel& a, const Kernel& b) {
    auto n = std::make_shared<Node>();
    n->kind = KernelKind::Product;
    n->name = a.name() + "*" + b.name();
    n->symmetric = a.symmetric() && b.symmetric();
    n->floor = std::max(a.domain_floor(), b.domain_floor());
    n->kids = {a.node_, b.node_};
    return Kernel(n);
}

Kernel Kernel::sum(const Kernel& a, const Kernel& b) {
    auto n = std::make_shared<Node>();
    n->kind = KernelKind::Sum;
    n->name = a.name() + "+" + b.name();
    n->symmetric = a.symmetric() && b.symmetric();
    n->floor = std::max(a.domain_floor(), b.domain_floor());
    n->kids = {a.node_, b.node_};
    return Kernel(n);
}

Kernel Kernel::translated(const Kernel& k, double t, double s) {
    if (t < 0.0 || s < 0.0) throw ContractError("translations must be nonnegative");
    auto n = std::make_shared<Node>();
    n->kind = KernelKind::Translated;
    n->name = "shift(" + k.name() + "," + fmt(t) + "," + fmt(s) + ")";
    n->symmetric = k.symmetric() && t == s;
    n->floor = k.domain_floor();
    n->t = t;
    n->s = s;
    n->kids = {k.node_};
    return Kernel(n);
}

Kernel Kernel::custom(std::string name, Fn2 fn, bool symmetric, double floor) {
    auto n = std::make_shared<Node>();
    n->kind = KernelKind::Custom;
    n->name = std::move(name);
    n->symmetric = symmetric;
    n->floor = floor;
    n->fn = std::move(fn);
    return Kernel(n);
}

double Kernel::eval(double x, double y, bool same_cluster) const {
    const double lo = node_->floor;
    const double v = node_->eval(std::max(x, lo), std::max(y, lo), same_cluster);
    if (!std::isfinite(v)) throw DomainError("kernel " + node_->name + " is singular on the spectrum");
    return v;
}

KernelKind Kernel::kind() const { return node_->kind; }
bool Kernel::symmetric() const { return node_->symmetric; }
double Kernel::domain_floor() const { return node_->floor; }
const std::string& Kernel::name() const { return node_->name; }

Kernel Kernel::with_floor(double floor) const {
    auto n = std::make_shared<Node>(*node_);
    n->floor = floor;
    return Kernel(n);
}

Kernel log_kernel() { return Kernel::diff_quot(ScalarFunction::log(), 1); }

Kernel power_kernel(double p) { return Kernel::diff_quot(ScalarFunction::power(p), 1); }

}  // namespace sobolev
