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

#include "sobolev/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace sobolev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options) {
    const int n = static_cast<int>(x0.size());
    NelderMeadResult res;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++res.evaluations;
        const double v = fn(x);
        return std::isfinite(v) ? v : kInf;
    };
    res.x = x0;
    res.value = eval(x0);
    if (n == 0) return res;

    // Gao-Han coefficients, tuned for higher dimensions.
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / n;
    const double gamma = 0.75 - 1.0 / (2.0 * n);
    const double delta = 1.0 - 1.0 / n;

    double scale = options.initial_scale;
    for (int restart = 0; restart <= options.max_restarts && res.iterations < options.max_iters;
         ++restart, scale *= 0.5) {
        res.restarts = restart;
        const double entry_value = res.value;
        std::vector<Eigen::VectorXd> pts(n + 1, res.x);
        std::vector<double> vals(n + 1, res.value);
        for (int i = 0; i < n; ++i) {
            const double h = scale * std::max(1.0, std::abs(res.x(i))) * (res.x(i) < 0 ? -1.0 : 1.0);
            pts[i + 1](i) += h;
            vals[i + 1] = eval(pts[i + 1]);
        }
        std::vector<int> order(n + 1);
        while (res.iterations < options.max_iters) {
            ++res.iterations;
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
            const int best = order[0], worst = order[n], second = order[n - 1];
            const double fb = vals[best], fw = vals[worst];
            if (std::isfinite(fw) && std::abs(fw - fb) <= options.rel_tol * (std::abs(fb) + 1e-300)) break;

            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < n; ++i) centroid += pts[order[i]];
            centroid /= n;

            Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
            const double fr = eval(xr);
            if (fr < fb) {
                Eigen::VectorXd xe = centroid + beta * (xr - centroid);
                const double fe = eval(xe);
                if (fe < fr) {
                    pts[worst] = xe;
                    vals[worst] = fe;
                } else {
                    pts[worst] = xr;
                    vals[worst] = fr;
                }
                continue;
            }
            if (fr < vals[second]) {
                pts[worst] = xr;
                vals[worst] = fr;
                continue;
            }
            const bool outside = fr < fw;
            Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid))
                                         : Eigen::VectorXd(centroid - gamma * (centroid - pts[worst]));
            const double fc = eval(xc);
            if (fc < (outside ? fr : fw)) {
                pts[worst] = xc;
                vals[worst] = fc;
                continue;
            }
            for (int i = 1; i <= n; ++i) {
                const int idx = order[i];
                pts[idx] = pts[best] + delta * (pts[idx] - pts[best]);
                vals[idx] = eval(pts[idx]);
            }
        }
        for (int i = 0; i <= n; ++i)
            if (vals[i] < res.value) {
                res.value = vals[i];
                res.x = pts[i];
            }
        // Stagnation: a restart that no longer improves ends the search.
        if (restart > 0 && !(res.value < entry_value - options.rel_tol * std::abs(entry_value))) break;
    }
    return res;
}

}  // namespace sobolev
