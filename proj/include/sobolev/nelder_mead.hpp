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

#include <Eigen/Dense>

#include <functional>

namespace sobolev {

struct NelderMeadOptions {
    int max_iters = 2000;
    double rel_tol = 1e-9;
    double initial_scale = 0.5;
    // Shrink-restarts around the incumbent after convergence.
    int max_restarts = 6;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    int restarts = 0;
};

// Minimizes fn with the adaptive-coefficient simplex method. Non-finite
// values are treated as +inf. Restart j rebuilds the simplex around the best
// point with scale initial_scale * 0.5^j.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options = {});

}  // namespace sobolev
