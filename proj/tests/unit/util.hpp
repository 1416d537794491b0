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
#include "sobolev/errors.hpp"

#include <doctest.h>

namespace testutil {

inline sobolev::Matrix diag(std::initializer_list<double> v) {
    sobolev::Matrix m = sobolev::Matrix::Zero(v.size(), v.size());
    int i = 0;
    for (double x : v) m(i, i) = x, ++i;
    return m;
}

inline sobolev::AlgebraElement single(const sobolev::Matrix& m) {
    return sobolev::AlgebraElement(sobolev::matrix_algebra(static_cast<int>(m.rows())), {m});
}

inline double dist(const sobolev::AlgebraElement& a, const sobolev::AlgebraElement& b) { return (a - b).norm(); }

}  // namespace testutil
