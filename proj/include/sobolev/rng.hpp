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

#include <complex>
#include <cstdint>
#include <random>

namespace sobolev {

std::uint64_t splitmix64(std::uint64_t x);

/// Seedable, splittable pseudo-random source.
///
/// `split(i)` derives an independent child stream from the parent seed only,
/// so the child sequence does not depend on how much of the parent was consumed.
class Rng {
 public:
    explicit Rng(std::uint64_t seed);

    Rng split(std::uint64_t stream) const;
    std::uint64_t seed() const { return seed_; }

    double uniform();
    double normal();
    // Standard complex Gaussian, E|z|^2 = 1.
    std::complex<double> complex_normal();
    std::uint64_t next_u64() { return engine_(); }

 private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace sobolev
