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

#include <string>
#include <vector>

namespace sobolev {

/// Configurations of the random transposition and Bernoulli-Laplace chains.
///
/// Permutations are stored in one-line notation over {0, ..., n-1} and
/// enumerated lexicographically; subsets are sorted occupied-site lists in
/// lexicographic order.
class ConfigurationSpace {
 public:
    enum class Kind { Permutations, Subsets };

    struct Move {
        int i = 0;
        int j = 0;
        int target = 0;
    };

    static ConfigurationSpace permutations(int n);
    static ConfigurationSpace subsets(int n, int r);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    int r() const { return r_; }
    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<int>& label(int idx) const { return labels_[idx]; }
    int index_of(const std::vector<int>& label) const;
    std::string label_string(int idx) const;

    // Value at position i: sigma_i for permutations, occupancy (0/1) for subsets.
    int value_at(int idx, int i) const;

    // Moves i < j with a nontrivial effect, per configuration.
    const std::vector<Move>& moves(int idx) const { return moves_[idx]; }

    bool moves_are_involutions() const;
    bool is_connected() const;

 private:
    ConfigurationSpace() = default;
    void build_moves();
    std::vector<int> swapped(int idx, int i, int j) const;

    Kind kind_ = Kind::Permutations;
    int n_ = 0;
    int r_ = 0;
    std::vector<std::vector<int>> labels_;
    std::vector<std::vector<Move>> moves_;
};

}  // namespace sobolev
