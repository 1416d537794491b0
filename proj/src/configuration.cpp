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

#include "sobolev/configuration.hpp"

#include "sobolev/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace sobolev {

ConfigurationSpace ConfigurationSpace::permutations(int n) {
    if (n < 2 || n > 7) throw ContractError("permutations: n out of range");
    ConfigurationSpace c;
    c.kind_ = Kind::Permutations;
    c.n_ = n;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        c.labels_.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    c.build_moves();
    return c;
}

ConfigurationSpace ConfigurationSpace::subsets(int n, int r) {
    if (n < 2 || r < 1 || r > n - 1) throw ContractError("subsets: parameters out of range");
    ConfigurationSpace c;
    c.kind_ = Kind::Subsets;
    c.n_ = n;
    c.r_ = r;
    // Lexicographic order of sorted site lists.
    std::vector<int> sel(r);
    std::iota(sel.begin(), sel.end(), 0);
    while (true) {
        c.labels_.push_back(sel);
        int i = r - 1;
        while (i >= 0 && sel[i] == n - r + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (int j = i + 1; j < r; ++j) sel[j] = sel[j - 1] + 1;
    }
    c.build_moves();
    return c;
}

int ConfigurationSpace::index_of(const std::vector<int>& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) throw ContractError("unknown configuration");
    return static_cast<int>(it - labels_.begin());
}

std::string ConfigurationSpace::label_string(int idx) const {
    std::string s = kind_ == Kind::Permutations ? "p" : "c";
    for (int v : labels_[idx]) s += std::to_string(v);
    return s;
}

int ConfigurationSpace::value_at(int idx, int i) const {
    const auto& l = labels_[idx];
    if (kind_ == Kind::Permutations) return l[i];
    return std::binary_search(l.begin(), l.end(), i) ? 1 : 0;
}

std::vector<int> ConfigurationSpace::swapped(int idx, int i, int j) const {
    std::vector<int> l = labels_[idx];
    if (kind_ == Kind::Permutations) {
        std::swap(l[i], l[j]);
        return l;
    }
    for (int& v : l) {
        if (v == i)
            v = j;
        else if (v == j)
            v = i;
    }
    std::sort(l.begin(), l.end());
    return l;
}

void ConfigurationSpace::build_moves() {
    moves_.assign(labels_.size(), {});
    for (int idx = 0; idx < size(); ++idx)
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                if (kind_ == Kind::Subsets && value_at(idx, i) == value_at(idx, j)) continue;
                moves_[idx].push_back({i, j, index_of(swapped(idx, i, j))});
            }
}

bool ConfigurationSpace::moves_are_involutions() const {
    for (int idx = 0; idx < size(); ++idx)
        for (const auto& m : moves_[idx]) {
            bool back = false;
            for (const auto& m2 : moves_[m.target])
                if (m2.i == m.i && m2.j == m.j) back = m2.target == idx;
            if (!back || m.target == idx) return false;
        }
    return true;
}

bool ConfigurationSpace::is_connected() const {
    std::vector<char> seen(size(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (const auto& m : moves_[v])
            if (!seen[m.target]) {
                seen[m.target] = 1;
                ++count;
                q.push_back(m.target);
            }
    }
    return count == size();
}

}  // namespace sobolev
