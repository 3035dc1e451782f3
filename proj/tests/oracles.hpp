// Copyright 2025 The lca-advice Authors
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

// Independent reference implementations used as test oracles. They share
// no code with the library beyond the Graph container.

#pragma once

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "lca/graph.hpp"

namespace oracle {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// All-pairs distances by Floyd-Warshall.
inline std::vector<std::vector<int>> all_pairs(const lca::Graph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (int u : g.neighbors(v)) d[v][u] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}

inline bool proper(const lca::Graph& g, const std::vector<int>& c) {
  for (auto [u, v] : g.edges())
    if (c[u] == c[v]) return false;
  return true;
}

inline int palette(const std::vector<int>& c) {
  std::vector<int> s(c);
  std::sort(s.begin(), s.end());
  return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
}

inline std::string random_bits(std::mt19937_64& rng, int len) {
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back((rng() & 1) ? '1' : '0');
  return s;
}

}  // namespace oracle
