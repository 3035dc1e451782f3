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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lca/graph.hpp"

namespace lca {

enum class AdviceKind { uniform_fixed, subset_fixed, variable };

const char* to_string(AdviceKind k);

// Per-node bit-strings of ASCII '0'/'1', indexed like the graph's nodes.
struct Advice {
  std::vector<std::string> bits;
  AdviceKind kind = AdviceKind::variable;
  int bound = 0;

  Advice() = default;
  explicit Advice(int n) : bits(n) {}

  int size() const { return static_cast<int>(bits.size()); }
  int holders() const;
  int max_bits() const;
  double mean_bits() const;

  // Throws malformed when the strings do not fit the declared kind/bound.
  void validate() const;
  // Sets kind to the most specific one the strings satisfy and bound to the
  // longest string.
  void infer_kind();
};

double measure_sparsity(const Advice& a);

int ceil_log2(std::uint64_t x);
std::string to_binary(std::uint64_t x, int width);
std::uint64_t from_binary(const std::string& s, std::size_t pos, int width);

using FrameEntry = std::pair<int, std::string>;

// Per entry: index in ceil(log2(k+1)) bits, then w ones and a 0 with
// w = ceil(log2(|L|+1)), then |L| in w bits, then L. Entries ascending by index.
std::string frame_encode(std::vector<FrameEntry> entries, int k);
std::vector<FrameEntry> frame_decode(const std::string& bits, int k);

// Length-prefixed unary framing without an index field, used inside a
// cluster payload: w ones, a 0, |L| in w bits, L.
std::string length_frame(const std::vector<std::string>& parts);
std::vector<std::string> length_unframe(const std::string& bits, std::size_t count);

// 0 -> (gamma+1) ones then 0; 1 -> (gamma+2) ones then 0.
std::string runlength_encode(const std::string& l, int gamma);
std::string runlength_decode(const std::string& l, int gamma);

void write_advice(std::ostream& os, const Graph& g, const Advice& a);
Advice read_advice(std::istream& is, const Graph& g);

}  // namespace lca
