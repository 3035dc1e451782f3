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

#include "lca/advice.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "lca/errors.hpp"

namespace lca {

namespace {

Error malformed(const std::string& w) { return Error(ErrorKind::malformed, w); }

bool is_bits(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

}  // namespace

const char* to_string(AdviceKind k) {
  switch (k) {
    case AdviceKind::uniform_fixed: return "uniform-fixed";
    case AdviceKind::subset_fixed: return "subset-fixed";
    case AdviceKind::variable: return "variable";
  }
  return "?";
}

int Advice::holders() const {
  return static_cast<int>(std::count_if(bits.begin(), bits.end(), [](const std::string& s) { return !s.empty(); }));
}

int Advice::max_bits() const {
  std::size_t m = 0;
  for (const auto& s : bits) m = std::max(m, s.size());
  return static_cast<int>(m);
}

double Advice::mean_bits() const {
  if (bits.empty()) return 0.0;
  double t = 0;
  for (const auto& s : bits) t += static_cast<double>(s.size());
  return t / static_cast<double>(bits.size());
}

void Advice::validate() const {
  for (const auto& s : bits)
    if (!is_bits(s)) throw malformed("advice strings must be 0/1");
  switch (kind) {
    case AdviceKind::uniform_fixed:
      for (const auto& s : bits)
        if (static_cast<int>(s.size()) != bound) throw malformed("uniform-fixed advice with a string of the wrong length");
      break;
    case AdviceKind::subset_fixed:
      for (const auto& s : bits)
        if (!s.empty() && static_cast<int>(s.size()) != bound)
          throw malformed("subset-fixed advice with a string of the wrong length");
      break;
    case AdviceKind::variable:
      for (const auto& s : bits)
        if (static_cast<int>(s.size()) > bound) throw malformed("variable advice exceeds its bound");
      break;
  }
}

void Advice::infer_kind() {
  bound = max_bits();
  bool uniform = std::all_of(bits.begin(), bits.end(), [&](const std::string& s) { return static_cast<int>(s.size()) == bound; });
  bool subset = std::all_of(bits.begin(), bits.end(),
                            [&](const std::string& s) { return s.empty() || static_cast<int>(s.size()) == bound; });
  kind = uniform ? AdviceKind::uniform_fixed : subset ? AdviceKind::subset_fixed : AdviceKind::variable;
}

double measure_sparsity(const Advice& a) {
  if (a.kind != AdviceKind::uniform_fixed || a.bound != 1)
    throw Error(ErrorKind::wrong_kind, "sparsity is defined for uniform-fixed 1-bit advice");
  a.validate();
  if (a.bits.empty()) return 0.0;
  long ones = std::count_if(a.bits.begin(), a.bits.end(), [](const std::string& s) { return s == "1"; });
  return static_cast<double>(ones) / static_cast<double>(a.bits.size());
}

int ceil_log2(std::uint64_t x) {
  int w = 0;
  while (w < 64 && (std::uint64_t{1} << w) < x) ++w;
  return w;
}

std::string to_binary(std::uint64_t x, int width) {
  std::string s(width, '0');
  for (int i = width - 1; i >= 0; --i, x >>= 1) s[i] = (x & 1) ? '1' : '0';
  if (x != 0) throw Error(ErrorKind::invalid_params, "value does not fit the field width");
  return s;
}

std::uint64_t from_binary(const std::string& s, std::size_t pos, int width) {
  if (pos + width > s.size()) throw malformed("truncated binary field");
  std::uint64_t x = 0;
  for (int i = 0; i < width; ++i) x = (x << 1) | (s[pos + i] == '1' ? 1u : 0u);
  return x;
}

namespace {

void append_length_frame(std::string& out, const std::string& l) {
  const int w = ceil_log2(l.size() + 1);
  out.append(w, '1');
  out.push_back('0');
  out += to_binary(l.size(), w);
  out += l;
}

std::string read_length_frame(const std::string& bits, std::size_t& pos) {
  int w = 0;
  while (pos < bits.size() && bits[pos] == '1') {
    ++w;
    ++pos;
  }
  if (pos >= bits.size()) throw malformed("truncated length field");
  ++pos;
  if (w > 40) throw malformed("length field too wide");
  const std::uint64_t len = from_binary(bits, pos, w);
  pos += w;
  if (len == 0 || pos + len > bits.size()) throw malformed("truncated payload");
  std::string l = bits.substr(pos, len);
  pos += len;
  return l;
}

}  // namespace

std::string frame_encode(std::vector<FrameEntry> entries, int k) {
  if (k < 1) throw Error(ErrorKind::invalid_params, "frame needs k >= 1");
  std::sort(entries.begin(), entries.end(), [](const FrameEntry& a, const FrameEntry& b) { return a.first < b.first; });
  const int iw = ceil_log2(static_cast<std::uint64_t>(k) + 1);
  std::string out;
  int prev = 0;
  for (const auto& [i, l] : entries) {
    if (i < 1 || i > k) throw Error(ErrorKind::invalid_params, "frame index out of range");
    if (i == prev) throw Error(ErrorKind::invalid_params, "duplicate frame index");
    if (l.empty() || !is_bits(l)) throw Error(ErrorKind::invalid_params, "frame entries must be nonempty bit-strings");
    prev = i;
    out += to_binary(i, iw);
    append_length_frame(out, l);
  }
  return out;
}

std::vector<FrameEntry> frame_decode(const std::string& bits, int k) {
  if (k < 1) throw Error(ErrorKind::invalid_params, "frame needs k >= 1");
  const int iw = ceil_log2(static_cast<std::uint64_t>(k) + 1);
  std::vector<FrameEntry> out;
  std::size_t pos = 0;
  int prev = 0;
  while (pos < bits.size()) {
    const auto i = static_cast<int>(from_binary(bits, pos, iw));
    pos += iw;
    if (i < 1 || i > k) throw malformed("frame index out of range");
    if (i <= prev) throw malformed("frame indices not ascending");
    prev = i;
    out.emplace_back(i, read_length_frame(bits, pos));
  }
  return out;
}

std::string length_frame(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) throw Error(ErrorKind::invalid_params, "length frames need nonempty parts");
    append_length_frame(out, p);
  }
  return out;
}

std::vector<std::string> length_unframe(const std::string& bits, std::size_t count) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (out.size() < count) out.push_back(read_length_frame(bits, pos));
  if (pos != bits.size()) throw malformed("trailing bits after length frames");
  return out;
}

std::string runlength_encode(const std::string& l, int gamma) {
  if (gamma < 2) throw Error(ErrorKind::invalid_params, "run-length codec needs gamma >= 2");
  std::string out;
  out.reserve(l.size() * (gamma + 3));
  for (char c : l) {
    if (c != '0' && c != '1') throw Error(ErrorKind::invalid_params, "not a bit-string");
    out.append(gamma + (c == '1' ? 2 : 1), '1');
    out.push_back('0');
  }
  return out;
}

std::string runlength_decode(const std::string& l, int gamma) {
  if (gamma < 2) throw Error(ErrorKind::invalid_params, "run-length codec needs gamma >= 2");
  std::string out;
  int run = 0;
  for (char c : l) {
    if (c == '1') {
      ++run;
    } else if (c == '0') {
      if (run == gamma + 1) {
        out.push_back('0');
      } else if (run == gamma + 2) {
        out.push_back('1');
      } else {
        throw malformed("run of " + std::to_string(run) + " ones");
      }
      run = 0;
    } else {
      throw malformed("not a bit-string");
    }
  }
  if (run != 0) throw malformed("unterminated run");
  return out;
}

void write_advice(std::ostream& os, const Graph& g, const Advice& a) {
  for (int v : g.by_id()) os << g.id(v) << ' ' << a.bits[v] << '\n';
}

Advice read_advice(std::istream& is, const Graph& g) {
  Advice a(g.size());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    NodeId id;
    std::string b;
    if (!(ls >> id)) throw malformed("advice line '" + line + "'");
    ls >> b;
    if (!is_bits(b)) throw malformed("advice bits must be 0/1");
    a.bits[g.index_of(id)] = b;
  }
  a.infer_kind();
  return a;
}

}  // namespace lca
