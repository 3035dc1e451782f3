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

#include <stdexcept>
#include <string>

namespace lca {

enum class ErrorKind {
  invalid_params,
  unknown_node,
  palette_exceeded,
  constants_infeasible,
  malformed,
  wrong_kind,
  encode_failed,
  decode_failed,
  search_exhausted,
  io,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when a desk-scale constant fails one of the inequalities a schema
// relies on. `inequality` names the failing check.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string inequality, const std::string& detail)
      : Error(ErrorKind::constants_infeasible, inequality + " (" + detail + ")"),
        inequality_(std::move(inequality)) {}

  const std::string& inequality() const { return inequality_; }

 private:
  std::string inequality_;
};

}  // namespace lca
