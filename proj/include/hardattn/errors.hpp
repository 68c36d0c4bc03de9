// Copyright 2026 The hardattn Authors.
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

namespace hardattn {

/// Caller passed something outside an operation's domain (bad symbol,
/// length mismatch, duplicate truth-table row, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model function failed on a reachable value. The message carries the
/// layer/position context.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (enumeration count, table size, wire count) was
/// exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed netlist text.
class NetlistError : public std::runtime_error {
 public:
  NetlistError(std::size_t line, const std::string& token, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what + " near '" + token + "'"),
        line_(line),
        token_(token) {}

  std::size_t line() const { return line_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_;
  std::string token_;
};

}  // namespace hardattn
