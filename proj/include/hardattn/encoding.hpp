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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hardattn::nf {

/// ⌈log₂(n+1)⌉, the number of bits needed for 1..n.
std::size_t ell(std::size_t n);

/// Big-endian binary of i in exactly ell(n) bits. Requires 1 <= i <= n.
std::string bin(std::size_t i, std::size_t n);

/// Big-endian binary of value in exactly `width` bits (leading zeros).
std::string fixed_width_binary(std::uint64_t value, std::size_t width);

/// Index of a symbol in declaration order, big-endian, the end marker last.
/// Width is ell(|Σ|+1).
class SymbolEncoding {
 public:
  explicit SymbolEncoding(std::vector<char> alphabet);

  std::size_t width() const { return width_; }
  const std::vector<char>& symbols() const { return symbols_; }  // alphabet then '$'

  const std::string& code(char symbol) const;
  char decode(std::string_view bits) const;

  /// Concatenated codes of x (no end marker appended).
  std::string encode_string(std::string_view x) const;

 private:
  std::vector<char> symbols_;
  std::vector<std::string> codes_;
  std::size_t width_;
};

/// Bit widths for normal-form values and ranks at input length n.
struct EncodingLayout {
  std::size_t n = 1;
  std::size_t heads = 1;
  std::size_t symbol_width = 1;

  std::size_t ell_n() const { return ell(n); }
  /// 2ℓ(n) + s
  std::size_t leaf_width() const { return 2 * ell_n() + symbol_width; }
  /// (H+1)^k (2ℓ(n) + s)
  std::size_t value_width(std::size_t k) const;
  /// 2 (H+1)^(k-1) (2ℓ(n) + s), k >= 1
  std::size_t score_width(std::size_t k) const;
};

}  // namespace hardattn::nf
