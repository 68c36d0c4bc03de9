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

#include "hardattn/encoding.hpp"

#include <algorithm>

#include "hardattn/errors.hpp"
#include "hardattn/guhat.hpp"

namespace hardattn::nf {

std::size_t ell(std::size_t n) {
  std::size_t bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < static_cast<std::uint64_t>(n) + 1) ++bits;
  return bits;
}

std::string fixed_width_binary(std::uint64_t value, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t b = 0; b < width && b < 64; ++b) {
    if ((value >> b) & 1U) out[width - 1 - b] = '1';
  }
  if (width < 64 && (value >> width) != 0) {
    throw InputError(std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
  }
  return out;
}

std::string bin(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) throw InputError("bin: " + std::to_string(i) + " is outside [1.." + std::to_string(n) + "]");
  return fixed_width_binary(i, ell(n));
}

SymbolEncoding::SymbolEncoding(std::vector<char> alphabet) : symbols_(std::move(alphabet)) {
  if (symbols_.empty()) throw InputError("symbol encoding needs a nonempty alphabet");
  if (std::find(symbols_.begin(), symbols_.end(), guhat::kEndMarker) != symbols_.end()) {
    throw InputError("alphabet may not contain the end marker");
  }
  symbols_.push_back(guhat::kEndMarker);
  width_ = ell(symbols_.size());
  for (std::size_t idx = 0; idx < symbols_.size(); ++idx) codes_.push_back(fixed_width_binary(idx, width_));
}

const std::string& SymbolEncoding::code(char symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) throw InputError(std::string("symbol '") + symbol + "' has no encoding");
  return codes_[static_cast<std::size_t>(it - symbols_.begin())];
}

char SymbolEncoding::decode(std::string_view bits) const {
  auto it = std::find(codes_.begin(), codes_.end(), bits);
  if (it == codes_.end()) throw InputError("'" + std::string(bits) + "' is not a symbol code");
  return symbols_[static_cast<std::size_t>(it - codes_.begin())];
}

std::string SymbolEncoding::encode_string(std::string_view x) const {
  std::string out;
  out.reserve(x.size() * width_);
  for (char c : x) {
    if (c == guhat::kEndMarker) throw InputError("encode_string: the end marker is hard-wired, not an input");
    out += code(c);
  }
  return out;
}

std::size_t EncodingLayout::value_width(std::size_t k) const {
  std::size_t w = leaf_width();
  for (std::size_t l = 0; l < k; ++l) w *= heads + 1;
  return w;
}

std::size_t EncodingLayout::score_width(std::size_t k) const {
  if (k == 0) throw InputError("attention scores exist only for layers k >= 1");
  return 2 * value_width(k - 1);
}

}  // namespace hardattn::nf
