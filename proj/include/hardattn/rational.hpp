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

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hardattn {

/// Exact rational. GMP keeps arithmetic results reduced; build fractions with
/// make_rational, since the two-argument constructor does not reduce.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major

/// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace hardattn
