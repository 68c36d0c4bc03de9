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

#include <string>
#include <string_view>

#include "hardattn/circuit.hpp"

namespace hardattn::circuit {

/// Line-oriented text form:
///
///   CIRCUIT <name> INPUTS <n> OUTPUTS <m>
///   g1 CONST0
///   g2 AND x1 x2
///   ...
///   OUTPUTS g2
///
/// `#` starts a comment that runs to end of line.
std::string write_netlist(const Circuit& c);

/// Parses the text form. Syntax errors throw NetlistError with the line
/// number and offending token.
Circuit read_netlist(std::string_view text);

}  // namespace hardattn::circuit
