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

#include "hardattn/circuit.hpp"

namespace hardattn::compiler {

/// Brute-force DNF for DYCK-1 over m bits, reading 0 as '[' and 1 as ']'.
circuit::Circuit dyck1_circuit(std::size_t m);

/// From a DYCK-1 circuit on 3n inputs, builds the EQUALITY circuit on n
/// inputs by feeding 0^n x 1^n. Throws InputError when the input count is
/// not a multiple of 3.
circuit::Circuit equality_to_dyck_reduction(const circuit::Circuit& dyck);

}  // namespace hardattn::compiler
