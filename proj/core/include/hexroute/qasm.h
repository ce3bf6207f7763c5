// Copyright 2026 The hexroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEXROUTE_QASM_H
#define HEXROUTE_QASM_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "hexroute/circuit.h"

namespace hexroute {

/// Parse failure with a 1-based source position.
struct QasmError : std::runtime_error {
    size_t line;
    size_t column;
    QasmError(const std::string &message, size_t line, size_t column);
};

/// Parses the supported OpenQASM 2.0 subset.
///
/// Accepted statements: the `OPENQASM 2.0;` header, `include "qelib1.inc";`,
/// one `qreg`, at most one `creg`, gate applications (h x y z s sdg t tdg rx ry
/// rz u3 cx cz swap), `measure a -> b;` and `barrier`. Single-qubit gates,
/// measure and barrier accept a whole register as operand. Parameter
/// expressions support numeric literals, `pi`, `+ - * /`, unary minus and
/// parentheses. Gate definitions, `opaque` and `if` are rejected.
QuantumCircuit parse_qasm(std::string_view text);

/// Emits the circuit with register names `q` and `c`. Angles use 17
/// significant digits so that parsing the output reproduces the circuit.
std::string emit_qasm(const QuantumCircuit &circuit);

}  // namespace hexroute

#endif
