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

#ifndef HEXROUTE_CIRCUIT_H
#define HEXROUTE_CIRCUIT_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hexroute {

using Qubit = uint32_t;

enum class GateKind : uint8_t {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    RX,
    RY,
    RZ,
    U3,
    CNOT,
    CZ,
    SWAP,
    MEASURE,
    BARRIER,
};

/// Lower-case OpenQASM 2 mnemonic ("cx" for CNOT).
std::string_view gate_name(GateKind kind);
/// Number of angle parameters the kind carries (0, 1 or 3).
size_t gate_param_count(GateKind kind);
/// Number of qubits the kind acts on, or 0 for BARRIER (any positive count).
size_t gate_qubit_count(GateKind kind);
bool is_two_qubit(GateKind kind);
/// True for gates that are diagonal in the computational basis.
bool is_diagonal(GateKind kind);

/// A single circuit instruction.
///
/// For CNOT the qubit order is [control, target]. MEASURE carries the classical
/// bit it writes to. BARRIER may span any number of distinct qubits.
struct Gate {
    GateKind kind;
    std::vector<double> params;
    std::vector<Qubit> qubits;
    std::optional<uint32_t> clbit;

    /// Validates qubit distinctness and parameter arity; throws std::invalid_argument.
    Gate(GateKind kind, std::vector<Qubit> qubits, std::vector<double> params = {}, std::optional<uint32_t> clbit = {});

    static Gate h(Qubit q) { return Gate(GateKind::H, {q}); }
    static Gate x(Qubit q) { return Gate(GateKind::X, {q}); }
    static Gate y(Qubit q) { return Gate(GateKind::Y, {q}); }
    static Gate z(Qubit q) { return Gate(GateKind::Z, {q}); }
    static Gate s(Qubit q) { return Gate(GateKind::S, {q}); }
    static Gate sdg(Qubit q) { return Gate(GateKind::Sdg, {q}); }
    static Gate t(Qubit q) { return Gate(GateKind::T, {q}); }
    static Gate tdg(Qubit q) { return Gate(GateKind::Tdg, {q}); }
    static Gate rx(double theta, Qubit q) { return Gate(GateKind::RX, {q}, {theta}); }
    static Gate ry(double theta, Qubit q) { return Gate(GateKind::RY, {q}, {theta}); }
    static Gate rz(double theta, Qubit q) { return Gate(GateKind::RZ, {q}, {theta}); }
    static Gate u3(double theta, double phi, double lambda, Qubit q) {
        return Gate(GateKind::U3, {q}, {theta, phi, lambda});
    }
    static Gate cnot(Qubit control, Qubit target) { return Gate(GateKind::CNOT, {control, target}); }
    static Gate cz(Qubit a, Qubit b) { return Gate(GateKind::CZ, {a, b}); }
    static Gate swap(Qubit a, Qubit b) { return Gate(GateKind::SWAP, {a, b}); }
    static Gate measure(Qubit q, uint32_t clbit) { return Gate(GateKind::MEASURE, {q}, {}, clbit); }
    static Gate barrier(std::vector<Qubit> qubits) { return Gate(GateKind::BARRIER, std::move(qubits)); }

    bool operator==(const Gate &other) const = default;
    std::string str() const;
};

/// Ordered gate list over a fixed qubit register.
class QuantumCircuit {
   public:
    explicit QuantumCircuit(size_t num_qubits, size_t num_clbits = 0);
    QuantumCircuit(size_t num_qubits, std::vector<Gate> gates, size_t num_clbits = 0);

    /// Appends a gate after range-checking its qubits (and clbit, for MEASURE).
    QuantumCircuit &append(Gate gate);

    size_t num_qubits() const { return num_qubits_; }
    size_t num_clbits() const { return num_clbits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    const Gate &operator[](size_t k) const { return gates_[k]; }
    auto begin() const { return gates_.begin(); }
    auto end() const { return gates_.end(); }

    bool operator==(const QuantumCircuit &other) const = default;
    std::string str() const;

   private:
    size_t num_qubits_;
    size_t num_clbits_;
    std::vector<Gate> gates_;
};

/// Dependency edge between two gates through a shared qubit.
struct DagEdge {
    size_t from;
    size_t to;
    Qubit qubit;
    bool operator==(const DagEdge &other) const = default;
};

/// Directed acyclic dependency graph of a circuit. Node ids are gate positions
/// in the source circuit.
class DagCircuit {
   public:
    DagCircuit(size_t num_qubits, std::vector<Gate> nodes, std::vector<DagEdge> edges);

    size_t num_qubits() const { return num_qubits_; }
    size_t num_nodes() const { return nodes_.size(); }
    const std::vector<Gate> &nodes() const { return nodes_; }
    const Gate &node(size_t id) const { return nodes_[id]; }
    const std::vector<DagEdge> &edges() const { return edges_; }
    /// Distinct predecessor node ids of `id`, ascending.
    const std::vector<size_t> &predecessors(size_t id) const { return preds_[id]; }
    /// Distinct successor node ids of `id`, ascending.
    const std::vector<size_t> &successors(size_t id) const { return succs_[id]; }

   private:
    size_t num_qubits_;
    std::vector<Gate> nodes_;
    std::vector<DagEdge> edges_;
    std::vector<std::vector<size_t>> preds_;
    std::vector<std::vector<size_t>> succs_;
};

/// Thrown when a DAG contains a cycle.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by CNOT metrics when the circuit still contains SWAP gates.
struct UndecomposedSwapError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A set of gates whose qubit sets are pairwise disjoint.
struct Layer {
    std::vector<Gate> gates;
};

DagCircuit to_dag(const QuantumCircuit &circuit);

/// Node ids in a topological order; ties go to the lower circuit position.
std::vector<size_t> topological_order_ids(const DagCircuit &dag);
std::vector<Gate> topological_order(const DagCircuit &dag);

/// Greedy as-soon-as-possible layering. Barriers occupy a layer slot on all
/// their qubits, which fences later gates.
std::vector<Layer> compute_layers(const QuantumCircuit &circuit);

size_t cnot_count(const QuantumCircuit &circuit);
size_t cnot_depth(const QuantumCircuit &circuit);

/// Replaces SWAP(a,b) with CNOT(a,b) CNOT(b,a) CNOT(a,b).
QuantumCircuit decompose_swaps(const QuantumCircuit &circuit);

/// Replaces CZ(a,b) with H(b) CNOT(a,b) H(b).
QuantumCircuit decompose_cz(const QuantumCircuit &circuit);

/// Returns a copy without MEASURE and BARRIER instructions.
QuantumCircuit strip_non_unitary(const QuantumCircuit &circuit);

}  // namespace hexroute

#endif
