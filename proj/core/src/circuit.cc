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

#include "hexroute/circuit.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace hexroute {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "h";
        case GateKind::X:
            return "x";
        case GateKind::Y:
            return "y";
        case GateKind::Z:
            return "z";
        case GateKind::S:
            return "s";
        case GateKind::Sdg:
            return "sdg";
        case GateKind::T:
            return "t";
        case GateKind::Tdg:
            return "tdg";
        case GateKind::RX:
            return "rx";
        case GateKind::RY:
            return "ry";
        case GateKind::RZ:
            return "rz";
        case GateKind::U3:
            return "u3";
        case GateKind::CNOT:
            return "cx";
        case GateKind::CZ:
            return "cz";
        case GateKind::SWAP:
            return "swap";
        case GateKind::MEASURE:
            return "measure";
        case GateKind::BARRIER:
            return "barrier";
    }
    return "?";
}

size_t gate_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            return 1;
        case GateKind::U3:
            return 3;
        default:
            return 0;
    }
}

size_t gate_qubit_count(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
            return 2;
        case GateKind::BARRIER:
            return 0;
        default:
            return 1;
    }
}

bool is_two_qubit(GateKind kind) {
    return gate_qubit_count(kind) == 2;
}

bool is_diagonal(GateKind kind) {
    switch (kind) {
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::RZ:
        case GateKind::CZ:
            return true;
        default:
            return false;
    }
}

Gate::Gate(GateKind kind, std::vector<Qubit> qubits, std::vector<double> params, std::optional<uint32_t> clbit)
    : kind(kind), params(std::move(params)), qubits(std::move(qubits)), clbit(clbit) {
    size_t want = gate_qubit_count(kind);
    if (want == 0 ? this->qubits.empty() : this->qubits.size() != want) {
        throw std::invalid_argument(
            "gate " + std::string(gate_name(kind)) + " given " + std::to_string(this->qubits.size()) + " qubits");
    }
    if (this->params.size() != gate_param_count(kind)) {
        throw std::invalid_argument(
            "gate " + std::string(gate_name(kind)) + " given " + std::to_string(this->params.size()) + " parameters");
    }
    auto sorted = this->qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("gate " + std::string(gate_name(kind)) + " repeats a qubit");
    }
    if ((kind == GateKind::MEASURE) != clbit.has_value()) {
        throw std::invalid_argument("only MEASURE carries a classical bit");
    }
}

std::string Gate::str() const {
    std::stringstream out;
    out << gate_name(kind);
    if (!params.empty()) {
        out << '(';
        for (size_t k = 0; k < params.size(); k++) {
            out << (k ? "," : "") << params[k];
        }
        out << ')';
    }
    for (size_t k = 0; k < qubits.size(); k++) {
        out << (k ? "," : " ") << qubits[k];
    }
    if (clbit.has_value()) {
        out << " -> " << *clbit;
    }
    return out.str();
}

QuantumCircuit::QuantumCircuit(size_t num_qubits, size_t num_clbits) : num_qubits_(num_qubits), num_clbits_(num_clbits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

QuantumCircuit::QuantumCircuit(size_t num_qubits, std::vector<Gate> gates, size_t num_clbits)
    : QuantumCircuit(num_qubits, num_clbits) {
    gates_.reserve(gates.size());
    for (auto &g : gates) {
        append(std::move(g));
    }
}

QuantumCircuit &QuantumCircuit::append(Gate gate) {
    for (Qubit q : gate.qubits) {
        if (q >= num_qubits_) {
            throw std::out_of_range(
                "qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits_) + "-qubit circuit");
        }
    }
    if (gate.clbit.has_value() && *gate.clbit >= num_clbits_) {
        throw std::out_of_range("classical bit " + std::to_string(*gate.clbit) + " out of range");
    }
    gates_.push_back(std::move(gate));
    return *this;
}

std::string QuantumCircuit::str() const {
    std::stringstream out;
    out << "circuit(" << num_qubits_ << " qubits)";
    for (const auto &g : gates_) {
        out << "\n  " << g.str();
    }
    return out.str();
}

DagCircuit::DagCircuit(size_t num_qubits, std::vector<Gate> nodes, std::vector<DagEdge> edges)
    : num_qubits_(num_qubits),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      preds_(nodes_.size()),
      succs_(nodes_.size()) {
    for (const auto &e : edges_) {
        if (e.from >= nodes_.size() || e.to >= nodes_.size()) {
            throw std::invalid_argument("dag edge references a missing node");
        }
        preds_[e.to].push_back(e.from);
        succs_[e.from].push_back(e.to);
    }
    auto normalize = [](std::vector<size_t> &v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    for (auto &p : preds_) {
        normalize(p);
    }
    for (auto &s : succs_) {
        normalize(s);
    }
}

DagCircuit to_dag(const QuantumCircuit &circuit) {
    constexpr size_t none = SIZE_MAX;
    std::vector<size_t> last_on_qubit(circuit.num_qubits(), none);
    std::vector<DagEdge> edges;
    for (size_t k = 0; k < circuit.size(); k++) {
        for (Qubit q : circuit[k].qubits) {
            if (last_on_qubit[q] != none) {
                edges.push_back({last_on_qubit[q], k, q});
            }
            last_on_qubit[q] = k;
        }
    }
    return DagCircuit(circuit.num_qubits(), circuit.gates(), std::move(edges));
}

std::vector<size_t> topological_order_ids(const DagCircuit &dag) {
    size_t n = dag.num_nodes();
    std::vector<size_t> indegree(n);
    for (size_t k = 0; k < n; k++) {
        indegree[k] = dag.predecessors(k).size();
    }
    std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
    for (size_t k = 0; k < n; k++) {
        if (indegree[k] == 0) {
            ready.push(k);
        }
    }
    std::vector<size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        size_t k = ready.top();
        ready.pop();
        order.push_back(k);
        for (size_t s : dag.successors(k)) {
            if (--indegree[s] == 0) {
                ready.push(s);
            }
        }
    }
    if (order.size() != n) {
        throw StructuralError("dependency graph contains a cycle");
    }
    return order;
}

std::vector<Gate> topological_order(const DagCircuit &dag) {
    std::vector<Gate> out;
    for (size_t id : topological_order_ids(dag)) {
        out.push_back(dag.node(id));
    }
    return out;
}

std::vector<Layer> compute_layers(const QuantumCircuit &circuit) {
    std::vector<size_t> next_free(circuit.num_qubits(), 0);
    std::vector<Layer> layers;
    for (const auto &g : circuit) {
        size_t level = 0;
        for (Qubit q : g.qubits) {
            level = std::max(level, next_free[q]);
        }
        if (level == layers.size()) {
            layers.emplace_back();
        }
        layers[level].gates.push_back(g);
        for (Qubit q : g.qubits) {
            next_free[q] = level + 1;
        }
    }
    return layers;
}

static void require_no_swaps(const QuantumCircuit &circuit) {
    for (const auto &g : circuit) {
        if (g.kind == GateKind::SWAP) {
            throw UndecomposedSwapError("circuit contains SWAP gates; call decompose_swaps first");
        }
    }
}

size_t cnot_count(const QuantumCircuit &circuit) {
    require_no_swaps(circuit);
    return std::count_if(circuit.begin(), circuit.end(), [](const Gate &g) {
        return g.kind == GateKind::CNOT;
    });
}

size_t cnot_depth(const QuantumCircuit &circuit) {
    require_no_swaps(circuit);
    size_t depth = 0;
    for (const auto &layer : compute_layers(circuit)) {
        depth += std::any_of(layer.gates.begin(), layer.gates.end(), [](const Gate &g) {
            return g.kind == GateKind::CNOT;
        });
    }
    return depth;
}

QuantumCircuit decompose_swaps(const QuantumCircuit &circuit) {
    QuantumCircuit out(circuit.num_qubits(), circuit.num_clbits());
    for (const auto &g : circuit) {
        if (g.kind == GateKind::SWAP) {
            Qubit a = g.qubits[0];
            Qubit b = g.qubits[1];
            out.append(Gate::cnot(a, b));
            out.append(Gate::cnot(b, a));
            out.append(Gate::cnot(a, b));
        } else {
            out.append(g);
        }
    }
    return out;
}

QuantumCircuit decompose_cz(const QuantumCircuit &circuit) {
    QuantumCircuit out(circuit.num_qubits(), circuit.num_clbits());
    for (const auto &g : circuit) {
        if (g.kind == GateKind::CZ) {
            out.append(Gate::h(g.qubits[1]));
            out.append(Gate::cnot(g.qubits[0], g.qubits[1]));
            out.append(Gate::h(g.qubits[1]));
        } else {
            out.append(g);
        }
    }
    return out;
}

QuantumCircuit strip_non_unitary(const QuantumCircuit &circuit) {
    QuantumCircuit out(circuit.num_qubits(), circuit.num_clbits());
    for (const auto &g : circuit) {
        if (g.kind != GateKind::MEASURE && g.kind != GateKind::BARRIER) {
            out.append(g);
        }
    }
    return out;
}

}  // namespace hexroute
