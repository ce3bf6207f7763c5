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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "support/test_support.h"

using namespace hexroute;

namespace {

QuantumCircuit circuit_of(size_t n, std::vector<Gate> gates) {
    return QuantumCircuit(n, std::move(gates));
}

/// Gates acting on q, in order.
std::vector<Gate> on_qubit(const std::vector<Gate> &gates, Qubit q) {
    std::vector<Gate> out;
    for (const auto &g : gates) {
        if (std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) {
            out.push_back(g);
        }
    }
    return out;
}

}  // namespace

TEST(gate, validates_arity_and_distinct_qubits) {
    EXPECT_THROW(Gate(GateKind::CNOT, {0, 0}), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::CNOT, {0}), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::RZ, {0}), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::U3, {0}, {1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::H, {0}, {}, 3u), std::invalid_argument);
    EXPECT_THROW(Gate(GateKind::BARRIER, {1, 1}), std::invalid_argument);
    EXPECT_NO_THROW(Gate(GateKind::BARRIER, {0, 1, 2}));
    EXPECT_EQ(Gate::cnot(3, 1).qubits, (std::vector<Qubit>{3, 1}));
}

TEST(circuit, append_range_checks) {
    QuantumCircuit c(2, 1);
    EXPECT_THROW(c.append(Gate::h(2)), std::out_of_range);
    EXPECT_THROW(c.append(Gate::measure(0, 1)), std::out_of_range);
    EXPECT_NO_THROW(c.append(Gate::measure(1, 0)));
    EXPECT_THROW(QuantumCircuit(0), std::invalid_argument);
}

TEST(to_dag, empty_circuit) {
    auto dag = to_dag(QuantumCircuit(3));
    EXPECT_EQ(dag.num_nodes(), 0u);
    EXPECT_TRUE(dag.edges().empty());
}

TEST(to_dag, chain_shares_middle_qubit) {
    auto dag = to_dag(circuit_of(3, {Gate::cnot(0, 1), Gate::cnot(1, 2)}));
    ASSERT_EQ(dag.num_nodes(), 2u);
    ASSERT_EQ(dag.edges().size(), 1u);
    EXPECT_EQ(dag.edges()[0], (DagEdge{0, 1, 1}));
}

TEST(to_dag, independent_gates_have_no_edges) {
    auto dag = to_dag(circuit_of(2, {Gate::h(0), Gate::h(1)}));
    EXPECT_EQ(dag.num_nodes(), 2u);
    EXPECT_TRUE(dag.edges().empty());
}

TEST(to_dag, qubit_edges_form_one_path_per_qubit) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; trial++) {
        auto c = testkit::random_circuit(5, 40, rng, true);
        auto dag = to_dag(c);
        ASSERT_EQ(dag.num_nodes(), c.size());
        for (Qubit q = 0; q < 5; q++) {
            std::vector<size_t> touching;
            for (size_t k = 0; k < c.size(); k++) {
                const auto &qs = c[k].qubits;
                if (std::find(qs.begin(), qs.end(), q) != qs.end()) {
                    touching.push_back(k);
                }
            }
            std::vector<std::pair<size_t, size_t>> labelled;
            for (const auto &e : dag.edges()) {
                if (e.qubit == q) {
                    labelled.emplace_back(e.from, e.to);
                }
            }
            std::sort(labelled.begin(), labelled.end());
            std::vector<std::pair<size_t, size_t>> expected;
            for (size_t k = 1; k < touching.size(); k++) {
                expected.emplace_back(touching[k - 1], touching[k]);
            }
            EXPECT_EQ(labelled, expected);
        }
    }
}

TEST(topological_order, chain_and_position_tie_break) {
    auto chain = circuit_of(3, {Gate::cnot(0, 1), Gate::cnot(1, 2)});
    EXPECT_EQ(topological_order(to_dag(chain)), chain.gates());
    auto free = circuit_of(2, {Gate::h(0), Gate::h(1)});
    EXPECT_EQ(topological_order(to_dag(free)), free.gates());
}

TEST(topological_order, edges_point_forward_and_per_qubit_order_is_kept) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; trial++) {
        auto c = testkit::random_circuit(4, 10 + trial % 20, rng, true);
        auto dag = to_dag(c);
        auto ids = topological_order_ids(dag);
        std::vector<size_t> position(ids.size());
        for (size_t k = 0; k < ids.size(); k++) {
            position[ids[k]] = k;
        }
        for (const auto &e : dag.edges()) {
            EXPECT_LT(position[e.from], position[e.to]);
        }
        auto order = topological_order(dag);
        ASSERT_EQ(order.size(), c.size());
        for (Qubit q = 0; q < 4; q++) {
            EXPECT_EQ(on_qubit(order, q), on_qubit(c.gates(), q));
        }
    }
}

TEST(topological_order, rejects_cycles) {
    DagCircuit cyclic(2, {Gate::cnot(0, 1), Gate::cnot(0, 1)}, {{0, 1, 0}, {1, 0, 1}});
    EXPECT_THROW(topological_order_ids(cyclic), StructuralError);
}

TEST(compute_layers, worked_examples) {
    EXPECT_TRUE(compute_layers(QuantumCircuit(2)).empty());
    auto layers = compute_layers(circuit_of(2, {Gate::cnot(0, 1), Gate::x(0), Gate::cnot(0, 1)}));
    ASSERT_EQ(layers.size(), 3u);
    EXPECT_EQ(layers[0].gates, (std::vector<Gate>{Gate::cnot(0, 1)}));
    EXPECT_EQ(layers[1].gates, (std::vector<Gate>{Gate::x(0)}));
    EXPECT_EQ(layers[2].gates, (std::vector<Gate>{Gate::cnot(0, 1)}));
    EXPECT_EQ(compute_layers(circuit_of(3, {Gate::h(0), Gate::h(1), Gate::h(2)})).size(), 1u);
}

TEST(compute_layers, layers_are_disjoint_and_cover_every_gate) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; trial++) {
        auto c = testkit::random_circuit(6, 50, rng, true);
        auto layers = compute_layers(c);
        size_t total = 0;
        std::vector<Gate> flattened;
        for (const auto &layer : layers) {
            std::set<Qubit> used;
            for (const auto &g : layer.gates) {
                for (Qubit q : g.qubits) {
                    EXPECT_TRUE(used.insert(q).second);
                }
                flattened.push_back(g);
            }
            EXPECT_LE(used.size(), c.num_qubits());
            total += layer.gates.size();
        }
        EXPECT_EQ(total, c.size());
        for (Qubit q = 0; q < 6; q++) {
            EXPECT_EQ(on_qubit(flattened, q), on_qubit(c.gates(), q));
        }
    }
}

TEST(cnot_metrics, worked_examples) {
    EXPECT_EQ(cnot_count(circuit_of(1, {Gate::h(0)})), 0u);
    EXPECT_EQ(cnot_count(circuit_of(2, {Gate::cnot(0, 1), Gate::cnot(1, 0)})), 2u);
    EXPECT_EQ(cnot_depth(circuit_of(2, {Gate::cnot(0, 1), Gate::x(0), Gate::cnot(0, 1)})), 2u);
    EXPECT_EQ(cnot_depth(circuit_of(1, {Gate::h(0)})), 0u);
    EXPECT_EQ(cnot_depth(circuit_of(4, {Gate::cnot(0, 1), Gate::cnot(2, 3)})), 1u);
}

TEST(cnot_metrics, reject_undecomposed_swaps) {
    auto c = circuit_of(2, {Gate::swap(0, 1)});
    EXPECT_THROW(cnot_count(c), UndecomposedSwapError);
    EXPECT_THROW(cnot_depth(c), UndecomposedSwapError);
}

TEST(cnot_metrics, depth_never_exceeds_count_and_count_matches_scan) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; trial++) {
        auto c = testkit::random_circuit(5, 60, rng, false);
        size_t scanned = 0;
        for (const auto &g : c) {
            scanned += g.kind == GateKind::CNOT;
        }
        EXPECT_EQ(cnot_count(c), scanned);
        EXPECT_LE(cnot_depth(c), cnot_count(c));
    }
}

TEST(decompose_swaps, three_cnots) {
    auto out = decompose_swaps(circuit_of(2, {Gate::swap(0, 1)}));
    EXPECT_EQ(out.gates(), (std::vector<Gate>{Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)}));
    EXPECT_TRUE(decompose_swaps(QuantumCircuit(2)).empty());
}

TEST(decompose_swaps, idempotent_and_state_preserving) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 2 + trial % 5;
        auto c = testkit::random_circuit(n, 30, rng, true);
        auto once = decompose_swaps(c);
        EXPECT_EQ(decompose_swaps(once), once);
        auto a = testkit::reference_statevector(c);
        auto b = testkit::reference_statevector(once);
        for (size_t k = 0; k < a.size(); k++) {
            EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-12);
        }
    }
}

TEST(decompose_cz, matches_cz_on_random_states) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; trial++) {
        auto c = testkit::random_circuit(3, 25, rng, false);
        auto a = testkit::reference_statevector(c);
        auto b = testkit::reference_statevector(decompose_cz(c));
        for (size_t k = 0; k < a.size(); k++) {
            EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-12);
        }
    }
}

TEST(strip_non_unitary, drops_measure_and_barrier) {
    QuantumCircuit c(2, 2);
    c.append(Gate::h(0)).append(Gate::barrier({0, 1})).append(Gate::measure(0, 0));
    EXPECT_EQ(strip_non_unitary(c).gates(), (std::vector<Gate>{Gate::h(0)}));
}
