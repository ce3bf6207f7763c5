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

#ifndef HEXROUTE_ROUTING_H
#define HEXROUTE_ROUTING_H

#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hexroute/circuit.h"
#include "hexroute/device.h"
#include "hexroute/placement.h"

namespace hexroute {

struct RoutingParams {
    /// Weight of reliability versus distance in the SWAP score, in [0, 1].
    double alpha = 0.5;
    size_t beam_width = 4;
    size_t search_depth = 4;
    /// Number of upcoming two-qubit gates scored alongside the front layer.
    size_t lookahead = 5;
    /// Consecutive SWAP rounds without a newly compliant front gate before
    /// the oldest front gate is routed greedily along a shortest path.
    size_t stall_limit = 3;
    /// Outer-loop guard; 0 picks a bound from the circuit and device size.
    size_t max_iterations = 0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Device data shared read-only by routing runs: coupling map, calibration,
/// raw and normalized R/D tables, and per-edge SWAP reliabilities.
class RoutingDevice {
   public:
    RoutingDevice(CouplingMap map, CalibrationData calib, const MatrixOptions &options = {});

    const CouplingMap &map() const { return map_; }
    const CalibrationData &calibration() const { return calib_; }
    const DeviceMatrices &matrices() const { return raw_; }
    const NormalizedMatrices &normalized() const { return norm_; }
    size_t num_qubits() const { return map_.num_qubits(); }
    /// SWAP reliability of edge (a, b) as used by the R table.
    double edge_swap_reliability(Qubit a, Qubit b) const { return edge_r_(a, b); }

   private:
    CouplingMap map_;
    CalibrationData calib_;
    DeviceMatrices raw_;
    NormalizedMatrices norm_;
    SquareMatrix<double> edge_r_;
};

/// Two-qubit interaction expressed in virtual qubits: (control, target).
using VirtualPair = std::pair<Qubit, Qubit>;

/// Progress of one routing run over a DAG.
///
/// After compute_front_layer every DAG node is exactly one of: executed,
/// in `front`, or blocked behind a front gate (not executed).
struct RoutingState {
    Mapping mapping;
    std::vector<uint8_t> executed;
    std::vector<uint32_t> unexecuted_predecessors;
    /// Ready nodes; after compute_front_layer these are exactly the
    /// non-compliant two-qubit gates, ascending by node id.
    std::vector<size_t> front;
    /// Unexecuted two-qubit nodes, including front ones, ordered by node id.
    std::set<size_t> pending_two_qubit;
    /// Physical-qubit gates emitted so far, SWAPs not yet decomposed.
    std::vector<Gate> emitted;
    size_t num_executed = 0;

    bool done() const { return num_executed == executed.size(); }
    /// Unexecuted nodes that are not in the front layer, ascending.
    std::vector<size_t> not_executed() const;
};

RoutingState initial_state(const DagCircuit &dag, Mapping mapping);

/// True when `gate` is two-qubit and its mapped qubits are not adjacent.
bool needs_routing(const Gate &gate, const Mapping &mapping, const CouplingMap &map);

/// Emits every ready gate that needs no routing (single-qubit gates,
/// barriers, compliant two-qubit gates) in topological order, and collects the
/// remaining ready gates as the front layer.
void compute_front_layer(RoutingState &state, const DagCircuit &dag, const CouplingMap &map);

/// Virtual (control, target) pairs of the front layer.
std::vector<VirtualPair> front_pairs(const RoutingState &state, const DagCircuit &dag);

/// The first `count` unexecuted, non-front two-qubit gates in topological order.
std::vector<VirtualPair> lookahead_pairs(const RoutingState &state, const DagCircuit &dag, size_t count);

/// Every coupling-map edge touching a physical qubit of a front gate, sorted.
/// Throws std::invalid_argument on an empty front.
std::vector<Edge> candidate_swaps(std::span<const VirtualPair> front, const Mapping &mapping, const CouplingMap &map);

/// h(s): mean over front and lookahead gates g of
///   alpha * Rn[pi_s(g_c)][pi_s(g_t)] + (1 - alpha) * (1 - Dn[pi_s(g_c)][pi_s(g_t)]),
/// where pi_s is `mapping` after swapping the occupants of s. Higher is better.
double score_swap(Edge swap, std::span<const VirtualPair> front, std::span<const VirtualPair> lookahead,
                  const NormalizedMatrices &norm, double alpha, const Mapping &mapping);

/// Beam search over SWAP sequences of length <= search_depth.
///
/// Each level expands the surviving partial sequences by every candidate
/// SWAP (except undoing the previous one) and keeps the `beam_width` best
/// partial sequences. A sequence stops growing at the first SWAP after which
/// a front gate becomes compliant. Sequences are ranked by
///   mean(h over steps) + compliant * (alpha * reliability + (1 - alpha)),
/// where `compliant` counts compliant front gates and `reliability` is the
/// product of the sequence's SWAP reliabilities. Ties go to the shorter
/// sequence, then to the lexicographically smaller list of SWAP edges.
std::vector<Edge> beam_search(const RoutingState &state, const DagCircuit &dag, const RoutingDevice &device,
                              const RoutingParams &params);

/// Raised when routing exceeds its iteration guard.
struct RoutingError : std::logic_error {
    using std::logic_error::logic_error;
};

struct RoutingStats {
    size_t iterations = 0;
    size_t swaps_inserted = 0;
    size_t fallbacks = 0;
    /// Longest run of consecutive SWAP rounds with no newly compliant front gate.
    size_t max_stall = 0;
};

struct RoutingResult {
    /// Circuit over the device's physical qubits. Only single-qubit gates,
    /// barriers, measurements and CNOTs on coupling-map edges remain.
    QuantumCircuit circuit;
    /// Placement of each virtual qubit after the last gate.
    Mapping final_mapping;
    RoutingStats stats;
    /// SWAPs added by the router, in emission order, before decomposition.
    std::vector<Edge> inserted_swaps;
};

RoutingResult route(const QuantumCircuit &circuit, const Mapping &initial_mapping, const RoutingDevice &device,
                    const RoutingParams &params = {});

/// Applies the SWAP sequence to `state.mapping`, emitting one SWAP gate per edge.
void apply_swaps(RoutingState &state, std::span<const Edge> swaps);

}  // namespace hexroute

#endif
