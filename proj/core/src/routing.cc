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

#include "hexroute/routing.h"

#include <algorithm>
#include <functional>
#include <queue>

namespace hexroute {

void RoutingParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    if (beam_width == 0) {
        throw std::invalid_argument("beam_width must be at least 1");
    }
    if (search_depth == 0) {
        throw std::invalid_argument("search_depth must be at least 1");
    }
    if (stall_limit == 0) {
        throw std::invalid_argument("stall_limit must be at least 1");
    }
}

RoutingDevice::RoutingDevice(CouplingMap map, CalibrationData calib, const MatrixOptions &options)
    : map_(std::move(map)), calib_(std::move(calib)) {
    validate_calibration(calib_, map_);
    raw_ = build_matrices(map_, calib_, options);
    norm_ = normalize_for_scoring(raw_.reliability, raw_.distance);
    edge_r_ = SquareMatrix<double>(map_.num_qubits(), 0.0);
    for (const auto &e : map_.edges()) {
        double r = swap_reliability(calib_, e);
        if (options.include_readout) {
            r *= calib_.readout_fidelity[e.a] * calib_.readout_fidelity[e.b];
        }
        edge_r_(e.a, e.b) = edge_r_(e.b, e.a) = r;
    }
}

std::vector<size_t> RoutingState::not_executed() const {
    std::vector<size_t> out;
    size_t f = 0;
    for (size_t id = 0; id < executed.size(); id++) {
        while (f < front.size() && front[f] < id) {
            f++;
        }
        bool in_front = f < front.size() && front[f] == id;
        if (!executed[id] && !in_front) {
            out.push_back(id);
        }
    }
    return out;
}

RoutingState initial_state(const DagCircuit &dag, Mapping mapping) {
    RoutingState state{std::move(mapping), {}, {}, {}, {}, {}, 0};
    const size_t n = dag.num_nodes();
    state.executed.assign(n, 0);
    state.unexecuted_predecessors.resize(n);
    for (size_t id = 0; id < n; id++) {
        state.unexecuted_predecessors[id] = static_cast<uint32_t>(dag.predecessors(id).size());
        if (dag.predecessors(id).empty()) {
            state.front.push_back(id);
        }
        if (is_two_qubit(dag.node(id).kind)) {
            state.pending_two_qubit.insert(state.pending_two_qubit.end(), id);
        }
    }
    return state;
}

bool needs_routing(const Gate &gate, const Mapping &mapping, const CouplingMap &map) {
    if (!is_two_qubit(gate.kind)) {
        return false;
    }
    return !map.adjacent(mapping.physical(gate.qubits[0]), mapping.physical(gate.qubits[1]));
}

static Gate remap(const Gate &gate, const Mapping &mapping) {
    Gate out = gate;
    for (auto &q : out.qubits) {
        q = mapping.physical(q);
    }
    return out;
}

void compute_front_layer(RoutingState &state, const DagCircuit &dag, const CouplingMap &map) {
    std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready(std::greater<>{}, std::move(state.front));
    state.front.clear();
    while (!ready.empty()) {
        size_t id = ready.top();
        ready.pop();
        const Gate &g = dag.node(id);
        if (needs_routing(g, state.mapping, map)) {
            state.front.push_back(id);
            continue;
        }
        state.emitted.push_back(remap(g, state.mapping));
        state.executed[id] = 1;
        state.num_executed++;
        if (is_two_qubit(g.kind)) {
            state.pending_two_qubit.erase(id);
        }
        for (size_t s : dag.successors(id)) {
            if (--state.unexecuted_predecessors[s] == 0) {
                ready.push(s);
            }
        }
    }
    std::sort(state.front.begin(), state.front.end());
}

static VirtualPair pair_of(const Gate &g) {
    return {g.qubits[0], g.qubits[1]};
}

std::vector<VirtualPair> front_pairs(const RoutingState &state, const DagCircuit &dag) {
    std::vector<VirtualPair> out;
    out.reserve(state.front.size());
    for (size_t id : state.front) {
        out.push_back(pair_of(dag.node(id)));
    }
    return out;
}

std::vector<VirtualPair> lookahead_pairs(const RoutingState &state, const DagCircuit &dag, size_t count) {
    std::vector<VirtualPair> out;
    for (auto it = state.pending_two_qubit.begin(); it != state.pending_two_qubit.end() && out.size() < count; ++it) {
        if (!std::binary_search(state.front.begin(), state.front.end(), *it)) {
            out.push_back(pair_of(dag.node(*it)));
        }
    }
    return out;
}

std::vector<Edge> candidate_swaps(std::span<const VirtualPair> front, const Mapping &mapping, const CouplingMap &map) {
    if (front.empty()) {
        throw std::invalid_argument("candidate_swaps: front layer is empty");
    }
    std::vector<Edge> out;
    for (const auto &[c, t] : front) {
        for (Qubit p : {mapping.physical(c), mapping.physical(t)}) {
            for (Qubit m : map.neighbors(p)) {
                out.emplace_back(p, m);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

/// Physical location of a virtual qubit after exchanging the occupants of `swap`.
struct SwappedView {
    const Mapping &mapping;
    Edge swap;
    Qubit operator()(Qubit v) const {
        Qubit p = mapping.physical(v);
        if (p == swap.a) {
            return swap.b;
        }
        if (p == swap.b) {
            return swap.a;
        }
        return p;
    }
};

}  // namespace

double score_swap(Edge swap, std::span<const VirtualPair> front, std::span<const VirtualPair> lookahead,
                  const NormalizedMatrices &norm, double alpha, const Mapping &mapping) {
    size_t count = front.size() + lookahead.size();
    if (count == 0) {
        return 0.0;
    }
    SwappedView pi{mapping, swap};
    double reliability = 0.0;
    double closeness = 0.0;
    for (auto gates : {front, lookahead}) {
        for (const auto &[c, t] : gates) {
            Qubit pc = pi(c);
            Qubit pt = pi(t);
            reliability += norm.reliability(pc, pt);
            closeness += 1.0 - norm.distance(pc, pt);
        }
    }
    return (alpha * reliability + (1.0 - alpha) * closeness) / static_cast<double>(count);
}

namespace {

struct BeamNode {
    Mapping mapping;
    std::vector<Edge> swaps;
    double h_sum = 0.0;
    double reliability = 1.0;
    size_t compliant = 0;
    double rank = 0.0;
};

/// Candidate extension of a beam node, materialized only if it survives.
struct Expansion {
    size_t parent;
    Edge swap;
    double h_sum;
    double reliability;
    size_t compliant;
    double rank;
    const std::vector<Edge> *parent_swaps;
};

template <typename A, typename B>
bool ranks_before(const A &a, const std::vector<Edge> &a_swaps, const B &b, const std::vector<Edge> &b_swaps) {
    if (a.rank != b.rank) {
        return a.rank > b.rank;
    }
    if (a_swaps.size() != b_swaps.size()) {
        return a_swaps.size() < b_swaps.size();
    }
    return a_swaps < b_swaps;
}

bool expansion_before(const Expansion &a, const Expansion &b) {
    if (a.rank != b.rank) {
        return a.rank > b.rank;
    }
    // Same depth: compare parent prefix, then the new SWAP.
    if (*a.parent_swaps != *b.parent_swaps) {
        return *a.parent_swaps < *b.parent_swaps;
    }
    return a.swap < b.swap;
}

}  // namespace

std::vector<Edge> beam_search(const RoutingState &state, const DagCircuit &dag, const RoutingDevice &device,
                              const RoutingParams &params) {
    const auto front = front_pairs(state, dag);
    const auto upcoming = lookahead_pairs(state, dag, params.lookahead);
    if (front.empty()) {
        throw std::invalid_argument("beam_search: front layer is empty");
    }
    const auto &map = device.map();
    const double alpha = params.alpha;

    std::vector<BeamNode> beam{BeamNode{state.mapping, {}, 0.0, 1.0, 0, 0.0}};
    std::vector<BeamNode> finished;
    std::vector<BeamNode> partial;

    for (size_t depth = 1; depth <= params.search_depth && !beam.empty(); depth++) {
        std::vector<Expansion> terminal;
        std::vector<Expansion> open;
        for (size_t b = 0; b < beam.size(); b++) {
            const BeamNode &node = beam[b];
            for (const Edge &s : candidate_swaps(front, node.mapping, map)) {
                if (!node.swaps.empty() && node.swaps.back() == s) {
                    continue;
                }
                double h = score_swap(s, front, upcoming, device.normalized(), alpha, node.mapping);
                SwappedView pi{node.mapping, s};
                size_t compliant = 0;
                for (const auto &[c, t] : front) {
                    compliant += map.adjacent(pi(c), pi(t));
                }
                double reliability = node.reliability * device.edge_swap_reliability(s.a, s.b);
                double h_sum = node.h_sum + h;
                double rank = h_sum / static_cast<double>(depth) +
                              static_cast<double>(compliant) * (alpha * reliability + (1.0 - alpha));
                Expansion e{b, s, h_sum, reliability, compliant, rank, &node.swaps};
                (compliant > 0 ? terminal : open).push_back(e);
            }
        }
        auto materialize = [&](const Expansion &e) {
            BeamNode child{beam[e.parent].mapping, beam[e.parent].swaps, e.h_sum, e.reliability, e.compliant, e.rank};
            child.mapping.swap_physical(e.swap.a, e.swap.b);
            child.swaps.push_back(e.swap);
            return child;
        };
        for (const auto &e : terminal) {
            finished.push_back(materialize(e));
        }
        size_t keep = std::min(params.beam_width, open.size());
        std::partial_sort(open.begin(), open.begin() + keep, open.end(), expansion_before);
        std::vector<BeamNode> next;
        next.reserve(keep);
        for (size_t k = 0; k < keep; k++) {
            next.push_back(materialize(open[k]));
        }
        beam = std::move(next);
        partial.insert(partial.end(), beam.begin(), beam.end());
    }

    const auto &pool = finished.empty() ? partial : finished;
    if (pool.empty()) {
        return {};
    }
    const BeamNode *best = &pool.front();
    for (const auto &node : pool) {
        if (ranks_before(node, node.swaps, *best, best->swaps)) {
            best = &node;
        }
    }
    return best->swaps;
}

void apply_swaps(RoutingState &state, std::span<const Edge> swaps) {
    for (const auto &s : swaps) {
        state.mapping.swap_physical(s.a, s.b);
        state.emitted.push_back(Gate::swap(s.a, s.b));
    }
}

/// Moves the control of the oldest front gate along a shortest path until it
/// sits next to the target.
static std::vector<Edge> route_greedily(RoutingState &state, const DagCircuit &dag, const RoutingDevice &device) {
    const auto &map = device.map();
    const auto &dist = device.matrices().distance;
    const Gate &g = dag.node(state.front.front());
    Qubit pc = state.mapping.physical(g.qubits[0]);
    const Qubit pt = state.mapping.physical(g.qubits[1]);
    std::vector<Edge> path;
    while (!map.adjacent(pc, pt)) {
        Qubit step = pc;
        for (Qubit m : map.neighbors(pc)) {
            if (m != pt && dist(m, pt) < dist(step, pt)) {
                step = m;
            }
        }
        if (step == pc) {
            throw RoutingError("greedy fallback found no shorter path");
        }
        path.emplace_back(pc, step);
        state.mapping.swap_physical(pc, step);
        pc = step;
    }
    for (const auto &s : path) {
        state.emitted.push_back(Gate::swap(s.a, s.b));
    }
    return path;
}

RoutingResult route(const QuantumCircuit &circuit, const Mapping &initial_mapping, const RoutingDevice &device,
                    const RoutingParams &params) {
    params.validate();
    const auto &map = device.map();
    if (initial_mapping.num_virtual() != circuit.num_qubits() || initial_mapping.num_physical() != map.num_qubits()) {
        throw std::invalid_argument("route: initial mapping does not match the circuit and device sizes");
    }
    DagCircuit dag = to_dag(circuit);
    RoutingState state = initial_state(dag, initial_mapping);
    RoutingStats stats;
    std::vector<Edge> inserted;

    size_t max_iterations = params.max_iterations;
    if (max_iterations == 0) {
        max_iterations = 4 * (params.stall_limit + 2) * (state.pending_two_qubit.size() + 1) + 64;
    }

    size_t stall = 0;
    while (true) {
        compute_front_layer(state, dag, map);
        if (state.done()) {
            break;
        }
        if (++stats.iterations > max_iterations) {
            throw RoutingError("routing exceeded " + std::to_string(max_iterations) + " iterations");
        }
        auto swaps = beam_search(state, dag, device, params);
        apply_swaps(state, swaps);
        inserted.insert(inserted.end(), swaps.begin(), swaps.end());

        bool progressed = false;
        for (size_t id : state.front) {
            progressed |= !needs_routing(dag.node(id), state.mapping, map);
        }
        stall = progressed ? 0 : stall + 1;
        stats.max_stall = std::max(stats.max_stall, stall);
        if (stall >= params.stall_limit) {
            auto path = route_greedily(state, dag, device);
            inserted.insert(inserted.end(), path.begin(), path.end());
            stats.fallbacks++;
            stall = 0;
        }
    }

    stats.swaps_inserted = inserted.size();
    QuantumCircuit physical(map.num_qubits(), std::move(state.emitted), circuit.num_clbits());
    return RoutingResult{decompose_cz(decompose_swaps(physical)), state.mapping, stats, std::move(inserted)};
}

}  // namespace hexroute
