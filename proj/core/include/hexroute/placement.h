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

#ifndef HEXROUTE_PLACEMENT_H
#define HEXROUTE_PLACEMENT_H

#include <vector>

#include "hexroute/circuit.h"
#include "hexroute/device.h"

namespace hexroute {

/// Injective virtual -> physical qubit assignment with its partial inverse.
class Mapping {
   public:
    static constexpr Qubit unmapped = UINT32_MAX;

    Mapping(std::vector<Qubit> virtual_to_physical, size_t num_physical);
    static Mapping identity(size_t num_virtual, size_t num_physical);

    size_t num_virtual() const { return v2p_.size(); }
    size_t num_physical() const { return p2v_.size(); }
    Qubit physical(Qubit v) const { return v2p_[v]; }
    /// Virtual occupant of physical qubit `p`, or `unmapped`.
    Qubit virtual_at(Qubit p) const { return p2v_[p]; }
    const std::vector<Qubit> &virtual_to_physical() const { return v2p_; }

    /// Exchanges the occupants (possibly none) of two physical qubits.
    void swap_physical(Qubit a, Qubit b);

    bool operator==(const Mapping &other) const = default;

   private:
    std::vector<Qubit> v2p_;
    std::vector<Qubit> p2v_;
};

/// A simple path through the coupling map plus every qubit it misses.
struct QubitLine {
    std::vector<Qubit> sequence;
    std::vector<Qubit> leftover;
};

struct LineSearchOptions {
    /// Search steps allowed per device qubit before the longest path so far is kept.
    size_t budget_per_qubit = 10;
};

/// Longest simple path found by a depth-first search from qubit 0 that
/// expands neighbors in ascending order and backtracks at dead ends. The
/// search stops once the path covers every qubit or after
/// `budget_per_qubit * n` push/pop steps.
QubitLine find_line(const CouplingMap &map, const LineSearchOptions &options = {});

/// Contiguous length-k window of the line with the largest product of CNOT
/// success rates between consecutive qubits; the earliest window wins ties.
std::vector<Qubit> select_window(const QubitLine &line, const CalibrationData &calib, size_t k);

/// score(q) = readout(q) * mean CNOT success over q's edges.
double leftover_score(Qubit q, const CouplingMap &map, const CalibrationData &calib);

/// Grows the whole line to k qubits by inserting leftover qubits, best score
/// first, directly after their most reliable neighbor already in the chain.
std::vector<Qubit> extend_line(const QubitLine &line, const CouplingMap &map, const CalibrationData &calib, size_t k);

/// Maps virtual qubit v to the v-th qubit of the selected (or extended) line.
Mapping place(const QuantumCircuit &circuit, const CouplingMap &map, const CalibrationData &calib,
              const LineSearchOptions &options = {});

}  // namespace hexroute

#endif
