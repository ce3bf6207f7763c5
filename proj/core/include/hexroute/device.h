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

#ifndef HEXROUTE_DEVICE_H
#define HEXROUTE_DEVICE_H

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hexroute/circuit.h"

namespace hexroute {

/// Undirected device edge, stored with a < b.
struct Edge {
    Qubit a;
    Qubit b;
    Edge(Qubit x, Qubit y) : a(std::min(x, y)), b(std::max(x, y)) {
    }
    auto operator<=>(const Edge &other) const = default;
};

/// Malformed input file (bad JSON, wrong field types).
struct DeviceParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a device or calibration invariant. The
/// message starts with the offending field path, e.g. `readout[3]`.
struct DeviceValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Undirected, connected device graph without self-loops.
class CouplingMap {
   public:
    CouplingMap(size_t num_qubits, std::vector<Edge> edges);

    size_t num_qubits() const { return neighbors_.size(); }
    /// Sorted, deduplicated edge list.
    const std::vector<Edge> &edges() const { return edges_; }
    /// Ascending neighbor list of `q`.
    const std::vector<Qubit> &neighbors(Qubit q) const { return neighbors_[q]; }
    size_t degree(Qubit q) const { return neighbors_[q].size(); }
    bool adjacent(Qubit a, Qubit b) const;
    bool has_edge(Edge e) const { return adjacent(e.a, e.b); }

    bool operator==(const CouplingMap &other) const { return edges_ == other.edges_ && num_qubits() == other.num_qubits(); }

   private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Qubit>> neighbors_;
};

/// Heavy-hexagon lattice of rows x cols hexagonal cells in brick-wall layout.
///
/// Every cell is a 12-qubit ring: 6 corner qubits plus one qubit on each of
/// its edges. Qubits are laid on horizontal chains joined by vertical bridge
/// qubits, and labels are assigned row-major: chain 0 left to right, then the
/// bridges below it, then chain 1, and so on. Consecutive cell rows are offset
/// by half a cell.
CouplingMap heavy_hex_map(size_t rows, size_t cols);

/// Heavy-hex layout in the style of IBM devices with the given qubit count.
///
/// Supported sizes are 27, 65, 127 and 433. Sizes above 27 are a
/// heavy_hex_map lattice plus one degree-1 stub at the open end of the first
/// and last chain; 27 is the Falcon layout.
CouplingMap heavy_hex_device(size_t num_qubits);

/// The 7-qubit "H" fragment of a heavy-hex lattice:
/// 0-1-2 and 4-5-6 chains joined through 1-3-5.
CouplingMap heavy_hex_fragment7();

CouplingMap line_map(size_t num_qubits);

/// Per-edge CNOT success, per-qubit readout and single-qubit gate fidelities.
struct CalibrationData {
    std::map<Edge, double> cnot_success;
    std::vector<double> readout_fidelity;
    std::vector<double> single_qubit_success;

    double cnot(Qubit a, Qubit b) const;
    bool operator==(const CalibrationData &other) const = default;
};

/// Checks coverage of `map` and that every rate lies in (0, 1].
void validate_calibration(const CalibrationData &calib, const CouplingMap &map);

CouplingMap parse_coupling_map(std::string_view json_text);
CouplingMap load_coupling_map(const std::filesystem::path &path);
std::string coupling_map_to_json(const CouplingMap &map);

CalibrationData parse_calibration(std::string_view json_text, const CouplingMap &map);
CalibrationData load_calibration(const std::filesystem::path &path, const CouplingMap &map);
std::string calibration_to_json(const CalibrationData &calib, size_t num_qubits);

/// All rates exactly one.
CalibrationData ideal_calibration(const CouplingMap &map);

/// Reliability of a SWAP on `edge`: mu^3.
double swap_reliability(const CalibrationData &calib, Edge edge);

template <typename T>
class SquareMatrix {
   public:
    SquareMatrix() = default;
    SquareMatrix(size_t n, T fill) : n_(n), data_(n * n, fill) {
    }
    size_t size() const { return n_; }
    T &operator()(size_t i, size_t j) { return data_[i * n_ + j]; }
    const T &operator()(size_t i, size_t j) const { return data_[i * n_ + j]; }
    const std::vector<T> &data() const { return data_; }
    bool operator==(const SquareMatrix &other) const = default;

   private:
    size_t n_ = 0;
    std::vector<T> data_;
};

/// R(i, j): best success probability of moving qubit i next to qubit j by SWAPs.
using ReliabilityMatrix = SquareMatrix<double>;
/// D(i, j): fewest SWAPs needed to move qubit i next to qubit j.
using DistanceMatrix = SquareMatrix<uint32_t>;

struct MatrixOptions {
    /// Multiplies each SWAP's reliability by the readout fidelities of its endpoints.
    bool include_readout = false;
};

struct DeviceMatrices {
    ReliabilityMatrix reliability;
    DistanceMatrix distance;
};

/// Floyd-Warshall all-pairs tables followed by minimization over the
/// neighbors of the destination. Reliability paths are chosen on -log
/// weights; the stored value is the product of SWAP reliabilities along the
/// chosen path, multiplied in order starting from i.
DeviceMatrices build_matrices(const CouplingMap &map, const CalibrationData &calib, const MatrixOptions &options = {});

struct NormalizedMatrices {
    SquareMatrix<double> reliability;
    SquareMatrix<double> distance;
};

/// Min-max normalization of each matrix onto [0, 1]. D = 0 maps to 0 and the
/// largest distance to 1; R = 1 maps to 1 and the smallest reliability to 0.
/// A constant matrix maps to all ones (reliability) or all zeros (distance).
NormalizedMatrices normalize_for_scoring(const ReliabilityMatrix &reliability, const DistanceMatrix &distance);

struct UniformProfile {
    double cnot = 0.99;
    double readout = 0.98;
    double single_qubit = 0.999;
};

/// CNOT, readout and single-qubit error rates drawn from log-normal
/// distributions with the given means and a shared relative spread.
struct LognormalProfile {
    double cnot_error_mean = 0.01;
    double readout_error_mean = 0.02;
    double single_qubit_error_mean = 0.001;
    /// Standard deviation divided by the mean.
    double relative_sd = 0.5;
};

struct HotspotProfile {
    std::vector<std::pair<Edge, double>> bad_edges;
    double baseline = 0.99;
    double readout = 0.98;
    double single_qubit = 0.999;
};

using CalibrationProfile = std::variant<UniformProfile, LognormalProfile, HotspotProfile>;

/// Deterministic synthetic calibration. Rates are clamped to [0.5, 1).
CalibrationData synthetic_calibration(const CouplingMap &map, uint64_t seed, const CalibrationProfile &profile);

/// Parses "uniform:MU", "lognormal:MEAN[:RELSD]" or "hotspot:A-B@MU[,A-B@MU...]".
CalibrationProfile parse_profile(std::string_view text);

}  // namespace hexroute

#endif
