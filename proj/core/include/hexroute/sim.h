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

#ifndef HEXROUTE_SIM_H
#define HEXROUTE_SIM_H

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hexroute/circuit.h"
#include "hexroute/device.h"

namespace hexroute {

/// Bit k of a basis-state index is the value of qubit k (little-endian).
using Amplitude = std::complex<double>;

constexpr size_t kMaxStatevectorQubits = 20;

struct Statevector {
    size_t num_qubits = 0;
    std::vector<Amplitude> amplitudes;

    /// |0...0> on n qubits.
    static Statevector zero(size_t num_qubits);
    double norm() const;
};

/// 2x2 unitary of a single-qubit gate, row-major.
std::array<Amplitude, 4> single_qubit_matrix(const Gate &gate);

/// Applies a unitary gate or barrier in place. MEASURE is rejected.
void apply_gate(Statevector &state, const Gate &gate);

/// State after applying every gate of `circuit` to |0...0>.
/// Throws std::invalid_argument on MEASURE gates or more than 20 qubits.
Statevector statevector(const QuantumCircuit &circuit);

/// Probability mass over n-bit outcomes. Stored densely for n <= 14 and as a
/// sorted map of nonzero entries otherwise.
class Distribution {
   public:
    static constexpr size_t kMaxDenseBits = 14;
    static constexpr size_t kMaxBits = 63;

    explicit Distribution(size_t num_bits);
    static Distribution from_dense(size_t num_bits, std::vector<double> probabilities);

    size_t num_bits() const { return num_bits_; }
    bool is_dense() const { return !dense_.empty(); }
    /// 2^n.
    uint64_t outcome_count() const { return uint64_t{1} << num_bits_; }

    double operator()(uint64_t outcome) const;
    void add(uint64_t outcome, double mass);
    /// Outcomes with nonzero mass and their mass, ascending by outcome.
    std::vector<std::pair<uint64_t, double>> support() const;
    size_t support_size() const;
    double total() const;

   private:
    size_t num_bits_;
    std::vector<double> dense_;
    std::map<uint64_t, double> sparse_;
};

/// p(x) = |<x|psi>|^2 for the circuit with MEASURE gates removed.
Distribution ideal_distribution(const QuantumCircuit &circuit);

/// Depolarizing-Pauli and readout-flip error probabilities.
struct NoiseModel {
    /// Per coupling-map edge, applied after CNOT, CZ and SWAP.
    std::map<Edge, double> two_qubit;
    /// Per qubit, applied after every single-qubit unitary.
    std::vector<double> single_qubit;
    /// Per qubit, probability that the measured bit flips.
    std::vector<double> readout;

    /// e2 = 1 - mu, e1 = 1 - sigma, er = 1 - rho.
    static NoiseModel from_calibration(const CalibrationData &calib, size_t num_qubits);
    /// All probabilities zero.
    static NoiseModel noiseless(const CouplingMap &map);

    size_t num_qubits() const { return readout.size(); }
    /// Throws std::invalid_argument if (a, b) is not an edge of the model.
    double two_qubit_error(Qubit a, Qubit b) const;
    /// Throws std::invalid_argument when sizes disagree or a probability is outside [0, 1].
    void validate() const;
};

/// One bitstring per shot; bit i is the outcome of the i-th measured qubit.
using Samples = std::vector<uint64_t>;

/// Trajectory sampling of `circuit` under `noise`.
///
/// After each unitary gate a uniformly random non-identity Pauli on the gate's
/// qubits is applied with the gate's error probability. Every qubit in
/// `measured` is read out in the Z basis at the end and its bit flips with its
/// readout error probability. An empty `measured` reads all qubits in order.
/// MEASURE gates in the circuit are ignored. Each shot draws from its own
/// random stream derived from `seed`, so results depend only on the inputs.
///
/// Throws std::invalid_argument when a two-qubit gate is not on an edge of the
/// noise model, when shots is zero, or when more than 20 qubits are involved.
Samples sample_noisy(const QuantumCircuit &circuit, const NoiseModel &noise, size_t shots, uint64_t seed,
                     std::span<const Qubit> measured = {});

/// D(x) = count(x) / m. Throws std::invalid_argument on empty samples.
Distribution empirical_distribution(const Samples &samples, size_t num_bits);

}  // namespace hexroute

#endif
