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

#include "hexroute/sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "hexroute/random.h"

namespace hexroute {

namespace {

constexpr Amplitude I{0.0, 1.0};

void apply_matrix(std::vector<Amplitude> &amps, size_t q, const std::array<Amplitude, 4> &m) {
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps.size(); i++) {
        if (i & bit) {
            continue;
        }
        Amplitude a0 = amps[i];
        Amplitude a1 = amps[i | bit];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_cnot(std::vector<Amplitude> &amps, size_t c, size_t t) {
    const size_t cb = size_t{1} << c;
    const size_t tb = size_t{1} << t;
    for (size_t i = 0; i < amps.size(); i++) {
        if ((i & cb) && !(i & tb)) {
            std::swap(amps[i], amps[i | tb]);
        }
    }
}

void apply_cz(std::vector<Amplitude> &amps, size_t a, size_t b) {
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < amps.size(); i++) {
        if ((i & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

void apply_swap(std::vector<Amplitude> &amps, size_t a, size_t b) {
    const size_t ab = size_t{1} << a;
    const size_t bb = size_t{1} << b;
    for (size_t i = 0; i < amps.size(); i++) {
        if ((i & ab) && !(i & bb)) {
            std::swap(amps[i], amps[(i ^ ab) | bb]);
        }
    }
}

/// Pauli 1 = X, 2 = Y, 3 = Z on one qubit.
void apply_pauli(std::vector<Amplitude> &amps, size_t q, unsigned pauli) {
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps.size(); i++) {
        if (i & bit) {
            continue;
        }
        Amplitude &a0 = amps[i];
        Amplitude &a1 = amps[i | bit];
        switch (pauli) {
            case 1:
                std::swap(a0, a1);
                break;
            case 2: {
                Amplitude t = a0;
                a0 = -I * a1;
                a1 = I * t;
                break;
            }
            case 3:
                a1 = -a1;
                break;
            default:
                break;
        }
    }
}

}  // namespace

Statevector Statevector::zero(size_t num_qubits) {
    if (num_qubits > kMaxStatevectorQubits) {
        throw std::invalid_argument(
            "statevector of " + std::to_string(num_qubits) + " qubits exceeds the limit of " +
            std::to_string(kMaxStatevectorQubits));
    }
    Statevector s{num_qubits, std::vector<Amplitude>(size_t{1} << num_qubits)};
    s.amplitudes[0] = 1.0;
    return s;
}

double Statevector::norm() const {
    double sum = 0.0;
    for (const auto &a : amplitudes) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

std::array<Amplitude, 4> single_qubit_matrix(const Gate &gate) {
    using std::numbers::pi;
    const double r = std::numbers::sqrt2 / 2.0;
    auto theta = [&](size_t k) { return gate.params.at(k); };
    switch (gate.kind) {
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y:
            return {0.0, -I, I, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S:
            return {1.0, 0.0, 0.0, I};
        case GateKind::Sdg:
            return {1.0, 0.0, 0.0, -I};
        case GateKind::T:
            return {1.0, 0.0, 0.0, std::polar(1.0, pi / 4)};
        case GateKind::Tdg:
            return {1.0, 0.0, 0.0, std::polar(1.0, -pi / 4)};
        case GateKind::RX: {
            double c = std::cos(theta(0) / 2), s = std::sin(theta(0) / 2);
            return {c, -I * s, -I * s, c};
        }
        case GateKind::RY: {
            double c = std::cos(theta(0) / 2), s = std::sin(theta(0) / 2);
            return {c, -s, s, c};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -theta(0) / 2), 0.0, 0.0, std::polar(1.0, theta(0) / 2)};
        case GateKind::U3: {
            double c = std::cos(theta(0) / 2), s = std::sin(theta(0) / 2);
            double phi = theta(1), lambda = theta(2);
            return {c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
        }
        default:
            throw std::invalid_argument("no single-qubit matrix for gate " + std::string(gate_name(gate.kind)));
    }
}

void apply_gate(Statevector &state, const Gate &gate) {
    auto &amps = state.amplitudes;
    switch (gate.kind) {
        case GateKind::CNOT:
            apply_cnot(amps, gate.qubits[0], gate.qubits[1]);
            return;
        case GateKind::CZ:
            apply_cz(amps, gate.qubits[0], gate.qubits[1]);
            return;
        case GateKind::SWAP:
            apply_swap(amps, gate.qubits[0], gate.qubits[1]);
            return;
        case GateKind::BARRIER:
            return;
        case GateKind::MEASURE:
            throw std::invalid_argument("statevector simulation does not support measure");
        default:
            apply_matrix(amps, gate.qubits[0], single_qubit_matrix(gate));
    }
}

Statevector statevector(const QuantumCircuit &circuit) {
    Statevector state = Statevector::zero(circuit.num_qubits());
    for (const auto &g : circuit) {
        apply_gate(state, g);
    }
    return state;
}

Distribution::Distribution(size_t num_bits) : num_bits_(num_bits) {
    if (num_bits > kMaxBits) {
        throw std::invalid_argument("distribution over more than 63 bits");
    }
    if (num_bits <= kMaxDenseBits) {
        dense_.assign(size_t{1} << num_bits, 0.0);
    }
}

Distribution Distribution::from_dense(size_t num_bits, std::vector<double> probabilities) {
    Distribution d(num_bits);
    if (probabilities.size() != d.outcome_count()) {
        throw std::invalid_argument("dense distribution has the wrong number of entries");
    }
    if (d.is_dense()) {
        d.dense_ = std::move(probabilities);
    } else {
        for (uint64_t x = 0; x < probabilities.size(); x++) {
            d.add(x, probabilities[x]);
        }
    }
    return d;
}

double Distribution::operator()(uint64_t outcome) const {
    if (outcome >= outcome_count()) {
        throw std::out_of_range("outcome outside the distribution's bit width");
    }
    if (is_dense()) {
        return dense_[outcome];
    }
    auto it = sparse_.find(outcome);
    return it == sparse_.end() ? 0.0 : it->second;
}

void Distribution::add(uint64_t outcome, double mass) {
    if (outcome >= outcome_count()) {
        throw std::out_of_range("outcome outside the distribution's bit width");
    }
    if (is_dense()) {
        dense_[outcome] += mass;
    } else if (mass != 0.0) {
        sparse_[outcome] += mass;
    }
}

std::vector<std::pair<uint64_t, double>> Distribution::support() const {
    std::vector<std::pair<uint64_t, double>> out;
    if (is_dense()) {
        for (uint64_t x = 0; x < dense_.size(); x++) {
            if (dense_[x] != 0.0) {
                out.emplace_back(x, dense_[x]);
            }
        }
    } else {
        for (const auto &[x, p] : sparse_) {
            if (p != 0.0) {
                out.emplace_back(x, p);
            }
        }
    }
    return out;
}

size_t Distribution::support_size() const {
    if (is_dense()) {
        return static_cast<size_t>(std::count_if(dense_.begin(), dense_.end(), [](double p) { return p != 0.0; }));
    }
    return static_cast<size_t>(std::count_if(sparse_.begin(), sparse_.end(), [](const auto &e) { return e.second != 0.0; }));
}

double Distribution::total() const {
    double sum = 0.0;
    if (is_dense()) {
        for (double p : dense_) {
            sum += p;
        }
    } else {
        for (const auto &[x, p] : sparse_) {
            sum += p;
        }
    }
    return sum;
}

Distribution ideal_distribution(const QuantumCircuit &circuit) {
    Statevector state = statevector(strip_non_unitary(circuit));
    std::vector<double> probs(state.amplitudes.size());
    for (size_t x = 0; x < probs.size(); x++) {
        probs[x] = std::norm(state.amplitudes[x]);
    }
    return Distribution::from_dense(state.num_qubits, std::move(probs));
}

NoiseModel NoiseModel::from_calibration(const CalibrationData &calib, size_t num_qubits) {
    NoiseModel model;
    for (const auto &[e, mu] : calib.cnot_success) {
        model.two_qubit[e] = 1.0 - mu;
    }
    model.single_qubit.resize(num_qubits);
    model.readout.resize(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        model.single_qubit[q] = 1.0 - calib.single_qubit_success.at(q);
        model.readout[q] = 1.0 - calib.readout_fidelity.at(q);
    }
    return model;
}

NoiseModel NoiseModel::noiseless(const CouplingMap &map) {
    NoiseModel model;
    for (const auto &e : map.edges()) {
        model.two_qubit[e] = 0.0;
    }
    model.single_qubit.assign(map.num_qubits(), 0.0);
    model.readout.assign(map.num_qubits(), 0.0);
    return model;
}

double NoiseModel::two_qubit_error(Qubit a, Qubit b) const {
    auto it = two_qubit.find(Edge(a, b));
    if (it == two_qubit.end()) {
        throw std::invalid_argument(
            "two-qubit gate on (" + std::to_string(a) + ", " + std::to_string(b) + ") is not on a device edge");
    }
    return it->second;
}

void NoiseModel::validate() const {
    auto check = [](double p, const std::string &what) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(what + ": error probability " + std::to_string(p) + " outside [0, 1]");
        }
    };
    if (single_qubit.size() != readout.size()) {
        throw std::invalid_argument("noise model: single-qubit and readout tables differ in size");
    }
    for (const auto &[e, p] : two_qubit) {
        if (e.b >= readout.size()) {
            throw std::invalid_argument("noise model: edge outside the qubit range");
        }
        check(p, "two_qubit[" + std::to_string(e.a) + "," + std::to_string(e.b) + "]");
    }
    for (size_t q = 0; q < readout.size(); q++) {
        check(single_qubit[q], "single_qubit[" + std::to_string(q) + "]");
        check(readout[q], "readout[" + std::to_string(q) + "]");
    }
}

namespace {

/// A unitary gate relabelled onto the compact register of active qubits.
struct Op {
    Gate gate;
    double error;
    /// Number of qubits a Pauli error acts on.
    unsigned width;
};

/// Error realization of one shot: (op index, Pauli code) in op order.
/// Pauli codes are 1..3 for one qubit and 1..15 for two (low two bits act on
/// the first qubit, high two bits on the second).
using ErrorEvents = std::vector<std::pair<uint32_t, uint8_t>>;

class TrajectorySimulator {
   public:
    TrajectorySimulator(std::vector<Op> ops, size_t num_active) : ops_(std::move(ops)), num_active_(num_active) {
        const size_t dim = size_t{1} << num_active_;
        constexpr size_t checkpoint_budget_bytes = size_t{64} << 20;
        size_t per_state = dim * sizeof(Amplitude);
        size_t max_states = std::max<size_t>(2, checkpoint_budget_bytes / per_state);
        stride_ = std::max<size_t>(1, (ops_.size() + max_states - 1) / max_states);
        constexpr size_t cache_budget_bytes = size_t{256} << 20;
        max_cached_ = std::max<size_t>(1, cache_budget_bytes / (dim * sizeof(double)));

        Statevector state = Statevector::zero(num_active_);
        for (size_t k = 0; k < ops_.size(); k++) {
            if (k % stride_ == 0) {
                checkpoints_.push_back(state.amplitudes);
            }
            apply_gate(state, ops_[k].gate);
        }
        ideal_ = cumulative(state);
    }

    /// Cumulative outcome probabilities over the active register for a shot
    /// with the given errors.
    const std::vector<double> &final_cumulative(const ErrorEvents &events) {
        if (events.empty()) {
            return ideal_;
        }
        auto it = cache_.find(events);
        if (it != cache_.end()) {
            return it->second;
        }
        size_t first = events.front().first;
        size_t start = first - first % stride_;
        Statevector state{num_active_, checkpoints_[start / stride_]};
        size_t e = 0;
        for (size_t k = start; k < ops_.size(); k++) {
            apply_gate(state, ops_[k].gate);
            for (; e < events.size() && events[e].first == k; e++) {
                unsigned code = events[e].second;
                const auto &qs = ops_[k].gate.qubits;
                apply_pauli(state.amplitudes, qs[0], code & 3);
                if (ops_[k].width == 2) {
                    apply_pauli(state.amplitudes, qs[1], code >> 2);
                }
            }
        }
        std::vector<double> cdf = cumulative(state);
        if (cache_.size() >= max_cached_) {
            scratch_ = std::move(cdf);
            return scratch_;
        }
        return cache_.emplace(events, std::move(cdf)).first->second;
    }

    const std::vector<Op> &ops() const { return ops_; }

   private:
    static std::vector<double> cumulative(const Statevector &state) {
        std::vector<double> cdf(state.amplitudes.size());
        double running = 0.0;
        for (size_t x = 0; x < cdf.size(); x++) {
            running += std::norm(state.amplitudes[x]);
            cdf[x] = running;
        }
        return cdf;
    }

    std::vector<Op> ops_;
    size_t num_active_;
    size_t stride_ = 1;
    size_t max_cached_ = 1;
    std::vector<std::vector<Amplitude>> checkpoints_;
    std::vector<double> ideal_;
    std::map<ErrorEvents, std::vector<double>> cache_;
    std::vector<double> scratch_;
};

}  // namespace

Samples sample_noisy(const QuantumCircuit &circuit, const NoiseModel &noise, size_t shots, uint64_t seed,
                     std::span<const Qubit> measured) {
    if (shots == 0) {
        throw std::invalid_argument("sample_noisy: shots must be at least 1");
    }
    const size_t n = circuit.num_qubits();
    if (noise.num_qubits() < n) {
        throw std::invalid_argument("noise model covers fewer qubits than the circuit");
    }
    std::vector<Qubit> outputs(measured.begin(), measured.end());
    if (outputs.empty()) {
        for (Qubit q = 0; q < n; q++) {
            outputs.push_back(q);
        }
    }
    if (outputs.size() > Distribution::kMaxBits) {
        throw std::invalid_argument("sample_noisy: too many measured qubits");
    }

    // Compact register: qubits touched by a unitary gate or measured.
    constexpr Qubit inactive = UINT32_MAX;
    std::vector<Qubit> compact(n, inactive);
    size_t num_active = 0;
    auto activate = [&](Qubit q) {
        if (q >= n) {
            throw std::invalid_argument("sample_noisy: measured qubit outside the circuit");
        }
        if (compact[q] == inactive) {
            compact[q] = static_cast<Qubit>(num_active++);
        }
    };
    std::vector<Op> ops;
    for (const auto &g : circuit) {
        if (g.kind == GateKind::BARRIER || g.kind == GateKind::MEASURE) {
            continue;
        }
        double error;
        unsigned width;
        if (is_two_qubit(g.kind)) {
            error = noise.two_qubit_error(g.qubits[0], g.qubits[1]);
            width = 2;
        } else {
            error = noise.single_qubit.at(g.qubits[0]);
            width = 1;
        }
        for (Qubit q : g.qubits) {
            activate(q);
        }
        Gate local = g;
        for (auto &q : local.qubits) {
            q = compact[q];
        }
        ops.push_back(Op{std::move(local), error, width});
    }
    for (Qubit q : outputs) {
        activate(q);
    }
    if (num_active > kMaxStatevectorQubits) {
        throw std::invalid_argument(
            "sample_noisy: " + std::to_string(num_active) + " active qubits exceed the simulation limit");
    }

    TrajectorySimulator sim(std::move(ops), num_active);
    Samples samples(shots);
    ErrorEvents events;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (size_t shot = 0; shot < shots; shot++) {
        std::mt19937_64 rng(derive_seed(seed, {shot}));
        events.clear();
        const auto &ops_ref = sim.ops();
        for (size_t k = 0; k < ops_ref.size(); k++) {
            const Op &op = ops_ref[k];
            if (op.error > 0.0 && unit(rng) < op.error) {
                unsigned max_code = op.width == 2 ? 15 : 3;
                auto code = std::uniform_int_distribution<unsigned>(1, max_code)(rng);
                events.emplace_back(static_cast<uint32_t>(k), static_cast<uint8_t>(code));
            }
        }
        const auto &cdf = sim.final_cumulative(events);
        double u = unit(rng) * cdf.back();
        size_t index = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        index = std::min(index, cdf.size() - 1);
        uint64_t bits = 0;
        for (size_t i = 0; i < outputs.size(); i++) {
            uint64_t bit = (index >> compact[outputs[i]]) & 1;
            double flip = noise.readout.at(outputs[i]);
            if (flip > 0.0 && unit(rng) < flip) {
                bit ^= 1;
            }
            bits |= bit << i;
        }
        samples[shot] = bits;
    }
    return samples;
}

Distribution empirical_distribution(const Samples &samples, size_t num_bits) {
    if (samples.empty()) {
        throw std::invalid_argument("empirical_distribution: no samples");
    }
    std::map<uint64_t, size_t> counts;
    for (uint64_t x : samples) {
        counts[x]++;
    }
    Distribution d(num_bits);
    const double m = static_cast<double>(samples.size());
    for (const auto &[x, c] : counts) {
        d.add(x, static_cast<double>(c) / m);
    }
    return d;
}

}  // namespace hexroute
