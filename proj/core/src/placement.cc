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

#include "hexroute/placement.h"

#include <algorithm>
#include <stdexcept>

namespace hexroute {

Mapping::Mapping(std::vector<Qubit> virtual_to_physical, size_t num_physical)
    : v2p_(std::move(virtual_to_physical)), p2v_(num_physical, unmapped) {
    if (v2p_.size() > num_physical) {
        throw std::invalid_argument("mapping has more virtual than physical qubits");
    }
    for (Qubit v = 0; v < v2p_.size(); v++) {
        Qubit p = v2p_[v];
        if (p >= num_physical) {
            throw std::invalid_argument("mapping sends virtual qubit " + std::to_string(v) + " outside the device");
        }
        if (p2v_[p] != unmapped) {
            throw std::invalid_argument("mapping is not injective at physical qubit " + std::to_string(p));
        }
        p2v_[p] = v;
    }
}

Mapping Mapping::identity(size_t num_virtual, size_t num_physical) {
    std::vector<Qubit> v2p(num_virtual);
    for (Qubit v = 0; v < num_virtual; v++) {
        v2p[v] = v;
    }
    return Mapping(std::move(v2p), num_physical);
}

void Mapping::swap_physical(Qubit a, Qubit b) {
    Qubit va = p2v_[a];
    Qubit vb = p2v_[b];
    p2v_[a] = vb;
    p2v_[b] = va;
    if (va != unmapped) {
        v2p_[va] = b;
    }
    if (vb != unmapped) {
        v2p_[vb] = a;
    }
}

QubitLine find_line(const CouplingMap &map, const LineSearchOptions &options) {
    const size_t n = map.num_qubits();
    const size_t budget = std::max<size_t>(1, options.budget_per_qubit * n);

    std::vector<bool> on_path(n, false);
    std::vector<Qubit> path{0};
    std::vector<size_t> cursor{0};
    on_path[0] = true;
    std::vector<Qubit> best;
    size_t steps = 1;

    auto remember = [&]() {
        if (path.size() > best.size()) {
            best = path;
        }
    };

    while (!path.empty() && path.size() < n && steps < budget) {
        Qubit at = path.back();
        const auto &nbrs = map.neighbors(at);
        size_t &c = cursor.back();
        while (c < nbrs.size() && on_path[nbrs[c]]) {
            c++;
        }
        if (c < nbrs.size()) {
            Qubit nxt = nbrs[c++];
            on_path[nxt] = true;
            path.push_back(nxt);
            cursor.push_back(0);
        } else {
            remember();
            on_path[at] = false;
            path.pop_back();
            cursor.pop_back();
        }
        steps++;
    }
    remember();

    QubitLine line;
    line.sequence = std::move(best);
    std::vector<bool> used(n, false);
    for (Qubit q : line.sequence) {
        used[q] = true;
    }
    for (Qubit q = 0; q < n; q++) {
        if (!used[q]) {
            line.leftover.push_back(q);
        }
    }
    return line;
}

std::vector<Qubit> select_window(const QubitLine &line, const CalibrationData &calib, size_t k) {
    const auto &seq = line.sequence;
    if (k == 0 || k > seq.size()) {
        throw std::invalid_argument(
            "select_window: window of " + std::to_string(k) + " qubits does not fit a line of " +
            std::to_string(seq.size()) + " (use extend_line)");
    }
    size_t best_start = 0;
    double best_product = -1.0;
    for (size_t start = 0; start + k <= seq.size(); start++) {
        double product = 1.0;
        for (size_t i = start; i + 1 < start + k; i++) {
            product *= calib.cnot(seq[i], seq[i + 1]);
        }
        if (product > best_product) {
            best_product = product;
            best_start = start;
        }
    }
    return {seq.begin() + best_start, seq.begin() + best_start + k};
}

double leftover_score(Qubit q, const CouplingMap &map, const CalibrationData &calib) {
    const auto &nbrs = map.neighbors(q);
    if (nbrs.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (Qubit m : nbrs) {
        sum += calib.cnot(q, m);
    }
    return calib.readout_fidelity.at(q) * (sum / static_cast<double>(nbrs.size()));
}

std::vector<Qubit> extend_line(const QubitLine &line, const CouplingMap &map, const CalibrationData &calib, size_t k) {
    const size_t n = map.num_qubits();
    if (k > n) {
        throw std::invalid_argument(
            "extend_line: " + std::to_string(k) + " qubits requested from a " + std::to_string(n) + "-qubit device");
    }
    std::vector<Qubit> chain = line.sequence;
    std::vector<bool> in_chain(n, false);
    for (Qubit q : chain) {
        in_chain[q] = true;
    }

    std::vector<std::pair<double, Qubit>> pending;
    for (Qubit q : line.leftover) {
        pending.emplace_back(leftover_score(q, map, calib), q);
    }
    std::stable_sort(pending.begin(), pending.end(), [](const auto &x, const auto &y) {
        return x.first > y.first || (x.first == y.first && x.second < y.second);
    });

    while (chain.size() < k) {
        bool inserted = false;
        for (auto it = pending.begin(); it != pending.end(); ++it) {
            Qubit q = it->second;
            Qubit anchor = Mapping::unmapped;
            double anchor_mu = -1.0;
            for (Qubit m : map.neighbors(q)) {
                if (in_chain[m] && calib.cnot(q, m) > anchor_mu) {
                    anchor_mu = calib.cnot(q, m);
                    anchor = m;
                }
            }
            if (anchor == Mapping::unmapped) {
                continue;
            }
            auto pos = std::find(chain.begin(), chain.end(), anchor);
            chain.insert(pos + 1, q);
            in_chain[q] = true;
            pending.erase(it);
            inserted = true;
            break;
        }
        if (!inserted) {
            throw std::logic_error("extend_line: no leftover qubit touches the chain");
        }
    }
    return chain;
}

Mapping place(const QuantumCircuit &circuit, const CouplingMap &map, const CalibrationData &calib,
              const LineSearchOptions &options) {
    const size_t k = circuit.num_qubits();
    if (k > map.num_qubits()) {
        throw std::invalid_argument(
            "circuit has " + std::to_string(k) + " qubits but the device only " + std::to_string(map.num_qubits()));
    }
    QubitLine line = find_line(map, options);
    std::vector<Qubit> chosen =
        k <= line.sequence.size() ? select_window(line, calib, k) : extend_line(line, map, calib, k);
    chosen.resize(k);
    return Mapping(std::move(chosen), map.num_qubits());
}

}  // namespace hexroute
