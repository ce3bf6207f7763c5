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

#include "hexroute/benchgen.h"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <system_error>

#include "hexroute/qasm.h"
#include "hexroute/random.h"
#include "json.hpp"

namespace hexroute {

using std::numbers::pi;

std::string_view bench_class_name(BenchClass cls) {
    switch (cls) {
        case BenchClass::Deep:
            return "deep";
        case BenchClass::Square:
            return "square";
        case BenchClass::Shallow:
            return "shallow";
    }
    return "?";
}

BenchClass parse_bench_class(std::string_view name) {
    for (auto cls : {BenchClass::Deep, BenchClass::Square, BenchClass::Shallow}) {
        if (name == bench_class_name(cls)) {
            return cls;
        }
    }
    throw std::invalid_argument("unknown circuit class '" + std::string(name) + "' (expected deep, square or shallow)");
}

void BenchSpec::validate() const {
    if (num_qubits < 2) {
        throw std::invalid_argument("benchmark circuits need at least 2 qubits");
    }
    if (depth < 1) {
        throw std::invalid_argument("benchmark depth must be at least 1");
    }
}

static void require_width(size_t n) {
    if (n < 2) {
        throw std::invalid_argument("benchmark circuits need at least 2 qubits");
    }
}

void append_pauli_gadget(QuantumCircuit &circuit, std::span<const Pauli> pauli, double theta) {
    if (pauli.size() != circuit.num_qubits()) {
        throw std::invalid_argument("Pauli string length differs from the circuit width");
    }
    std::vector<Qubit> support;
    for (Qubit q = 0; q < pauli.size(); q++) {
        if (pauli[q] != Pauli::I) {
            support.push_back(q);
        }
    }
    if (support.empty()) {
        throw std::invalid_argument("Pauli gadget needs a non-identity Pauli string");
    }
    auto basis_change = [&](bool undo) {
        for (Qubit q : support) {
            if (pauli[q] == Pauli::X) {
                circuit.append(Gate::h(q));
            } else if (pauli[q] == Pauli::Y) {
                circuit.append(Gate::rx(undo ? -pi / 2 : pi / 2, q));
            }
        }
    };
    basis_change(false);
    for (size_t k = 0; k + 1 < support.size(); k++) {
        circuit.append(Gate::cnot(support[k], support[k + 1]));
    }
    circuit.append(Gate::rz(theta, support.back()));
    for (size_t k = support.size() - 1; k-- > 0;) {
        circuit.append(Gate::cnot(support[k], support[k + 1]));
    }
    basis_change(true);
}

QuantumCircuit gen_deep(size_t n, size_t d, uint64_t seed) {
    require_width(n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    QuantumCircuit circuit(n);
    std::vector<Pauli> pauli(n);
    for (size_t g = 0; g < d; g++) {
        do {
            for (auto &p : pauli) {
                p = static_cast<Pauli>(letter(rng));
            }
        } while (std::all_of(pauli.begin(), pauli.end(), [](Pauli p) { return p == Pauli::I; }));
        append_pauli_gadget(circuit, pauli, angle(rng));
    }
    return circuit;
}

QuantumCircuit gen_square(size_t n, uint64_t seed) {
    require_width(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    auto u3 = [&](Qubit q) {
        double theta = angle(rng);
        double phi = angle(rng);
        double lambda = angle(rng);
        return Gate::u3(theta, phi, lambda, q);
    };
    QuantumCircuit circuit(n);
    std::vector<Qubit> order(n);
    for (size_t layer = 0; layer < n; layer++) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t k = 0; k + 1 < n; k += 2) {
            Qubit a = order[k];
            Qubit b = order[k + 1];
            circuit.append(Gate::cnot(a, b));
            circuit.append(u3(a));
            circuit.append(u3(b));
            circuit.append(Gate::cnot(b, a));
            circuit.append(u3(a));
            circuit.append(u3(b));
            circuit.append(Gate::cnot(a, b));
        }
    }
    return circuit;
}

size_t shallow_rounds(size_t n) {
    return std::max<size_t>(1, std::bit_width(n) - 1);
}

QuantumCircuit gen_shallow(size_t n, uint64_t seed) {
    require_width(n);
    constexpr size_t max_cz_per_qubit = 2;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    QuantumCircuit circuit(n);
    for (Qubit q = 0; q < n; q++) {
        circuit.append(Gate::h(q));
    }
    std::vector<size_t> cz_uses(n, 0);
    std::vector<Qubit> order(n);
    for (size_t round = 0; round < shallow_rounds(n); round++) {
        for (Qubit q = 0; q < n; q++) {
            if (coin(rng)) {
                circuit.append(coin(rng) ? Gate::t(q) : Gate::rz(angle(rng), q));
            }
        }
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t k = 0; k + 1 < n; k += 2) {
            Qubit a = order[k];
            Qubit b = order[k + 1];
            if (coin(rng) && cz_uses[a] < max_cz_per_qubit && cz_uses[b] < max_cz_per_qubit) {
                circuit.append(Gate::cz(a, b));
                cz_uses[a]++;
                cz_uses[b]++;
            }
        }
    }
    for (Qubit q = 0; q < n; q++) {
        circuit.append(Gate::h(q));
    }
    return circuit;
}

size_t default_depth(BenchClass cls, size_t n) {
    switch (cls) {
        case BenchClass::Deep:
        case BenchClass::Square:
            return n;
        case BenchClass::Shallow:
            return shallow_rounds(n);
    }
    return n;
}

QuantumCircuit generate(const BenchSpec &spec) {
    spec.validate();
    switch (spec.cls) {
        case BenchClass::Deep:
            return gen_deep(spec.num_qubits, spec.depth, spec.seed);
        case BenchClass::Square:
            return gen_square(spec.num_qubits, spec.seed);
        case BenchClass::Shallow:
            return gen_shallow(spec.num_qubits, spec.seed);
    }
    throw std::logic_error("unreachable");
}

std::vector<CorpusEntry> gen_corpus(BenchClass cls, std::span<const size_t> sizes, size_t count, uint64_t seed,
                                    std::optional<size_t> depth) {
    if (count < 1) {
        throw std::invalid_argument("corpus count must be at least 1");
    }
    std::vector<CorpusEntry> corpus;
    corpus.reserve(sizes.size() * count);
    for (size_t n : sizes) {
        for (size_t i = 0; i < count; i++) {
            BenchSpec spec{cls, n, depth.value_or(default_depth(cls, n)),
                           derive_seed(seed, {static_cast<uint64_t>(cls), n, i})};
            char name[64];
            std::snprintf(name, sizeof(name), "%s_n%zu_%04zu.qasm", std::string(bench_class_name(cls)).c_str(), n, i);
            corpus.push_back(CorpusEntry{spec, i, name, generate(spec)});
        }
    }
    return corpus;
}

std::vector<GateCountSummary> summarize_gate_counts(std::span<const CorpusEntry> corpus) {
    std::map<std::pair<BenchClass, size_t>, std::vector<const CorpusEntry *>> groups;
    for (const auto &e : corpus) {
        groups[{e.spec.cls, e.spec.num_qubits}].push_back(&e);
    }
    std::vector<GateCountSummary> rows;
    for (const auto &[key, entries] : groups) {
        GateCountSummary row{key.first, key.second, entries.size(), SIZE_MAX, 0, 0.0, 0.0, SIZE_MAX, 0, 0.0};
        for (const auto *e : entries) {
            size_t gates = e->circuit.size();
            size_t cnots = cnot_count(e->circuit);
            row.min_gates = std::min(row.min_gates, gates);
            row.max_gates = std::max(row.max_gates, gates);
            row.mean_gates += static_cast<double>(gates);
            row.min_cnots = std::min(row.min_cnots, cnots);
            row.max_cnots = std::max(row.max_cnots, cnots);
            row.mean_cnots += static_cast<double>(cnots);
        }
        double m = static_cast<double>(entries.size());
        row.mean_gates /= m;
        row.mean_cnots /= m;
        for (const auto *e : entries) {
            double dev = static_cast<double>(e->circuit.size()) - row.mean_gates;
            row.variance_gates += dev * dev / m;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_gate_count_table(std::span<const GateCountSummary> rows) {
    std::string out = "class    n  circuits  gates(min/mean/max)     var    cnots(min/mean/max)\n";
    char line[160];
    for (const auto &r : rows) {
        std::snprintf(line, sizeof(line), "%-7s %2zu  %8zu  %5zu/%8.2f/%5zu  %8.2f  %5zu/%8.2f/%5zu\n",
                      std::string(bench_class_name(r.cls)).c_str(), r.num_qubits, r.circuits, r.min_gates,
                      r.mean_gates, r.max_gates, r.variance_gates, r.min_cnots, r.mean_cnots, r.max_cnots);
        out += line;
    }
    return out;
}

std::string corpus_manifest(std::span<const CorpusEntry> corpus) {
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto &e : corpus) {
        std::map<std::string, size_t> counts;
        for (const auto &g : e.circuit) {
            counts[std::string(gate_name(g.kind))]++;
        }
        nlohmann::ordered_json item;
        item["file"] = e.file_name;
        item["class"] = bench_class_name(e.spec.cls);
        item["num_qubits"] = e.spec.num_qubits;
        item["depth"] = e.spec.depth;
        item["index"] = e.index;
        item["seed"] = e.spec.seed;
        item["gate_count"] = e.circuit.size();
        item["cnot_count"] = cnot_count(e.circuit);
        item["gate_counts"] = counts;
        items.push_back(std::move(item));
    }
    nlohmann::ordered_json manifest;
    manifest["circuits"] = std::move(items);
    return manifest.dump(2) + "\n";
}

void write_corpus(std::span<const CorpusEntry> corpus, const std::filesystem::path &dir, bool force) {
    namespace fs = std::filesystem;
    if (fs::exists(dir) && !force) {
        throw CorpusExistsError("output directory " + dir.string() + " already exists (use --force to overwrite)");
    }
    fs::create_directories(dir);
    auto write = [&](const fs::path &path, const std::string &text) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) {
            throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
        }
    };
    for (const auto &e : corpus) {
        write(dir / e.file_name, emit_qasm(e.circuit));
    }
    write(dir / "manifest.json", corpus_manifest(corpus));
}

}  // namespace hexroute
