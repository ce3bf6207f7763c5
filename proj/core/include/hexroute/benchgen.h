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

#ifndef HEXROUTE_BENCHGEN_H
#define HEXROUTE_BENCHGEN_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hexroute/circuit.h"

namespace hexroute {

enum class BenchClass { Deep, Square, Shallow };

std::string_view bench_class_name(BenchClass cls);
/// Accepts "deep", "square" or "shallow"; throws std::invalid_argument otherwise.
BenchClass parse_bench_class(std::string_view name);

struct BenchSpec {
    BenchClass cls = BenchClass::Square;
    size_t num_qubits = 2;
    /// Number of Pauli gadgets for deep circuits; the layer count for square
    /// and shallow circuits, where it is a function of num_qubits.
    size_t depth = 1;
    uint64_t seed = 0;

    /// Throws std::invalid_argument unless num_qubits >= 2 and depth >= 1.
    void validate() const;
    bool operator==(const BenchSpec &other) const = default;
};

enum class Pauli : uint8_t { I, X, Y, Z };

/// Appends exp(-i theta P / 2): a basis change on every non-identity qubit
/// (H for X, RX(pi/2) for Y), a CNOT ladder onto the last non-identity qubit,
/// RZ(theta) there, then the ladder and basis change undone.
/// Throws std::invalid_argument if `pauli` is all identity or has the wrong length.
void append_pauli_gadget(QuantumCircuit &circuit, std::span<const Pauli> pauli, double theta);

/// d Pauli gadgets with uniformly random non-identity Pauli strings and
/// angles in [0, 2 pi).
QuantumCircuit gen_deep(size_t n, size_t d, uint64_t seed);

/// n layers; each pairs the qubits by a uniformly random permutation and
/// applies CX(a,b) U3(a) U3(b) CX(b,a) U3(a) U3(b) CX(a,b) to every pair.
QuantumCircuit gen_square(size_t n, uint64_t seed);

/// Layer count of the diagonal section of shallow circuits: max(1, floor(log2 n)).
size_t shallow_rounds(size_t n);

/// H on all qubits, shallow_rounds(n) rounds of diagonal gates, H on all
/// qubits. Each round applies T or a random RZ to each qubit with probability
/// 1/2, then CZ to each pair of a random pairing with probability 1/2, while
/// no qubit takes part in more than two CZ gates overall.
QuantumCircuit gen_shallow(size_t n, uint64_t seed);

/// Default depth parameter for a class at width n.
size_t default_depth(BenchClass cls, size_t n);

QuantumCircuit generate(const BenchSpec &spec);

struct CorpusEntry {
    BenchSpec spec;
    /// Index within its (class, n) group.
    size_t index;
    std::string file_name;
    QuantumCircuit circuit;
};

/// `count` circuits per size, in size order, each seeded by
/// derive_seed(seed, {class, n, index}). `depth` overrides the class default.
std::vector<CorpusEntry> gen_corpus(BenchClass cls, std::span<const size_t> sizes, size_t count, uint64_t seed,
                                    std::optional<size_t> depth = std::nullopt);

/// Gate-count distribution of one (class, n) group.
struct GateCountSummary {
    BenchClass cls;
    size_t num_qubits;
    size_t circuits;
    size_t min_gates;
    size_t max_gates;
    double mean_gates;
    double variance_gates;
    size_t min_cnots;
    size_t max_cnots;
    double mean_cnots;
};

std::vector<GateCountSummary> summarize_gate_counts(std::span<const CorpusEntry> corpus);
/// Fixed-width text table, one row per group.
std::string format_gate_count_table(std::span<const GateCountSummary> rows);

struct CorpusExistsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes one .qasm file per entry plus manifest.json. Refuses an existing
/// directory unless `force` is set; then files are overwritten in place.
void write_corpus(std::span<const CorpusEntry> corpus, const std::filesystem::path &dir, bool force);

/// The manifest.json text written by write_corpus.
std::string corpus_manifest(std::span<const CorpusEntry> corpus);

}  // namespace hexroute

#endif
