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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "hexroute/qasm.h"
#include "support/test_support.h"

using namespace hexroute;
namespace fs = std::filesystem;

namespace {

using State = std::vector<std::complex<double>>;

QuantumCircuit concat(const QuantumCircuit &a, const std::vector<Gate> &tail) {
    QuantumCircuit out = a;
    for (const auto &g : tail) {
        out.append(g);
    }
    return out;
}

/// Random product-and-entangled state preparation on n qubits.
QuantumCircuit random_prep(size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(0, 6.28);
    QuantumCircuit prep(n);
    for (int round = 0; round < 3; round++) {
        for (Qubit q = 0; q < n; q++) {
            prep.append(Gate::u3(angle(rng), angle(rng), angle(rng), q));
        }
        for (Qubit q = 0; q + 1 < n; q++) {
            prep.append(Gate::cnot(q, q + 1));
        }
    }
    return prep;
}

double max_deviation(const State &a, const State &b) {
    double worst = 0.0;
    for (size_t k = 0; k < a.size(); k++) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

std::vector<Gate> middle_section(const QuantumCircuit &c) {
    size_t n = c.num_qubits();
    return std::vector<Gate>(c.gates().begin() + n, c.gates().end() - n);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hexroute_gen_" + std::to_string(std::random_device{}()));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(bench_class, names_round_trip) {
    for (auto cls : {BenchClass::Deep, BenchClass::Square, BenchClass::Shallow}) {
        EXPECT_EQ(parse_bench_class(bench_class_name(cls)), cls);
    }
    EXPECT_THROW(parse_bench_class("wide"), std::invalid_argument);
    EXPECT_THROW((BenchSpec{BenchClass::Deep, 1, 1, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((BenchSpec{BenchClass::Deep, 3, 0, 0}.validate()), std::invalid_argument);
}

TEST(pauli_gadget, zz_on_two_qubits) {
    QuantumCircuit c(2);
    std::vector<Pauli> zz = {Pauli::Z, Pauli::Z};
    append_pauli_gadget(c, zz, 0.375);
    EXPECT_EQ(c.gates(), (std::vector<Gate>{Gate::cnot(0, 1), Gate::rz(0.375, 1), Gate::cnot(0, 1)}));
    std::vector<Pauli> identity = {Pauli::I, Pauli::I};
    EXPECT_THROW(append_pauli_gadget(c, identity, 1.0), std::invalid_argument);
    std::vector<Pauli> short_string = {Pauli::Z};
    EXPECT_THROW(append_pauli_gadget(c, short_string, 1.0), std::invalid_argument);
}

TEST(pauli_gadget, implements_pauli_exponential) {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 2 + trial % 4;
        std::vector<Pauli> p(n);
        do {
            for (auto &x : p) {
                x = static_cast<Pauli>(rng() % 4);
            }
        } while (std::all_of(p.begin(), p.end(), [](Pauli x) { return x == Pauli::I; }));
        double theta = std::uniform_real_distribution<double>(0, 6.28)(rng);

        auto prep = random_prep(n, rng);
        QuantumCircuit gadget(n);
        append_pauli_gadget(gadget, p, theta);
        auto actual = testkit::reference_statevector(concat(prep, gadget.gates()));

        std::vector<Gate> paulis;
        for (Qubit q = 0; q < n; q++) {
            if (p[q] == Pauli::X) {
                paulis.push_back(Gate::x(q));
            } else if (p[q] == Pauli::Y) {
                paulis.push_back(Gate::y(q));
            } else if (p[q] == Pauli::Z) {
                paulis.push_back(Gate::z(q));
            }
        }
        auto psi = testkit::reference_statevector(prep);
        auto p_psi = testkit::reference_statevector(concat(prep, paulis));
        State expected(psi.size());
        for (size_t k = 0; k < psi.size(); k++) {
            expected[k] = std::cos(theta / 2) * psi[k] - std::complex<double>(0, 1) * std::sin(theta / 2) * p_psi[k];
        }
        EXPECT_LT(max_deviation(actual, expected), 1e-12);

        QuantumCircuit still(n);
        append_pauli_gadget(still, p, 0.0);
        EXPECT_LT(max_deviation(testkit::reference_statevector(concat(prep, still.gates())), psi), 1e-12);
    }
}

TEST(gen_deep, deterministic_and_seed_sensitive) {
    EXPECT_EQ(gen_deep(5, 6, 1), gen_deep(5, 6, 1));
    EXPECT_NE(gen_deep(5, 6, 1), gen_deep(5, 6, 2));
}

TEST(gen_deep, cnot_count_linear_in_gadgets) {
    std::vector<double> depths;
    std::vector<double> means;
    for (size_t d = 1; d <= 16; d *= 2) {
        double total = 0.0;
        for (uint64_t seed = 0; seed < 200; seed++) {
            total += static_cast<double>(cnot_count(gen_deep(6, d, seed)));
        }
        depths.push_back(static_cast<double>(d));
        means.push_back(total / 200);
    }
    for (size_t k = 1; k < means.size(); k++) {
        EXPECT_GT(means[k], means[k - 1]);
    }
    EXPECT_NEAR(testkit::loglog_slope(depths, means), 1.0, 0.1);
}

TEST(gen_square, gate_count_depends_on_width_only) {
    for (size_t n = 2; n <= 9; n++) {
        auto first = gen_square(n, 0);
        for (uint64_t seed = 1; seed < 20; seed++) {
            auto other = gen_square(n, seed);
            EXPECT_EQ(other.size(), first.size());
            EXPECT_EQ(cnot_count(other), cnot_count(first));
        }
    }
    auto two = gen_square(2, 5);
    EXPECT_EQ(two.size(), 14u);
    EXPECT_EQ(cnot_count(two), 6u);
    for (const auto &layer_start : {0u, 7u}) {
        EXPECT_EQ(two[layer_start].kind, GateKind::CNOT);
        EXPECT_EQ(two[layer_start + 3].kind, GateKind::CNOT);
        EXPECT_EQ(two[layer_start + 6].kind, GateKind::CNOT);
    }
}

TEST(gen_square, connectivity_agnostic) {
    auto has_long_cnot = [](const QuantumCircuit &c) {
        for (const auto &g : c) {
            if (g.kind == GateKind::CNOT && (g.qubits[0] > g.qubits[1] + 1 || g.qubits[1] > g.qubits[0] + 1)) {
                return true;
            }
        }
        return false;
    };
    std::vector<double> fraction;
    for (size_t n : {3u, 5u, 7u}) {
        size_t hits = 0;
        for (uint64_t seed = 0; seed < 200; seed++) {
            hits += has_long_cnot(gen_square(n, seed));
        }
        fraction.push_back(hits / 200.0);
    }
    EXPECT_LE(fraction[0], fraction[1]);
    EXPECT_LE(fraction[1], fraction[2]);
    EXPECT_GT(fraction[2], 0.99);
}

TEST(gen_shallow, hadamard_sandwich_around_diagonal_middle) {
    for (size_t n = 2; n <= 16; n++) {
        for (uint64_t seed = 0; seed < 20; seed++) {
            auto c = gen_shallow(n, seed);
            ASSERT_GE(c.size(), 2 * n);
            for (Qubit q = 0; q < n; q++) {
                EXPECT_EQ(c[q], Gate::h(q));
                EXPECT_EQ(c[c.size() - n + q], Gate::h(q));
            }
            auto middle = middle_section(c);
            std::vector<size_t> cz_uses(n, 0);
            for (const auto &g : middle) {
                EXPECT_TRUE(is_diagonal(g.kind)) << g.str();
                if (g.kind == GateKind::CZ) {
                    cz_uses[g.qubits[0]]++;
                    cz_uses[g.qubits[1]]++;
                }
            }
            for (size_t uses : cz_uses) {
                EXPECT_LE(uses, 2u);
            }
            auto layers = compute_layers(QuantumCircuit(n, middle));
            EXPECT_LE(static_cast<double>(layers.size()), 2 * std::max(1.0, std::log2(static_cast<double>(n))));
        }
    }
}

TEST(gen_shallow, empty_middle_is_identity) {
    QuantumCircuit sandwich(4);
    for (int side = 0; side < 2; side++) {
        for (Qubit q = 0; q < 4; q++) {
            sandwich.append(Gate::h(q));
        }
    }
    auto psi = testkit::reference_statevector(sandwich);
    EXPECT_NEAR(std::abs(psi[0]), 1.0, 1e-12);
}

TEST(gen_shallow, middle_gates_commute) {
    std::mt19937_64 rng(107);
    for (size_t n = 2; n <= 5; n++) {
        for (uint64_t seed = 0; seed < 20; seed++) {
            auto c = gen_shallow(n, seed);
            auto middle = middle_section(c);
            std::shuffle(middle.begin(), middle.end(), rng);
            QuantumCircuit shuffled(n);
            for (Qubit q = 0; q < n; q++) {
                shuffled.append(Gate::h(q));
            }
            for (const auto &g : middle) {
                shuffled.append(g);
            }
            for (Qubit q = 0; q < n; q++) {
                shuffled.append(Gate::h(q));
            }
            EXPECT_LT(max_deviation(testkit::reference_statevector(c), testkit::reference_statevector(shuffled)),
                      1e-12);
        }
    }
}

TEST(gen_shallow, depth_grows_slowly) {
    std::vector<double> widths;
    std::vector<double> depths;
    for (size_t n = 4; n <= 128; n *= 2) {
        double total = 0.0;
        for (uint64_t seed = 0; seed < 50; seed++) {
            total += static_cast<double>(compute_layers(gen_shallow(n, seed)).size());
        }
        widths.push_back(static_cast<double>(n));
        depths.push_back(total / 50);
    }
    EXPECT_LT(testkit::loglog_slope(widths, depths), 0.5);
}

TEST(gen_corpus, counts_names_and_determinism) {
    const std::vector<size_t> sizes = {2, 3, 4, 5, 6, 7};
    auto corpus = gen_corpus(BenchClass::Square, sizes, 200, 1);
    EXPECT_EQ(corpus.size(), 1200u);
    EXPECT_EQ(corpus[0].file_name, "square_n2_0000.qasm");
    EXPECT_EQ(corpus.back().file_name, "square_n7_0199.qasm");
    auto again = gen_corpus(BenchClass::Square, sizes, 200, 1);
    for (size_t k = 0; k < corpus.size(); k++) {
        EXPECT_EQ(emit_qasm(corpus[k].circuit), emit_qasm(again[k].circuit));
    }
    auto deep = gen_corpus(BenchClass::Deep, sizes, 3, 1, 9);
    for (const auto &e : deep) {
        EXPECT_EQ(e.spec.depth, 9u);
    }
}

TEST(gen_corpus, square_summary_has_zero_variance) {
    const std::vector<size_t> sizes = {2, 3, 4, 5, 6, 7};
    auto corpus = gen_corpus(BenchClass::Square, sizes, 50, 4);
    auto rows = summarize_gate_counts(corpus);
    ASSERT_EQ(rows.size(), 6u);
    for (size_t k = 0; k < rows.size(); k++) {
        EXPECT_EQ(rows[k].variance_gates, 0.0);
        EXPECT_EQ(rows[k].min_gates, rows[k].max_gates);
        if (k > 0) {
            EXPECT_GT(rows[k].min_gates, rows[k - 1].min_gates);
        }
    }
    auto table = format_gate_count_table(rows);
    EXPECT_NE(table.find("square"), std::string::npos);
}

TEST(write_corpus, files_manifest_and_refusal) {
    TempDir tmp;
    const std::vector<size_t> sizes = {3, 4};
    auto corpus = gen_corpus(BenchClass::Shallow, sizes, 5, 2);
    write_corpus(corpus, tmp.path, false);
    size_t qasm_files = 0;
    for (const auto &entry : fs::directory_iterator(tmp.path)) {
        qasm_files += entry.path().extension() == ".qasm";
    }
    EXPECT_EQ(qasm_files, 10u);

    auto manifest = nlohmann::json::parse(slurp(tmp.path / "manifest.json"));
    ASSERT_EQ(manifest["circuits"].size(), 10u);
    for (const auto &item : manifest["circuits"]) {
        auto circuit = parse_qasm(slurp(tmp.path / item["file"].get<std::string>()));
        EXPECT_EQ(item["gate_count"].get<size_t>(), circuit.size());
        EXPECT_EQ(item["cnot_count"].get<size_t>(), cnot_count(circuit));
        EXPECT_EQ(item["num_qubits"].get<size_t>(), circuit.num_qubits());
    }

    EXPECT_THROW(write_corpus(corpus, tmp.path, false), CorpusExistsError);
    EXPECT_NO_THROW(write_corpus(corpus, tmp.path, true));
}
