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

#include "hexroute/device.h"

#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <set>

#include "support/test_support.h"

using namespace hexroute;

namespace {

const std::string kDataDir = HEXROUTE_TEST_DATA_DIR;

bool bfs_connected(const CouplingMap &map) {
    std::vector<bool> seen(map.num_qubits(), false);
    std::queue<Qubit> todo;
    todo.push(0);
    seen[0] = true;
    size_t reached = 1;
    while (!todo.empty()) {
        Qubit q = todo.front();
        todo.pop();
        for (const auto &e : map.edges()) {
            Qubit other = e.a == q ? e.b : e.b == q ? e.a : Mapping::unmapped;
            if (other != Mapping::unmapped && !seen[other]) {
                seen[other] = true;
                reached++;
                todo.push(other);
            }
        }
    }
    return reached == map.num_qubits();
}

std::map<size_t, size_t> degree_histogram(const CouplingMap &map) {
    std::vector<size_t> degree(map.num_qubits(), 0);
    for (const auto &e : map.edges()) {
        degree[e.a]++;
        degree[e.b]++;
    }
    std::map<size_t, size_t> histogram;
    for (size_t d : degree) {
        histogram[d]++;
    }
    return histogram;
}

void expect_matrices_near(const DeviceMatrices &actual, const DeviceMatrices &expected, double tol) {
    size_t n = expected.distance.size();
    ASSERT_EQ(actual.distance.size(), n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            EXPECT_EQ(actual.distance(i, j), expected.distance(i, j)) << i << "," << j;
            EXPECT_NEAR(actual.reliability(i, j), expected.reliability(i, j), tol) << i << "," << j;
        }
    }
}

CalibrationData line3_calibration() {
    auto map = line_map(3);
    auto calib = ideal_calibration(map);
    calib.cnot_success[Edge(0, 1)] = 0.99;
    calib.cnot_success[Edge(1, 2)] = 0.95;
    return calib;
}

}  // namespace

TEST(coupling_map, rejects_bad_graphs) {
    EXPECT_THROW(CouplingMap(2, {Edge(0, 0)}), DeviceValidationError);
    EXPECT_THROW(CouplingMap(3, {Edge(0, 1)}), DeviceValidationError);
    EXPECT_THROW(CouplingMap(2, {Edge(0, 2)}), DeviceValidationError);
    EXPECT_NO_THROW(CouplingMap(1, {}));
}

TEST(heavy_hex_map, single_cell_is_a_twelve_ring) {
    auto map = heavy_hex_map(1, 1);
    EXPECT_EQ(map.num_qubits(), 12u);
    EXPECT_EQ(map.edges().size(), 12u);
    EXPECT_EQ(degree_histogram(map), (std::map<size_t, size_t>{{2, 12}}));
    EXPECT_TRUE(bfs_connected(map));
}

TEST(heavy_hex_map, lattices_are_connected_with_low_degree) {
    for (size_t rows = 1; rows <= 4; rows++) {
        for (size_t cols = 1; cols <= 5; cols++) {
            auto map = heavy_hex_map(rows, cols);
            EXPECT_TRUE(bfs_connected(map)) << rows << "x" << cols;
            for (const auto &[degree, count] : degree_histogram(map)) {
                EXPECT_GE(degree, 2u);
                EXPECT_LE(degree, 3u);
            }
        }
    }
}

TEST(heavy_hex_device, supported_sizes) {
    for (size_t n : {27u, 65u, 127u, 433u}) {
        auto map = heavy_hex_device(n);
        EXPECT_EQ(map.num_qubits(), n);
        EXPECT_TRUE(bfs_connected(map)) << n;
        for (const auto &[degree, count] : degree_histogram(map)) {
            EXPECT_GE(degree, 1u) << n;
            EXPECT_LE(degree, 3u) << n;
        }
    }
    EXPECT_THROW(heavy_hex_device(28), std::invalid_argument);
}

TEST(heavy_hex_device, sixty_five_matches_manhattan_shape) {
    auto map = heavy_hex_device(65);
    auto histogram = degree_histogram(map);
    EXPECT_EQ(map.edges().size(), 72u);
    EXPECT_EQ(histogram[1], 2u);
    EXPECT_EQ(histogram.count(4), 0u);
}

TEST(heavy_hex_fragment7, shape) {
    auto map = heavy_hex_fragment7();
    EXPECT_EQ(map.num_qubits(), 7u);
    std::vector<Edge> expected = {Edge(0, 1), Edge(1, 2), Edge(1, 3), Edge(3, 5), Edge(4, 5), Edge(5, 6)};
    EXPECT_EQ(map.edges(), expected);
}

TEST(calibration_json, example_fixture_parses) {
    auto map = load_coupling_map(kDataDir + "/fragment7_device.json");
    EXPECT_EQ(map, heavy_hex_fragment7());
    auto calib = load_calibration(kDataDir + "/fragment7_calibration.json", map);
    EXPECT_EQ(calib.cnot(0, 1), 0.99);
    EXPECT_EQ(calib.cnot(1, 0), 0.99);
}

TEST(calibration_json, missing_readout_names_the_field) {
    auto map = line_map(5);
    std::string text = R"({"num_qubits": 5,
        "cnot": [{"edge": [0,1], "success": 0.9}, {"edge": [1,2], "success": 0.9},
                 {"edge": [2,3], "success": 0.9}, {"edge": [3,4], "success": 0.9}],
        "readout": [0.9, 0.9, 0.9],
        "single_qubit": [1, 1, 1, 1, 1]})";
    try {
        parse_calibration(text, map);
        FAIL() << "accepted a short readout list";
    } catch (const DeviceValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("readout[3]"), std::string::npos) << e.what();
    }
}

TEST(calibration_json, rejects_bad_rates_and_edges) {
    auto map = line_map(2);
    auto with_cnot = [](const std::string &cnot) {
        return R"({"num_qubits": 2, "cnot": )" + cnot + R"(, "readout": [1, 1], "single_qubit": [1, 1]})";
    };
    EXPECT_THROW(parse_calibration(with_cnot(R"([{"edge": [0,1], "success": 0}])"), map), DeviceValidationError);
    EXPECT_THROW(parse_calibration(with_cnot(R"([{"edge": [0,1], "success": 1.5}])"), map), DeviceValidationError);
    EXPECT_THROW(parse_calibration(with_cnot(R"([])"), map), DeviceValidationError);
    EXPECT_THROW(parse_calibration(with_cnot(R"([{"edge": [0,1], "success": "x"}])"), map), DeviceParseError);
    EXPECT_THROW(parse_calibration("{not json", map), DeviceParseError);
}

TEST(calibration_json, all_ones_and_round_trip) {
    auto map = heavy_hex_device(27);
    auto ideal = ideal_calibration(map);
    EXPECT_NO_THROW(validate_calibration(ideal, map));
    EXPECT_EQ(parse_calibration(calibration_to_json(ideal, 27), map), ideal);

    auto noisy = synthetic_calibration(map, 3, LognormalProfile{});
    EXPECT_EQ(parse_calibration(calibration_to_json(noisy, 27), map), noisy);
    EXPECT_EQ(parse_coupling_map(coupling_map_to_json(map)), map);
}

TEST(swap_reliability, cubes_the_cnot_rate) {
    auto map = line_map(2);
    auto calib = ideal_calibration(map);
    EXPECT_EQ(swap_reliability(calib, Edge(0, 1)), 1.0);
    calib.cnot_success[Edge(0, 1)] = 0.99;
    EXPECT_NEAR(swap_reliability(calib, Edge(0, 1)), 0.970299, 1e-15);
    calib.cnot_success[Edge(0, 1)] = 0.95;
    EXPECT_NEAR(swap_reliability(calib, Edge(0, 1)), 0.857375, 1e-15);
    EXPECT_THROW(swap_reliability(calib, Edge(0, 5)), std::out_of_range);
}

TEST(build_matrices, three_qubit_line) {
    auto m = build_matrices(line_map(3), line3_calibration());
    EXPECT_EQ(m.distance(0, 1), 0u);
    EXPECT_EQ(m.distance(0, 2), 1u);
    EXPECT_EQ(m.distance(0, 0), 0u);
    EXPECT_EQ(m.reliability(0, 1), 1.0);
    EXPECT_NEAR(m.reliability(0, 2), 0.970299, 1e-12);
    // Moving qubit 2 next to qubit 0 needs the SWAP on the weaker edge.
    EXPECT_NEAR(m.reliability(2, 0), 0.857375, 1e-12);
}

TEST(build_matrices, ideal_calibration_is_all_ones) {
    auto map = heavy_hex_device(65);
    auto m = build_matrices(map, ideal_calibration(map));
    for (double r : m.reliability.data()) {
        EXPECT_EQ(r, 1.0);
    }
}

TEST(build_matrices, rejects_partial_calibration) {
    auto map = line_map(3);
    auto calib = ideal_calibration(map);
    calib.cnot_success.erase(Edge(1, 2));
    EXPECT_THROW(build_matrices(map, calib), std::out_of_range);
}

TEST(build_matrices, matches_path_enumeration_on_small_graphs) {
    std::mt19937_64 rng(3);
    for (size_t n = 1; n <= 6; n++) {
        for (const auto &map : testkit::connected_graphs_up_to_isomorphism(n)) {
            auto calib = testkit::random_calibration(map, rng);
            expect_matrices_near(build_matrices(map, calib), testkit::brute_force_matrices(map, calib), 1e-12);
        }
    }
}

TEST(build_matrices, matches_dijkstra_on_heavy_hex) {
    std::mt19937_64 rng(8);
    for (const auto &map : {heavy_hex_map(1, 1), heavy_hex_device(27)}) {
        for (int trial = 0; trial < 5; trial++) {
            auto calib = testkit::random_calibration(map, rng);
            expect_matrices_near(build_matrices(map, calib), testkit::dijkstra_matrices(map, calib), 1e-12);
        }
    }
}

TEST(build_matrices, structural_invariants) {
    std::mt19937_64 rng(13);
    auto map = heavy_hex_device(27);
    auto calib = testkit::random_calibration(map, rng);
    auto m = build_matrices(map, calib);
    size_t n = map.num_qubits();
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            bool near = i == j || map.adjacent(i, j);
            EXPECT_EQ(m.distance(i, j) == 0, near);
            if (near) {
                EXPECT_EQ(m.reliability(i, j), 1.0);
            }
            EXPECT_GT(m.reliability(i, j), 0.0);
            EXPECT_LE(m.reliability(i, j), 1.0);
            for (size_t k = 0; k < n; k++) {
                EXPECT_LE(m.distance(i, j), m.distance(i, k) + 1 + m.distance(k, j));
            }
        }
    }
}

TEST(build_matrices, monotone_in_cnot_rates_and_distance_ignores_calibration) {
    std::mt19937_64 rng(21);
    auto map = heavy_hex_map(1, 2);
    for (int trial = 0; trial < 40; trial++) {
        auto calib = testkit::random_calibration(map, rng);
        auto before = build_matrices(map, calib);
        auto better = calib;
        const auto &edge = map.edges()[rng() % map.edges().size()];
        double &mu = better.cnot_success[edge];
        mu += (1.0 - mu) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        auto after = build_matrices(map, better);
        EXPECT_EQ(after.distance, before.distance);
        for (size_t k = 0; k < before.reliability.data().size(); k++) {
            EXPECT_GE(after.reliability.data()[k], before.reliability.data()[k] - 1e-15);
        }
    }
}

TEST(build_matrices, readout_factor_is_opt_in) {
    auto map = line_map(3);
    auto calib = line3_calibration();
    calib.readout_fidelity = {0.9, 0.8, 0.7};
    auto plain = build_matrices(map, calib);
    auto with_readout = build_matrices(map, calib, MatrixOptions{true});
    EXPECT_NEAR(plain.reliability(0, 2), 0.970299, 1e-12);
    EXPECT_NEAR(with_readout.reliability(0, 2), 0.970299 * 0.9 * 0.8, 1e-12);
}

TEST(normalize_for_scoring, worked_examples) {
    DistanceMatrix d(2, 0);
    d(0, 1) = 1;
    d(1, 0) = 2;
    ReliabilityMatrix r(2, 1.0);
    auto norm = normalize_for_scoring(r, d);
    EXPECT_EQ(norm.distance(0, 0), 0.0);
    EXPECT_EQ(norm.distance(0, 1), 0.5);
    EXPECT_EQ(norm.distance(1, 0), 1.0);
    for (double v : norm.reliability.data()) {
        EXPECT_EQ(v, 1.0);
    }
    auto flat = normalize_for_scoring(r, DistanceMatrix(2, 0));
    for (double v : flat.distance.data()) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(normalize_for_scoring, monotone_and_in_range) {
    std::mt19937_64 rng(5);
    auto map = heavy_hex_device(27);
    auto m = build_matrices(map, testkit::random_calibration(map, rng));
    auto norm = normalize_for_scoring(m.reliability, m.distance);
    const auto &r = m.reliability.data();
    const auto &d = m.distance.data();
    const auto &rn = norm.reliability.data();
    const auto &dn = norm.distance.data();
    for (size_t a = 0; a < r.size(); a++) {
        EXPECT_GE(rn[a], 0.0);
        EXPECT_LE(rn[a], 1.0);
        EXPECT_GE(dn[a], 0.0);
        EXPECT_LE(dn[a], 1.0);
        if (r[a] == 1.0) {
            EXPECT_EQ(rn[a], 1.0);
        }
        if (d[a] == 0) {
            EXPECT_EQ(dn[a], 0.0);
        }
    }
    for (int trial = 0; trial < 2000; trial++) {
        size_t a = rng() % r.size();
        size_t b = rng() % r.size();
        if (r[a] < r[b]) {
            EXPECT_LE(rn[a], rn[b]);
        }
        if (d[a] < d[b]) {
            EXPECT_LT(dn[a], dn[b]);
        }
    }
}

TEST(synthetic_calibration, profiles) {
    auto map = heavy_hex_device(27);
    auto uniform = synthetic_calibration(map, 1, UniformProfile{0.99});
    for (const auto &[edge, mu] : uniform.cnot_success) {
        EXPECT_EQ(mu, 0.99);
    }

    auto hotspot = synthetic_calibration(map, 1, parse_profile("hotspot:0-1@0.6"));
    for (const auto &[edge, mu] : hotspot.cnot_success) {
        EXPECT_EQ(mu, edge == Edge(0, 1) ? 0.6 : 0.99);
    }

    auto a = synthetic_calibration(map, 77, LognormalProfile{});
    auto b = synthetic_calibration(map, 77, LognormalProfile{});
    auto c = synthetic_calibration(map, 78, LognormalProfile{});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_NO_THROW(validate_calibration(a, map));
    for (const auto &[edge, mu] : a.cnot_success) {
        EXPECT_GE(mu, 0.5);
        EXPECT_LT(mu, 1.0);
    }
}

TEST(parse_profile, syntax) {
    EXPECT_TRUE(std::holds_alternative<UniformProfile>(parse_profile("uniform:0.97")));
    EXPECT_EQ(std::get<UniformProfile>(parse_profile("uniform:0.97")).cnot, 0.97);
    auto lognormal = std::get<LognormalProfile>(parse_profile("lognormal:0.02:0.3"));
    EXPECT_EQ(lognormal.cnot_error_mean, 0.02);
    EXPECT_EQ(lognormal.relative_sd, 0.3);
    auto hotspot = std::get<HotspotProfile>(parse_profile("hotspot:0-1@0.6,4-5@0.7"));
    ASSERT_EQ(hotspot.bad_edges.size(), 2u);
    EXPECT_EQ(hotspot.bad_edges[1].first, Edge(4, 5));
    EXPECT_EQ(hotspot.bad_edges[1].second, 0.7);
    EXPECT_THROW(parse_profile("gaussian:1"), std::invalid_argument);
    EXPECT_THROW(parse_profile("uniform:abc"), std::invalid_argument);
    EXPECT_THROW(parse_profile("hotspot:0-1"), std::invalid_argument);
}
