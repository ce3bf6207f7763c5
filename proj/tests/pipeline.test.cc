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

#include "hexroute/pipeline.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "support/test_support.h"

using namespace hexroute;

namespace {

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        lines.push_back(line);
    }
    return lines;
}

/// Sets HEXROUTE_THREADS for the lifetime of the object.
class ThreadCap {
   public:
    explicit ThreadCap(const char *value) {
        if (const char *old = std::getenv("HEXROUTE_THREADS")) {
            saved_ = old;
        }
        setenv("HEXROUTE_THREADS", value, 1);
    }
    ~ThreadCap() {
        if (saved_.empty()) {
            unsetenv("HEXROUTE_THREADS");
        } else {
            setenv("HEXROUTE_THREADS", saved_.c_str(), 1);
        }
    }

   private:
    std::string saved_;
};

BenchConfig small_config() {
    BenchConfig config;
    config.cls = BenchClass::Square;
    config.sizes = {2, 3, 4};
    config.count = 4;
    config.seed = 3;
    config.shots = 256;
    const std::vector<double> alphas{0.0, 1.0};
    const std::vector<size_t> widths{2};
    const std::vector<size_t> depths{1, 3};
    config.grid = param_grid(alphas, widths, depths);
    config.threads = 1;
    return config;
}

}  // namespace

TEST(param_grid, cartesian_product_in_order) {
    const std::vector<double> alphas{0.0, 0.5};
    const std::vector<size_t> widths{1, 4};
    const std::vector<size_t> depths{2};
    auto grid = param_grid(alphas, widths, depths);
    ASSERT_EQ(grid.size(), 4u);
    EXPECT_EQ(grid[0], (ParamPoint{0.0, 1, 2}));
    EXPECT_EQ(grid[1], (ParamPoint{0.0, 4, 2}));
    EXPECT_EQ(grid[2], (ParamPoint{0.5, 1, 2}));
    EXPECT_EQ(grid[3], (ParamPoint{0.5, 4, 2}));
    EXPECT_TRUE(param_grid({}, widths, depths).empty());
}

TEST(five_number_summary, linear_interpolation) {
    auto s = five_number_summary({4, 1, 3, 2});
    EXPECT_DOUBLE_EQ(s.min, 1.0);
    EXPECT_DOUBLE_EQ(s.q1, 1.75);
    EXPECT_DOUBLE_EQ(s.median, 2.5);
    EXPECT_DOUBLE_EQ(s.q3, 3.25);
    EXPECT_DOUBLE_EQ(s.max, 4.0);

    auto one = five_number_summary({7});
    EXPECT_EQ(one.min, 7.0);
    EXPECT_EQ(one.median, 7.0);
    EXPECT_EQ(one.max, 7.0);
    EXPECT_THROW(five_number_summary({}), std::invalid_argument);
}

TEST(five_number_summary, ordered_and_bounded) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 300; trial++) {
        std::vector<double> v(1 + rng() % 40);
        for (auto &x : v) {
            x = u(rng);
        }
        auto s = five_number_summary(v);
        EXPECT_EQ(s.min, *std::min_element(v.begin(), v.end()));
        EXPECT_EQ(s.max, *std::max_element(v.begin(), v.end()));
        EXPECT_LE(s.min, s.q1);
        EXPECT_LE(s.q1, s.median);
        EXPECT_LE(s.median, s.q3);
        EXPECT_LE(s.q3, s.max);
    }
}

TEST(effective_threads, env_caps_request) {
    {
        ThreadCap cap("2");
        EXPECT_EQ(effective_threads(8), 2u);
        EXPECT_EQ(effective_threads(1), 1u);
        EXPECT_LE(effective_threads(0), 2u);
    }
    {
        ThreadCap cap("garbage");
        EXPECT_EQ(effective_threads(3), 3u);
    }
    EXPECT_GE(effective_threads(0), 1u);
}

TEST(run_bench, canonical_order_and_csv_layout) {
    auto map = heavy_hex_device(27);
    RoutingDevice device(map, synthetic_calibration(map, 3, LognormalProfile{}));
    auto noise = NoiseModel::from_calibration(device.calibration(), map.num_qubits());
    auto config = small_config();
    auto records = run_bench(config, device, noise);
    ASSERT_EQ(records.size(), config.sizes.size() * config.count * config.grid.size());

    size_t t = 0;
    for (size_t n : config.sizes) {
        for (size_t id = 0; id < config.count; id++) {
            for (const auto &point : config.grid) {
                const auto &r = records[t++];
                EXPECT_EQ(r.spec.num_qubits, n);
                EXPECT_EQ(r.circuit_id, id);
                EXPECT_EQ(r.params, point);
                EXPECT_EQ(r.lookahead, config.lookahead);
            }
        }
    }

    auto rows = lines_of(records_to_csv(records));
    ASSERT_EQ(rows.size(), records.size() + 1);
    EXPECT_EQ(rows[0], "class,n,circuit_id,alpha,w,k,fidelity,hog,l1,cnot_count,cnot_depth,compile_ms");
    for (size_t k = 1; k < rows.size(); k++) {
        EXPECT_EQ(std::count(rows[k].begin(), rows[k].end(), ','), 11) << rows[k];
        EXPECT_EQ(rows[k].rfind("square,", 0), 0u);
    }

    auto json_rows = nlohmann::json::parse(records_to_json(records));
    ASSERT_EQ(json_rows.size(), records.size());
    EXPECT_EQ(json_rows[0]["class"], "square");
    EXPECT_EQ(json_rows[0]["n"], 2);
}

TEST(run_bench, deterministic_across_thread_counts) {
    auto map = heavy_hex_device(27);
    RoutingDevice device(map, synthetic_calibration(map, 5, LognormalProfile{}));
    auto noise = NoiseModel::from_calibration(device.calibration(), map.num_qubits());
    auto config = small_config();
    auto serial = run_bench(config, device, noise);
    config.threads = 3;
    auto parallel = run_bench(config, device, noise);
    ASSERT_EQ(serial.size(), parallel.size());
    for (size_t k = 0; k < serial.size(); k++) {
        EXPECT_EQ(serial[k].spec.seed, parallel[k].spec.seed);
        EXPECT_EQ(serial[k].params, parallel[k].params);
        EXPECT_EQ(serial[k].merit.hellinger_fidelity, parallel[k].merit.hellinger_fidelity);
        EXPECT_EQ(serial[k].merit.hog, parallel[k].merit.hog);
        EXPECT_EQ(serial[k].merit.l1, parallel[k].merit.l1);
        EXPECT_EQ(serial[k].merit.cnot_count, parallel[k].merit.cnot_count);
        EXPECT_EQ(serial[k].merit.cnot_depth, parallel[k].merit.cnot_depth);
        EXPECT_EQ(serial[k].swaps_inserted, parallel[k].swaps_inserted);
    }
}

TEST(run_bench, noiseless_runs_match_ideal) {
    auto map = heavy_hex_device(27);
    RoutingDevice device(map, ideal_calibration(map));
    auto noise = NoiseModel::noiseless(map);
    BenchConfig config;
    config.cls = BenchClass::Shallow;
    config.sizes = {2, 4};
    config.count = 3;
    config.shots = 8192;
    config.threads = 1;
    for (const auto &r : run_bench(config, device, noise)) {
        EXPECT_GT(r.merit.hellinger_fidelity, 0.98);
    }
}

TEST(run_bench, rejects_bad_config) {
    auto map = heavy_hex_device(27);
    RoutingDevice device(map, ideal_calibration(map));
    auto noise = NoiseModel::noiseless(map);
    auto config = small_config();
    config.grid.clear();
    EXPECT_THROW(run_bench(config, device, noise), std::invalid_argument);
    config = small_config();
    config.shots = 0;
    EXPECT_THROW(run_bench(config, device, noise), std::invalid_argument);
}

TEST(run_one, sampling_seed_ignores_routing_params) {
    // With a compliant circuit every parameter point routes identically, so
    // the shared sampling seed must give identical metrics.
    auto map = line_map(3);
    RoutingDevice device(map, synthetic_calibration(map, 1, UniformProfile{}));
    auto noise = NoiseModel::from_calibration(device.calibration(), map.num_qubits());
    BenchConfig config;
    config.shots = 512;
    CorpusEntry entry{BenchSpec{BenchClass::Square, 2, 1, 9}, 0, "bell.qasm",
                      QuantumCircuit(2, {Gate::h(0), Gate::cnot(0, 1)})};
    auto a = run_one(entry, ParamPoint{0.0, 1, 1}, config, device, noise);
    auto b = run_one(entry, ParamPoint{1.0, 4, 4}, config, device, noise);
    EXPECT_EQ(a.merit.hellinger_fidelity, b.merit.hellinger_fidelity);
    EXPECT_EQ(a.merit.hog, b.merit.hog);
}

TEST(summary_json, groups_by_parameter_point) {
    auto map = heavy_hex_device(27);
    RoutingDevice device(map, synthetic_calibration(map, 3, LognormalProfile{}));
    auto noise = NoiseModel::from_calibration(device.calibration(), map.num_qubits());
    auto config = small_config();
    auto records = run_bench(config, device, noise);
    auto doc = nlohmann::json::parse(summary_json(records));
    const auto &groups = doc["groups"];
    ASSERT_EQ(groups.size(), config.sizes.size() * config.grid.size());
    for (const auto &g : groups) {
        EXPECT_EQ(g["runs"], config.count);
        for (const char *metric : {"fidelity", "hog", "l1", "cnot_count", "cnot_depth", "compile_ms"}) {
            EXPECT_LE(g[metric]["min"].get<double>(), g[metric]["median"].get<double>());
            EXPECT_LE(g[metric]["median"].get<double>(), g[metric]["max"].get<double>());
        }
    }
}
