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

#ifndef HEXROUTE_PIPELINE_H
#define HEXROUTE_PIPELINE_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hexroute/benchgen.h"
#include "hexroute/metrics.h"
#include "hexroute/placement.h"
#include "hexroute/routing.h"
#include "hexroute/sim.h"

namespace hexroute {

struct CompileOutput {
    Mapping initial_mapping;
    RoutingResult routing;
    double compile_ms = 0.0;
};

/// Placement followed by routing; `compile_ms` covers both.
CompileOutput compile_circuit(const QuantumCircuit &circuit, const RoutingDevice &device, const RoutingParams &params);

/// Physical qubit holding each virtual qubit at the end of the routed circuit.
std::vector<Qubit> output_qubits(const Mapping &final_mapping);

struct ParamPoint {
    double alpha = 0.5;
    size_t beam_width = 4;
    size_t search_depth = 4;
    bool operator==(const ParamPoint &other) const = default;
};

/// Cartesian product in (alpha, beam_width, search_depth) order.
std::vector<ParamPoint> param_grid(std::span<const double> alphas, std::span<const size_t> beam_widths,
                                   std::span<const size_t> search_depths);

struct BenchConfig {
    BenchClass cls = BenchClass::Square;
    std::vector<size_t> sizes{2, 3, 4, 5, 6, 7};
    size_t count = 200;
    std::optional<size_t> depth;
    uint64_t seed = 0;
    std::vector<ParamPoint> grid{ParamPoint{}};
    size_t lookahead = 5;
    size_t shots = 8192;
    /// Worker threads; 0 means hardware concurrency. Capped by HEXROUTE_THREADS.
    size_t threads = 0;
};

struct RunRecord {
    BenchSpec spec;
    size_t circuit_id = 0;
    ParamPoint params;
    size_t lookahead = 0;
    uint64_t seed = 0;
    MeritReport merit;
    double compile_ms = 0.0;
    size_t swaps_inserted = 0;
};

/// Compiles, samples and scores one circuit. Sampling uses a seed that
/// depends on the circuit but not on the routing parameters.
RunRecord run_one(const CorpusEntry &entry, const ParamPoint &point, const BenchConfig &config,
                  const RoutingDevice &device, const NoiseModel &noise);

/// One record per (circuit, parameter point), ordered by class, n,
/// circuit id and grid position regardless of thread count.
std::vector<RunRecord> run_bench(const BenchConfig &config, const RoutingDevice &device, const NoiseModel &noise);

/// Number of worker threads after applying the HEXROUTE_THREADS cap.
size_t effective_threads(size_t requested);

/// Header plus one row per record:
/// class,n,circuit_id,alpha,w,k,fidelity,hog,l1,cnot_count,cnot_depth,compile_ms
std::string records_to_csv(std::span<const RunRecord> records);
std::string records_to_json(std::span<const RunRecord> records);

struct FiveNumberSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Quartiles by linear interpolation between order statistics.
/// Throws std::invalid_argument on empty input.
FiveNumberSummary five_number_summary(std::vector<double> values);

/// Per (class, n, alpha, w, k) group, five-number summaries of every metric.
std::string summary_json(std::span<const RunRecord> records);

}  // namespace hexroute

#endif
