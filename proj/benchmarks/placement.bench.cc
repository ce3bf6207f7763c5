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

#include <benchmark/benchmark.h>

#include "hexroute/device.h"
#include "hexroute/placement.h"

using namespace hexroute;

static void BM_find_line(benchmark::State &state) {
    auto map = heavy_hex_device(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_line(map));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_find_line)->Arg(27)->Arg(65)->Arg(127)->Arg(433)->Complexity();

static void BM_place_full_width(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    auto map = heavy_hex_device(n);
    auto calib = synthetic_calibration(map, 1, LognormalProfile{});
    QuantumCircuit circuit(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(place(circuit, map, calib));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_place_full_width)->Arg(27)->Arg(65)->Arg(127)->Arg(433)->Complexity();

static void BM_build_matrices(benchmark::State &state) {
    auto map = heavy_hex_device(static_cast<size_t>(state.range(0)));
    auto calib = synthetic_calibration(map, 1, LognormalProfile{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_matrices(map, calib));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_build_matrices)->Arg(27)->Arg(65)->Arg(127)->Complexity(benchmark::oNCubed);
