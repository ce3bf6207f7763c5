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

#include "hexroute/benchgen.h"
#include "hexroute/placement.h"
#include "hexroute/routing.h"

using namespace hexroute;

// Deep circuits on 20 qubits with a growing gadget count.
static void BM_route_deep(benchmark::State &state) {
    auto map = heavy_hex_device(65);
    RoutingDevice device(map, synthetic_calibration(map, 1, LognormalProfile{}));
    auto circuit = gen_deep(20, static_cast<size_t>(state.range(0)), 3);
    auto initial = place(circuit, map, device.calibration());
    for (auto _ : state) {
        benchmark::DoNotOptimize(route(circuit, initial, device));
    }
    state.SetComplexityN(static_cast<int64_t>(circuit.size()));
}
BENCHMARK(BM_route_deep)->Arg(10)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_route_square(benchmark::State &state) {
    auto map = heavy_hex_device(27);
    RoutingDevice device(map, synthetic_calibration(map, 1, LognormalProfile{}));
    auto circuit = gen_square(static_cast<size_t>(state.range(0)), 5);
    auto initial = place(circuit, map, device.calibration());
    for (auto _ : state) {
        benchmark::DoNotOptimize(route(circuit, initial, device));
    }
}
BENCHMARK(BM_route_square)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);

static void BM_beam_width(benchmark::State &state) {
    auto map = heavy_hex_device(27);
    RoutingDevice device(map, synthetic_calibration(map, 1, LognormalProfile{}));
    auto circuit = gen_square(7, 5);
    auto initial = place(circuit, map, device.calibration());
    RoutingParams params;
    params.beam_width = static_cast<size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(route(circuit, initial, device, params));
    }
}
BENCHMARK(BM_beam_width)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
