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
#include "hexroute/metrics.h"
#include "hexroute/sim.h"

using namespace hexroute;

static void BM_statevector(benchmark::State &state) {
    auto circuit = gen_square(static_cast<size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(statevector(circuit));
    }
}
BENCHMARK(BM_statevector)->DenseRange(2, 14, 4);

static void BM_sample_noisy(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    auto circuit = gen_square(n, 1);
    // Square circuits pair arbitrary qubits, so give the noise model every pair.
    std::vector<Edge> all;
    for (Qubit a = 0; a < n; a++) {
        for (Qubit b = a + 1; b < n; b++) {
            all.emplace_back(a, b);
        }
    }
    CouplingMap complete(n, all);
    auto noise = NoiseModel::from_calibration(synthetic_calibration(complete, 1, LognormalProfile{}), n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_noisy(circuit, noise, 1024, 7));
    }
    state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_sample_noisy)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

static void BM_hog_sparse(benchmark::State &state) {
    size_t bits = 20;
    Distribution p(bits);
    Distribution d(bits);
    for (uint64_t x = 0; x < 5000; x++) {
        p.add(x * 97 % (uint64_t{1} << bits), 1.0 / 5000);
        d.add(x * 89 % (uint64_t{1} << bits), 1.0 / 5000);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(hog(d, p));
    }
}
BENCHMARK(BM_hog_sparse);
