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

#ifndef HEXROUTE_METRICS_H
#define HEXROUTE_METRICS_H

#include <cstddef>

#include "hexroute/circuit.h"
#include "hexroute/sim.h"

namespace hexroute {

/// (sum_x sqrt(D(x) p(x)))^2, clamped to [0, 1].
double hellinger_fidelity(const Distribution &d, const Distribution &p);

/// Median of {p(x) : x in {0,1}^n}, zeros included. For an even number of
/// outcomes this is the mean of the two central order statistics.
double outcome_median(const Distribution &p);

/// Heavy output generation probability: the mass D puts on outcomes whose
/// ideal probability is strictly greater than outcome_median(p).
double hog(const Distribution &d, const Distribution &p);

/// sum_x |D(x) - p(x)| over all outcomes.
double l1_distance(const Distribution &d, const Distribution &p);

struct MeritReport {
    double hellinger_fidelity = 0.0;
    double hog = 0.0;
    double l1 = 0.0;
    size_t cnot_count = 0;
    size_t cnot_depth = 0;
};

/// All figures of merit for one compiled circuit. `d` is the measured
/// distribution of `routed`, `p` the ideal distribution of the source circuit.
MeritReport merit_report(const QuantumCircuit &routed, const Distribution &d, const Distribution &p);

}  // namespace hexroute

#endif
