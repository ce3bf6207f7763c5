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

#include "hexroute/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexroute {

static void require_same_space(const Distribution &d, const Distribution &p) {
    if (d.num_bits() != p.num_bits()) {
        throw std::invalid_argument(
            "distributions over " + std::to_string(d.num_bits()) + " and " + std::to_string(p.num_bits()) +
            " bits are not comparable");
    }
}

double hellinger_fidelity(const Distribution &d, const Distribution &p) {
    require_same_space(d, p);
    double overlap = 0.0;
    for (const auto &[x, dx] : d.support()) {
        overlap += std::sqrt(dx * p(x));
    }
    return std::clamp(overlap * overlap, 0.0, 1.0);
}

double outcome_median(const Distribution &p) {
    auto nonzero = p.support();
    std::vector<double> values;
    values.reserve(nonzero.size());
    for (const auto &[x, px] : nonzero) {
        values.push_back(px);
    }
    std::sort(values.begin(), values.end());
    // Order statistics over all 2^n outcomes; the first `zeros` are implicit zeros.
    const uint64_t total = p.outcome_count();
    const uint64_t zeros = total - values.size();
    auto order_stat = [&](uint64_t k) { return k < zeros ? 0.0 : values[k - zeros]; };
    if (total % 2 == 1) {
        return order_stat(total / 2);
    }
    return (order_stat(total / 2 - 1) + order_stat(total / 2)) / 2.0;
}

double hog(const Distribution &d, const Distribution &p) {
    require_same_space(d, p);
    const double median = outcome_median(p);
    double heavy = 0.0;
    for (const auto &[x, dx] : d.support()) {
        if (p(x) > median) {
            heavy += dx;
        }
    }
    return std::clamp(heavy, 0.0, 1.0);
}

double l1_distance(const Distribution &d, const Distribution &p) {
    require_same_space(d, p);
    double sum = 0.0;
    for (const auto &[x, dx] : d.support()) {
        sum += std::abs(dx - p(x));
    }
    for (const auto &[x, px] : p.support()) {
        if (d(x) == 0.0) {
            sum += px;
        }
    }
    return std::clamp(sum, 0.0, 2.0);
}

MeritReport merit_report(const QuantumCircuit &routed, const Distribution &d, const Distribution &p) {
    MeritReport report;
    report.hellinger_fidelity = hellinger_fidelity(d, p);
    report.hog = hog(d, p);
    report.l1 = l1_distance(d, p);
    report.cnot_count = cnot_count(routed);
    report.cnot_depth = cnot_depth(routed);
    return report;
}

}  // namespace hexroute
