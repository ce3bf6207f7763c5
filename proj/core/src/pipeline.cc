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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "hexroute/random.h"
#include "json.hpp"

namespace hexroute {

CompileOutput compile_circuit(const QuantumCircuit &circuit, const RoutingDevice &device, const RoutingParams &params) {
    auto start = std::chrono::steady_clock::now();
    Mapping initial = place(circuit, device.map(), device.calibration());
    RoutingResult routed = route(circuit, initial, device, params);
    auto elapsed = std::chrono::steady_clock::now() - start;
    return CompileOutput{std::move(initial), std::move(routed),
                         std::chrono::duration<double, std::milli>(elapsed).count()};
}

std::vector<Qubit> output_qubits(const Mapping &final_mapping) {
    return final_mapping.virtual_to_physical();
}

std::vector<ParamPoint> param_grid(std::span<const double> alphas, std::span<const size_t> beam_widths,
                                   std::span<const size_t> search_depths) {
    std::vector<ParamPoint> grid;
    for (double a : alphas) {
        for (size_t w : beam_widths) {
            for (size_t k : search_depths) {
                grid.push_back(ParamPoint{a, w, k});
            }
        }
    }
    return grid;
}

RunRecord run_one(const CorpusEntry &entry, const ParamPoint &point, const BenchConfig &config,
                  const RoutingDevice &device, const NoiseModel &noise) {
    RoutingParams params;
    params.alpha = point.alpha;
    params.beam_width = point.beam_width;
    params.search_depth = point.search_depth;
    params.lookahead = config.lookahead;

    CompileOutput compiled = compile_circuit(entry.circuit, device, params);
    const auto &routed = compiled.routing;
    auto measured = output_qubits(routed.final_mapping);
    uint64_t sample_seed =
        derive_seed(config.seed, {static_cast<uint64_t>(entry.spec.cls), entry.spec.num_qubits, entry.index, 1});
    Samples samples = sample_noisy(routed.circuit, noise, config.shots, sample_seed, measured);
    Distribution measured_dist = empirical_distribution(samples, entry.circuit.num_qubits());
    Distribution ideal = ideal_distribution(entry.circuit);

    RunRecord record;
    record.spec = entry.spec;
    record.circuit_id = entry.index;
    record.params = point;
    record.lookahead = config.lookahead;
    record.seed = config.seed;
    record.merit = merit_report(routed.circuit, measured_dist, ideal);
    record.compile_ms = compiled.compile_ms;
    record.swaps_inserted = routed.stats.swaps_inserted;
    return record;
}

size_t effective_threads(size_t requested) {
    size_t threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (const char *cap = std::getenv("HEXROUTE_THREADS")) {
        char *end = nullptr;
        unsigned long long value = std::strtoull(cap, &end, 10);
        if (end != cap && *end == '\0' && value > 0) {
            threads = std::min<size_t>(threads, value);
        }
    }
    return std::max<size_t>(1, threads);
}

std::vector<RunRecord> run_bench(const BenchConfig &config, const RoutingDevice &device, const NoiseModel &noise) {
    if (config.grid.empty()) {
        throw std::invalid_argument("bench: empty parameter grid");
    }
    if (config.shots == 0) {
        throw std::invalid_argument("bench: shots must be at least 1");
    }
    auto corpus = gen_corpus(config.cls, config.sizes, config.count, config.seed, config.depth);
    const size_t tasks = corpus.size() * config.grid.size();
    std::vector<RunRecord> records(tasks);

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (size_t t = next++; t < tasks; t = next++) {
            try {
                const auto &entry = corpus[t / config.grid.size()];
                records[t] = run_one(entry, config.grid[t % config.grid.size()], config, device, noise);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = tasks;
            }
        }
    };
    size_t threads = std::min(effective_threads(config.threads), std::max<size_t>(1, tasks));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < threads; i++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

std::string records_to_csv(std::span<const RunRecord> records) {
    std::string out = "class,n,circuit_id,alpha,w,k,fidelity,hog,l1,cnot_count,cnot_depth,compile_ms\n";
    char row[512];
    for (const auto &r : records) {
        std::snprintf(row, sizeof(row), "%s,%zu,%zu,%.6g,%zu,%zu,%.12g,%.12g,%.12g,%zu,%zu,%.3f\n",
                      std::string(bench_class_name(r.spec.cls)).c_str(), r.spec.num_qubits, r.circuit_id,
                      r.params.alpha, r.params.beam_width, r.params.search_depth, r.merit.hellinger_fidelity,
                      r.merit.hog, r.merit.l1, r.merit.cnot_count, r.merit.cnot_depth, r.compile_ms);
        out += row;
    }
    return out;
}

std::string records_to_json(std::span<const RunRecord> records) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &r : records) {
        nlohmann::ordered_json row;
        row["class"] = bench_class_name(r.spec.cls);
        row["n"] = r.spec.num_qubits;
        row["depth"] = r.spec.depth;
        row["circuit_id"] = r.circuit_id;
        row["circuit_seed"] = r.spec.seed;
        row["alpha"] = r.params.alpha;
        row["w"] = r.params.beam_width;
        row["k"] = r.params.search_depth;
        row["lookahead"] = r.lookahead;
        row["seed"] = r.seed;
        row["fidelity"] = r.merit.hellinger_fidelity;
        row["hog"] = r.merit.hog;
        row["l1"] = r.merit.l1;
        row["cnot_count"] = r.merit.cnot_count;
        row["cnot_depth"] = r.merit.cnot_depth;
        row["swaps_inserted"] = r.swaps_inserted;
        row["compile_ms"] = r.compile_ms;
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

FiveNumberSummary five_number_summary(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("five_number_summary: no values");
    }
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        double pos = q * static_cast<double>(values.size() - 1);
        size_t lo = static_cast<size_t>(pos);
        size_t hi = std::min(lo + 1, values.size() - 1);
        double frac = pos - static_cast<double>(lo);
        return values[lo] + frac * (values[hi] - values[lo]);
    };
    return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

std::string summary_json(std::span<const RunRecord> records) {
    using Key = std::tuple<BenchClass, size_t, double, size_t, size_t>;
    std::map<Key, std::vector<const RunRecord *>> groups;
    for (const auto &r : records) {
        groups[{r.spec.cls, r.spec.num_qubits, r.params.alpha, r.params.beam_width, r.params.search_depth}].push_back(
            &r);
    }
    auto summarize = [](const std::vector<const RunRecord *> &rows, auto field) {
        std::vector<double> values;
        for (const auto *r : rows) {
            values.push_back(field(*r));
        }
        auto s = five_number_summary(std::move(values));
        return nlohmann::ordered_json{
            {"min", s.min}, {"q1", s.q1}, {"median", s.median}, {"q3", s.q3}, {"max", s.max}};
    };
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto &[key, rows] : groups) {
        nlohmann::ordered_json g;
        g["class"] = bench_class_name(std::get<0>(key));
        g["n"] = std::get<1>(key);
        g["alpha"] = std::get<2>(key);
        g["w"] = std::get<3>(key);
        g["k"] = std::get<4>(key);
        g["runs"] = rows.size();
        g["fidelity"] = summarize(rows, [](const RunRecord &r) { return r.merit.hellinger_fidelity; });
        g["hog"] = summarize(rows, [](const RunRecord &r) { return r.merit.hog; });
        g["l1"] = summarize(rows, [](const RunRecord &r) { return r.merit.l1; });
        g["cnot_count"] = summarize(rows, [](const RunRecord &r) { return static_cast<double>(r.merit.cnot_count); });
        g["cnot_depth"] = summarize(rows, [](const RunRecord &r) { return static_cast<double>(r.merit.cnot_depth); });
        g["compile_ms"] = summarize(rows, [](const RunRecord &r) { return r.compile_ms; });
        out.push_back(std::move(g));
    }
    return nlohmann::ordered_json{{"groups", std::move(out)}}.dump(2) + "\n";
}

}  // namespace hexroute
