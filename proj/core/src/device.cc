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

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace hexroute {

using nlohmann::json;

CouplingMap::CouplingMap(size_t num_qubits, std::vector<Edge> edges) : neighbors_(num_qubits) {
    if (num_qubits == 0) {
        throw DeviceValidationError("num_qubits: coupling map needs at least one qubit");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto &e : edges) {
        if (e.a == e.b) {
            throw DeviceValidationError("edges: self-loop on qubit " + std::to_string(e.a));
        }
        if (e.b >= num_qubits) {
            throw DeviceValidationError(
                "edges: [" + std::to_string(e.a) + "," + std::to_string(e.b) + "] references a qubit >= " +
                std::to_string(num_qubits));
        }
        neighbors_[e.a].push_back(e.b);
        neighbors_[e.b].push_back(e.a);
    }
    for (auto &nbrs : neighbors_) {
        std::sort(nbrs.begin(), nbrs.end());
    }
    edges_ = std::move(edges);

    std::vector<bool> seen(num_qubits, false);
    std::vector<Qubit> stack{0};
    seen[0] = true;
    size_t reached = 1;
    while (!stack.empty()) {
        Qubit q = stack.back();
        stack.pop_back();
        for (Qubit m : neighbors_[q]) {
            if (!seen[m]) {
                seen[m] = true;
                reached++;
                stack.push_back(m);
            }
        }
    }
    if (reached != num_qubits) {
        throw DeviceValidationError("edges: coupling map is disconnected");
    }
}

bool CouplingMap::adjacent(Qubit a, Qubit b) const {
    if (a >= neighbors_.size()) {
        return false;
    }
    const auto &nbrs = neighbors_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

namespace {

/// Builds the brick-wall heavy-hex lattice; optionally adds the two open-end
/// stubs used by IBM-style layouts.
CouplingMap build_heavy_hex(size_t rows, size_t cols, bool stubs) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("heavy_hex_map needs rows >= 1 and cols >= 1");
    }
    auto row_offset = [](size_t r) -> int64_t {
        return 2 * static_cast<int64_t>(r % 2);
    };
    const int64_t width = 4 * static_cast<int64_t>(cols);

    // Chain l spans the cells of rows l-1 and l.
    std::vector<std::pair<int64_t, int64_t>> chain_span(rows + 1);
    for (size_t l = 0; l <= rows; l++) {
        int64_t lo = std::numeric_limits<int64_t>::max();
        int64_t hi = std::numeric_limits<int64_t>::min();
        for (size_t r : {l - 1, l}) {
            if (r < rows) {
                lo = std::min(lo, row_offset(r));
                hi = std::max(hi, row_offset(r) + width);
            }
        }
        chain_span[l] = {lo, hi};
    }
    if (stubs) {
        chain_span[0].second += 1;
        chain_span[rows].first -= 1;
    }

    // Label row-major: chain, then the bridges under it.
    std::vector<std::map<int64_t, Qubit>> chain_label(rows + 1);
    std::vector<std::map<int64_t, Qubit>> bridge_label(rows);
    Qubit next = 0;
    for (size_t l = 0; l <= rows; l++) {
        for (int64_t x = chain_span[l].first; x <= chain_span[l].second; x++) {
            chain_label[l][x] = next++;
        }
        if (l < rows) {
            for (size_t c = 0; c <= cols; c++) {
                bridge_label[l][row_offset(l) + 4 * static_cast<int64_t>(c)] = next++;
            }
        }
    }

    std::vector<Edge> edges;
    for (size_t l = 0; l <= rows; l++) {
        for (int64_t x = chain_span[l].first; x < chain_span[l].second; x++) {
            edges.emplace_back(chain_label[l].at(x), chain_label[l].at(x + 1));
        }
    }
    for (size_t r = 0; r < rows; r++) {
        for (const auto &[x, b] : bridge_label[r]) {
            edges.emplace_back(chain_label[r].at(x), b);
            edges.emplace_back(b, chain_label[r + 1].at(x));
        }
    }
    return CouplingMap(next, std::move(edges));
}

}  // namespace

CouplingMap heavy_hex_map(size_t rows, size_t cols) {
    return build_heavy_hex(rows, cols, false);
}

CouplingMap heavy_hex_device(size_t num_qubits) {
    switch (num_qubits) {
        case 27: {
            std::vector<Edge> edges;
            for (auto [a, b] : std::initializer_list<std::pair<Qubit, Qubit>>{
                     {0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},   {6, 7},   {7, 10},  {8, 9},
                     {8, 11},  {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18},
                     {18, 21}, {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}}) {
                edges.emplace_back(a, b);
            }
            return CouplingMap(27, std::move(edges));
        }
        case 65:
            return build_heavy_hex(4, 2, true);
        case 127:
            return build_heavy_hex(6, 3, true);
        case 433:
            return build_heavy_hex(12, 6, true);
        default:
            throw std::invalid_argument(
                "no heavy-hex device layout with " + std::to_string(num_qubits) + " qubits (use 27, 65, 127 or 433)");
    }
}

CouplingMap heavy_hex_fragment7() {
    return CouplingMap(7, {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}});
}

CouplingMap line_map(size_t num_qubits) {
    std::vector<Edge> edges;
    for (Qubit q = 0; q + 1 < num_qubits; q++) {
        edges.emplace_back(q, q + 1);
    }
    return CouplingMap(num_qubits, std::move(edges));
}

double CalibrationData::cnot(Qubit a, Qubit b) const {
    auto it = cnot_success.find(Edge(a, b));
    if (it == cnot_success.end()) {
        throw std::out_of_range(
            "no CNOT calibration for edge [" + std::to_string(std::min(a, b)) + "," + std::to_string(std::max(a, b)) + "]");
    }
    return it->second;
}

static std::string edge_str(const Edge &e) {
    return "[" + std::to_string(e.a) + "," + std::to_string(e.b) + "]";
}

static void check_rate(double value, const std::string &path) {
    if (!(value > 0.0 && value <= 1.0)) {
        std::stringstream msg;
        msg << path << ": rate " << value << " outside (0, 1]";
        throw DeviceValidationError(msg.str());
    }
}

void validate_calibration(const CalibrationData &calib, const CouplingMap &map) {
    for (const auto &e : map.edges()) {
        auto it = calib.cnot_success.find(e);
        if (it == calib.cnot_success.end()) {
            throw DeviceValidationError("cnot" + edge_str(e) + ": missing entry for coupling-map edge");
        }
        check_rate(it->second, "cnot" + edge_str(e));
    }
    for (const auto &[e, mu] : calib.cnot_success) {
        if (!map.has_edge(e)) {
            throw DeviceValidationError("cnot" + edge_str(e) + ": not a coupling-map edge");
        }
    }
    auto check_per_qubit = [&](const std::vector<double> &values, const char *name) {
        for (size_t q = 0; q < map.num_qubits(); q++) {
            std::string path = std::string(name) + "[" + std::to_string(q) + "]";
            if (q >= values.size()) {
                throw DeviceValidationError(path + ": missing entry");
            }
            check_rate(values[q], path);
        }
        if (values.size() > map.num_qubits()) {
            throw DeviceValidationError(
                std::string(name) + ": " + std::to_string(values.size()) + " entries for " +
                std::to_string(map.num_qubits()) + " qubits");
        }
    };
    check_per_qubit(calib.readout_fidelity, "readout");
    check_per_qubit(calib.single_qubit_success, "single_qubit");
}

static std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

static json parse_json(std::string_view text, const char *what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &ex) {
        throw DeviceParseError(std::string(what) + ": malformed JSON: " + ex.what());
    }
}

template <typename T>
static T field(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw DeviceParseError(path + key + ": missing field");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw DeviceParseError(path + key + ": wrong type");
    }
}

CouplingMap parse_coupling_map(std::string_view json_text) {
    json doc = parse_json(json_text, "coupling map");
    auto n = field<size_t>(doc, "num_qubits", "");
    auto raw = field<std::vector<std::vector<int64_t>>>(doc, "edges", "");
    std::vector<Edge> edges;
    for (size_t k = 0; k < raw.size(); k++) {
        const auto &pair = raw[k];
        if (pair.size() != 2 || pair[0] < 0 || pair[1] < 0) {
            throw DeviceParseError("edges[" + std::to_string(k) + "]: expected a pair of non-negative qubit indices");
        }
        edges.emplace_back(static_cast<Qubit>(pair[0]), static_cast<Qubit>(pair[1]));
    }
    return CouplingMap(n, std::move(edges));
}

CouplingMap load_coupling_map(const std::filesystem::path &path) {
    return parse_coupling_map(read_file(path));
}

std::string coupling_map_to_json(const CouplingMap &map) {
    json edges = json::array();
    for (const auto &e : map.edges()) {
        edges.push_back({e.a, e.b});
    }
    json doc{{"num_qubits", map.num_qubits()}, {"edges", edges}};
    return doc.dump() + "\n";
}

CalibrationData parse_calibration(std::string_view json_text, const CouplingMap &map) {
    json doc = parse_json(json_text, "calibration");
    auto n = field<size_t>(doc, "num_qubits", "");
    if (n != map.num_qubits()) {
        throw DeviceValidationError(
            "num_qubits: calibration describes " + std::to_string(n) + " qubits but the coupling map has " +
            std::to_string(map.num_qubits()));
    }
    CalibrationData calib;
    if (!doc.contains("cnot") || !doc["cnot"].is_array()) {
        throw DeviceParseError("cnot: missing or not an array");
    }
    const auto &entries = doc["cnot"];
    for (size_t k = 0; k < entries.size(); k++) {
        std::string path = "cnot[" + std::to_string(k) + "].";
        auto pair = field<std::vector<int64_t>>(entries[k], "edge", path);
        if (pair.size() != 2 || pair[0] < 0 || pair[1] < 0) {
            throw DeviceParseError(path + "edge: expected a pair of non-negative qubit indices");
        }
        auto success = field<double>(entries[k], "success", path);
        Edge e(static_cast<Qubit>(pair[0]), static_cast<Qubit>(pair[1]));
        if (!calib.cnot_success.emplace(e, success).second) {
            throw DeviceValidationError(path + "edge: duplicate entry for " + edge_str(e));
        }
    }
    calib.readout_fidelity = field<std::vector<double>>(doc, "readout", "");
    calib.single_qubit_success = field<std::vector<double>>(doc, "single_qubit", "");
    validate_calibration(calib, map);
    return calib;
}

CalibrationData load_calibration(const std::filesystem::path &path, const CouplingMap &map) {
    return parse_calibration(read_file(path), map);
}

std::string calibration_to_json(const CalibrationData &calib, size_t num_qubits) {
    json cnot = json::array();
    for (const auto &[e, mu] : calib.cnot_success) {
        cnot.push_back({{"edge", {e.a, e.b}}, {"success", mu}});
    }
    json doc{
        {"num_qubits", num_qubits},
        {"cnot", cnot},
        {"readout", calib.readout_fidelity},
        {"single_qubit", calib.single_qubit_success},
    };
    return doc.dump(2) + "\n";
}

CalibrationData ideal_calibration(const CouplingMap &map) {
    CalibrationData calib;
    for (const auto &e : map.edges()) {
        calib.cnot_success[e] = 1.0;
    }
    calib.readout_fidelity.assign(map.num_qubits(), 1.0);
    calib.single_qubit_success.assign(map.num_qubits(), 1.0);
    return calib;
}

double swap_reliability(const CalibrationData &calib, Edge edge) {
    auto it = calib.cnot_success.find(edge);
    if (it == calib.cnot_success.end()) {
        throw std::out_of_range("swap_reliability: unknown edge " + edge_str(edge));
    }
    double mu = it->second;
    return mu * mu * mu;
}

DeviceMatrices build_matrices(const CouplingMap &map, const CalibrationData &calib, const MatrixOptions &options) {
    const size_t n = map.num_qubits();
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr uint32_t unreachable = std::numeric_limits<uint32_t>::max() / 2;
    constexpr uint32_t no_hop = std::numeric_limits<uint32_t>::max();

    SquareMatrix<double> swap_r(n, 0.0);
    SquareMatrix<double> cost(n, inf);
    SquareMatrix<uint32_t> next_hop(n, no_hop);
    SquareMatrix<uint32_t> hops(n, unreachable);
    for (size_t i = 0; i < n; i++) {
        cost(i, i) = 0.0;
        hops(i, i) = 0;
        next_hop(i, i) = static_cast<uint32_t>(i);
    }
    for (const auto &e : map.edges()) {
        double r = swap_reliability(calib, e);
        if (options.include_readout) {
            r *= calib.readout_fidelity.at(e.a) * calib.readout_fidelity.at(e.b);
        }
        swap_r(e.a, e.b) = swap_r(e.b, e.a) = r;
        cost(e.a, e.b) = cost(e.b, e.a) = -std::log(r);
        next_hop(e.a, e.b) = e.b;
        next_hop(e.b, e.a) = e.a;
        hops(e.a, e.b) = hops(e.b, e.a) = 1;
    }

    for (size_t m = 0; m < n; m++) {
        for (size_t i = 0; i < n; i++) {
            double cim = cost(i, m);
            uint32_t him = hops(i, m);
            for (size_t j = 0; j < n; j++) {
                double via = cim + cost(m, j);
                if (via < cost(i, j)) {
                    cost(i, j) = via;
                    next_hop(i, j) = next_hop(i, m);
                }
                uint32_t hvia = him + hops(m, j);
                if (hvia < hops(i, j)) {
                    hops(i, j) = hvia;
                }
            }
        }
    }

    // Reliability of the chosen path from i to m, multiplied in SWAP order.
    SquareMatrix<double> path_r(n, 0.0);
    for (size_t i = 0; i < n; i++) {
        for (size_t m = 0; m < n; m++) {
            double product = 1.0;
            size_t at = i;
            while (at != m) {
                size_t step = next_hop(at, m);
                product *= swap_r(at, step);
                at = step;
            }
            path_r(i, m) = product;
        }
    }

    DeviceMatrices out{ReliabilityMatrix(n, 0.0), DistanceMatrix(n, 0)};
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (i == j || map.adjacent(i, j)) {
                out.reliability(i, j) = 1.0;
                out.distance(i, j) = 0;
                continue;
            }
            double best_r = 0.0;
            uint32_t best_d = unreachable;
            for (Qubit m : map.neighbors(j)) {
                best_r = std::max(best_r, path_r(i, m));
                best_d = std::min(best_d, hops(i, m));
            }
            out.reliability(i, j) = best_r;
            out.distance(i, j) = best_d;
        }
    }
    return out;
}

NormalizedMatrices normalize_for_scoring(const ReliabilityMatrix &reliability, const DistanceMatrix &distance) {
    const size_t n = reliability.size();
    NormalizedMatrices out{SquareMatrix<double>(n, 1.0), SquareMatrix<double>(n, 0.0)};
    if (n == 0) {
        return out;
    }
    auto [rmin, rmax] = std::minmax_element(reliability.data().begin(), reliability.data().end());
    auto [dmin, dmax] = std::minmax_element(distance.data().begin(), distance.data().end());
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (*rmax > *rmin) {
                out.reliability(i, j) = (reliability(i, j) - *rmin) / (*rmax - *rmin);
            }
            if (*dmax > *dmin) {
                out.distance(i, j) = static_cast<double>(distance(i, j) - *dmin) / static_cast<double>(*dmax - *dmin);
            }
        }
    }
    return out;
}

static double clamp_rate(double value) {
    return std::clamp(value, 0.5, std::nextafter(1.0, 0.0));
}

CalibrationData synthetic_calibration(const CouplingMap &map, uint64_t seed, const CalibrationProfile &profile) {
    std::mt19937_64 rng(seed);
    CalibrationData calib;
    const size_t n = map.num_qubits();
    if (const auto *uniform = std::get_if<UniformProfile>(&profile)) {
        for (const auto &e : map.edges()) {
            calib.cnot_success[e] = clamp_rate(uniform->cnot);
        }
        calib.readout_fidelity.assign(n, clamp_rate(uniform->readout));
        calib.single_qubit_success.assign(n, clamp_rate(uniform->single_qubit));
    } else if (const auto *hotspot = std::get_if<HotspotProfile>(&profile)) {
        for (const auto &e : map.edges()) {
            calib.cnot_success[e] = clamp_rate(hotspot->baseline);
        }
        for (const auto &[e, mu] : hotspot->bad_edges) {
            if (!map.has_edge(e)) {
                throw DeviceValidationError("hotspot" + edge_str(e) + ": not a coupling-map edge");
            }
            calib.cnot_success[e] = clamp_rate(mu);
        }
        calib.readout_fidelity.assign(n, clamp_rate(hotspot->readout));
        calib.single_qubit_success.assign(n, clamp_rate(hotspot->single_qubit));
    } else {
        const auto &logn = std::get<LognormalProfile>(profile);
        double sigma2 = std::log1p(logn.relative_sd * logn.relative_sd);
        auto draw = [&](double mean) {
            std::lognormal_distribution<double> dist(std::log(mean) - sigma2 / 2, std::sqrt(sigma2));
            return clamp_rate(1.0 - dist(rng));
        };
        for (const auto &e : map.edges()) {
            calib.cnot_success[e] = draw(logn.cnot_error_mean);
        }
        for (size_t q = 0; q < n; q++) {
            calib.readout_fidelity.push_back(draw(logn.readout_error_mean));
        }
        for (size_t q = 0; q < n; q++) {
            calib.single_qubit_success.push_back(draw(logn.single_qubit_error_mean));
        }
    }
    return calib;
}

static double parse_double(std::string_view text, std::string_view context) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("calibration profile: bad number '" + std::string(text) + "' in " + std::string(context));
    }
    return value;
}

CalibrationProfile parse_profile(std::string_view text) {
    auto colon = text.find(':');
    std::string_view kind = text.substr(0, colon);
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (kind == "uniform") {
        UniformProfile p;
        if (!rest.empty()) {
            p.cnot = parse_double(rest, text);
        }
        return p;
    }
    if (kind == "lognormal") {
        LognormalProfile p;
        if (!rest.empty()) {
            auto c2 = rest.find(':');
            p.cnot_error_mean = parse_double(rest.substr(0, c2), text);
            if (c2 != std::string_view::npos) {
                p.relative_sd = parse_double(rest.substr(c2 + 1), text);
            }
        }
        return p;
    }
    if (kind == "hotspot") {
        HotspotProfile p;
        while (!rest.empty()) {
            auto comma = rest.find(',');
            std::string_view item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            auto dash = item.find('-');
            auto at = item.find('@');
            if (dash == std::string_view::npos || at == std::string_view::npos || at < dash) {
                throw std::invalid_argument("calibration profile: expected A-B@MU, got '" + std::string(item) + "'");
            }
            auto a = static_cast<Qubit>(parse_double(item.substr(0, dash), text));
            auto b = static_cast<Qubit>(parse_double(item.substr(dash + 1, at - dash - 1), text));
            p.bad_edges.emplace_back(Edge(a, b), parse_double(item.substr(at + 1), text));
        }
        return p;
    }
    throw std::invalid_argument("unknown calibration profile '" + std::string(kind) + "'");
}

}  // namespace hexroute
