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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <system_error>

#include "CLI11.hpp"
#include "hexroute/benchgen.h"
#include "hexroute/device.h"
#include "hexroute/pipeline.h"
#include "hexroute/qasm.h"
#include "hexroute/routing.h"
#include "json.hpp"

namespace hexroute::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Reads `--config` files written as JSON. Keys are long option names without
/// dashes; a nested object named after a subcommand scopes its keys to that
/// subcommand, and top-level keys apply to whichever subcommand is running.
class JsonConfig : public CLI::Config {
   public:
    explicit JsonConfig(const CLI::App *app) : app_(app) {
    }

    std::string to_config(const CLI::App *, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        json doc;
        try {
            doc = json::parse(input);
        } catch (const json::parse_error &e) {
            throw CLI::ConversionError("config file is not valid JSON: " + std::string(e.what()));
        }
        if (!doc.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<std::string> active;
        for (const auto *sub : app_->get_subcommands()) {
            active.push_back(sub->get_name());
        }
        std::vector<CLI::ConfigItem> items;
        for (const auto &[key, value] : doc.items()) {
            bool is_scope = value.is_object() && std::find(active.begin(), active.end(), key) != active.end();
            if (is_scope) {
                for (const auto &[sub_key, sub_value] : value.items()) {
                    items.push_back(item({key}, sub_key, sub_value));
                }
            } else if (!value.is_object() && !active.empty()) {
                items.push_back(item({active.front()}, key, value));
            }
        }
        return items;
    }

   private:
    static std::string scalar(const json &v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        return v.dump();
    }

    static CLI::ConfigItem item(std::vector<std::string> parents, const std::string &name, const json &value) {
        CLI::ConfigItem out;
        out.parents = std::move(parents);
        out.name = name;
        if (value.is_array()) {
            for (const auto &v : value) {
                out.inputs.push_back(scalar(v));
            }
        } else {
            out.inputs.push_back(scalar(value));
        }
        return out;
    }

    const CLI::App *app_;
};

/// Failure that maps to a specific exit code.
struct CliFailure : std::runtime_error {
    int code;
    CliFailure(int code, const std::string &message) : std::runtime_error(message), code(code) {
    }
};

std::string read_text(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
        throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
    }
}

/// A JSON file path, or one of the built-in names heavy-hex-27, heavy-hex-65,
/// heavy-hex-127, heavy-hex-433, fragment-7 and line-N.
CouplingMap resolve_device(const std::string &spec) {
    if (fs::exists(spec)) {
        return load_coupling_map(spec);
    }
    const std::string hh = "heavy-hex-";
    const std::string line = "line-";
    try {
        if (spec.rfind(hh, 0) == 0) {
            return heavy_hex_device(std::stoul(spec.substr(hh.size())));
        }
        if (spec.rfind(line, 0) == 0) {
            return line_map(std::stoul(spec.substr(line.size())));
        }
    } catch (const std::logic_error &) {
        throw CliFailure(kValidationError, "device: unknown built-in device '" + spec + "'");
    }
    if (spec == "fragment-7") {
        return heavy_hex_fragment7();
    }
    return load_coupling_map(spec);
}

/// Calibration from a file, or a synthetic profile ("ideal" for all ones).
CalibrationData resolve_calibration(const std::string &path, const std::string &profile, const CouplingMap &map,
                                    uint64_t seed) {
    if (!path.empty()) {
        return load_calibration(path, map);
    }
    if (profile == "ideal") {
        return ideal_calibration(map);
    }
    return synthetic_calibration(map, seed, parse_profile(profile));
}

json circuit_stats(const QuantumCircuit &circuit) {
    QuantumCircuit flat = decompose_cz(decompose_swaps(circuit));
    return json{{"num_qubits", circuit.num_qubits()},
                {"gates", flat.size()},
                {"cnot_count", cnot_count(flat)},
                {"cnot_depth", cnot_depth(flat)}};
}

struct RoutingFlags {
    double alpha = 0.5;
    size_t beam_width = 4;
    size_t search_depth = 4;
    size_t lookahead = 5;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--alpha", alpha, "Reliability weight in the SWAP score")->capture_default_str();
        cmd->add_option("--beam-width", beam_width, "Beam width")->capture_default_str();
        cmd->add_option("--search-depth", search_depth, "Beam search depth")->capture_default_str();
        cmd->add_option("--lookahead", lookahead, "Upcoming two-qubit gates scored")->capture_default_str();
    }

    RoutingParams params() const {
        RoutingParams p;
        p.alpha = alpha;
        p.beam_width = beam_width;
        p.search_depth = search_depth;
        p.lookahead = lookahead;
        return p;
    }
};

struct CompileFlags {
    std::string input;
    std::string device;
    std::string calibration;
    std::string profile;
    std::string output;
    std::string stats;
    std::string placement = "line";
    uint64_t seed = 0;
    RoutingFlags routing;
};

int cmd_compile(const CompileFlags &f, std::ostream &out, std::ostream &err) {
    QuantumCircuit circuit = parse_qasm(read_text(f.input));
    CouplingMap map = resolve_device(f.device);
    if (f.calibration.empty() && f.profile.empty()) {
        throw CliFailure(kValidationError, "compile: --calibration or --profile is required");
    }
    CalibrationData calib = resolve_calibration(f.calibration, f.profile, map, f.seed);
    RoutingDevice device(map, calib);
    RoutingParams params = f.routing.params();
    params.validate();

    auto compile_with_placement = [&]() {
        if (f.placement != "identity") {
            return compile_circuit(circuit, device, params);
        }
        if (circuit.num_qubits() > map.num_qubits()) {
            throw CliFailure(kValidationError, "compile: circuit is wider than the device");
        }
        auto start = std::chrono::steady_clock::now();
        Mapping initial = Mapping::identity(circuit.num_qubits(), map.num_qubits());
        RoutingResult routed = route(circuit, initial, device, params);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return CompileOutput{std::move(initial), std::move(routed), ms};
    };
    CompileOutput compiled = compile_with_placement();
    const auto &routed = compiled.routing;

    json stats{{"before", circuit_stats(circuit)},
               {"after", circuit_stats(routed.circuit)},
               {"swaps_added", routed.stats.swaps_inserted},
               {"iterations", routed.stats.iterations},
               {"fallbacks", routed.stats.fallbacks},
               {"initial_mapping", compiled.initial_mapping.virtual_to_physical()},
               {"final_mapping", routed.final_mapping.virtual_to_physical()},
               {"alpha", params.alpha},
               {"beam_width", params.beam_width},
               {"search_depth", params.search_depth},
               {"lookahead", params.lookahead},
               {"compile_ms", compiled.compile_ms}};

    std::string qasm = emit_qasm(routed.circuit);
    if (f.output.empty() || f.output == "-") {
        out << qasm;
    } else {
        write_text(f.output, qasm);
    }
    if (!f.stats.empty()) {
        write_text(f.stats, stats.dump(2) + "\n");
    } else if (!f.output.empty() && f.output != "-") {
        out << stats.dump(2) << "\n";
    } else {
        err << stats.dump() << "\n";
    }
    return kOk;
}

struct BenchFlags {
    std::string cls = "square";
    std::string sizes = "2..7";
    size_t count = 200;
    std::optional<size_t> depth;
    std::vector<double> alphas{0.5};
    std::vector<size_t> beam_widths{4};
    std::vector<size_t> search_depths{4};
    size_t lookahead = 5;
    size_t shots = 8192;
    uint64_t seed = 0;
    std::string device = "heavy-hex-27";
    std::string calibration;
    std::string profile = "lognormal:0.01";
    std::string out_dir;
    std::string format = "csv";
    size_t threads = 0;
};

int cmd_bench(const BenchFlags &f, std::ostream &out, std::ostream &err) {
    CouplingMap map = resolve_device(f.device);
    CalibrationData calib = resolve_calibration(f.calibration, f.profile, map, f.seed);
    RoutingDevice device(map, calib);
    NoiseModel noise = NoiseModel::from_calibration(calib, map.num_qubits());

    BenchConfig config;
    config.cls = parse_bench_class(f.cls);
    config.sizes = parse_sizes(f.sizes);
    config.count = f.count;
    config.depth = f.depth;
    config.seed = f.seed;
    config.grid = param_grid(f.alphas, f.beam_widths, f.search_depths);
    config.lookahead = f.lookahead;
    config.shots = f.shots;
    config.threads = f.threads;
    for (const auto &p : config.grid) {
        RoutingParams rp;
        rp.alpha = p.alpha;
        rp.beam_width = p.beam_width;
        rp.search_depth = p.search_depth;
        rp.lookahead = f.lookahead;
        rp.validate();
    }
    for (size_t n : config.sizes) {
        if (n < 2 || n > map.num_qubits()) {
            throw CliFailure(kValidationError, "sizes: width " + std::to_string(n) + " does not fit the device");
        }
    }

    auto records = run_bench(config, device, noise);
    std::string rows = f.format == "json" ? records_to_json(records) : records_to_csv(records);
    if (f.out_dir.empty()) {
        out << rows;
        return kOk;
    }
    fs::create_directories(f.out_dir);
    write_text(fs::path(f.out_dir) / (f.format == "json" ? "results.json" : "results.csv"), rows);
    write_text(fs::path(f.out_dir) / "summary.json", summary_json(records));
    err << "wrote " << records.size() << " records to " << f.out_dir << "\n";
    return kOk;
}

struct GenFlags {
    std::string cls = "square";
    std::string sizes = "2..7";
    size_t count = 200;
    std::optional<size_t> depth;
    uint64_t seed = 0;
    std::string out_dir;
    bool force = false;
};

int cmd_gen(const GenFlags &f, std::ostream &out, std::ostream &) {
    auto sizes = parse_sizes(f.sizes);
    auto corpus = gen_corpus(parse_bench_class(f.cls), sizes, f.count, f.seed, f.depth);
    try {
        write_corpus(corpus, f.out_dir, f.force);
    } catch (const CorpusExistsError &e) {
        throw CliFailure(kIoError, e.what());
    }
    out << format_gate_count_table(summarize_gate_counts(corpus));
    return kOk;
}

struct DeviceFlags {
    std::string device = "heavy-hex-27";
    std::string profile = "lognormal:0.01";
    uint64_t seed = 0;
    std::string out_dir;
};

int cmd_device(const DeviceFlags &f, std::ostream &out, std::ostream &) {
    CouplingMap map = resolve_device(f.device);
    CalibrationData calib = resolve_calibration("", f.profile, map, f.seed);
    std::string map_json = coupling_map_to_json(map);
    std::string calib_json = calibration_to_json(calib, map.num_qubits());
    if (f.out_dir.empty()) {
        out << map_json << calib_json;
        return kOk;
    }
    fs::create_directories(f.out_dir);
    write_text(fs::path(f.out_dir) / "device.json", map_json);
    write_text(fs::path(f.out_dir) / "calibration.json", calib_json);
    return kOk;
}

}  // namespace

std::vector<size_t> parse_sizes(const std::string &text) {
    std::vector<size_t> sizes;
    std::stringstream ss(text);
    std::string part;
    auto number = [&](const std::string &s) {
        size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &used);
        } catch (const std::logic_error &) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw std::invalid_argument("sizes: cannot read '" + s + "' as a width");
        }
        return static_cast<size_t>(v);
    };
    while (std::getline(ss, part, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            sizes.push_back(number(part));
            continue;
        }
        size_t lo = number(part.substr(0, dots));
        size_t hi = number(part.substr(dots + 2));
        if (lo > hi) {
            throw std::invalid_argument("sizes: empty range '" + part + "'");
        }
        for (size_t n = lo; n <= hi; n++) {
            sizes.push_back(n);
        }
    }
    if (sizes.empty()) {
        throw std::invalid_argument("sizes: no widths given");
    }
    return sizes;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Noise-aware qubit placement and routing for heavy-hex devices"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file with option defaults (flags take precedence)");

    CompileFlags compile;
    auto *c = app.add_subcommand("compile", "Place and route one OpenQASM 2.0 circuit");
    c->add_option("input", compile.input, "Input .qasm file")->required();
    c->add_option("--device", compile.device, "Coupling map JSON or built-in device name")->required();
    c->add_option("--calibration", compile.calibration, "Calibration JSON");
    c->add_option("--profile", compile.profile, "Synthetic calibration profile, e.g. uniform:0.99 or ideal");
    c->add_option("-o,--output", compile.output, "Routed circuit (default: stdout)");
    c->add_option("--stats", compile.stats, "Statistics JSON file");
    c->add_option("--placement", compile.placement, "Initial placement")
        ->check(CLI::IsMember({"line", "identity"}))
        ->capture_default_str();
    c->add_option("--seed", compile.seed, "Seed for synthetic calibration")->capture_default_str();
    compile.routing.add_to(c);

    BenchFlags bench;
    auto *b = app.add_subcommand("bench", "Generate, compile, simulate and score a benchmark corpus");
    b->add_option("--class", bench.cls, "Circuit class")
        ->check(CLI::IsMember({"deep", "square", "shallow"}))
        ->capture_default_str();
    b->add_option("--sizes", bench.sizes, "Widths, e.g. 2..7 or 2,4,6")->capture_default_str();
    b->add_option("--count", bench.count, "Circuits per width")->capture_default_str();
    b->add_option("--depth", bench.depth, "Gadget count for deep circuits (default: n)");
    b->add_option("--alpha", bench.alphas, "Alpha grid")->delimiter(',')->capture_default_str();
    b->add_option("--beam-width", bench.beam_widths, "Beam width grid")->delimiter(',')->capture_default_str();
    b->add_option("--search-depth", bench.search_depths, "Search depth grid")->delimiter(',')->capture_default_str();
    b->add_option("--lookahead", bench.lookahead, "Upcoming two-qubit gates scored")->capture_default_str();
    b->add_option("--shots", bench.shots, "Shots per circuit")->capture_default_str();
    b->add_option("--seed", bench.seed, "Corpus, calibration and sampling seed")->capture_default_str();
    b->add_option("--device", bench.device, "Coupling map JSON or built-in device name")->capture_default_str();
    b->add_option("--calibration", bench.calibration, "Calibration JSON (overrides --profile)");
    b->add_option("--profile", bench.profile, "Synthetic calibration profile")->capture_default_str();
    b->add_option("--out", bench.out_dir, "Output directory (default: records to stdout)");
    b->add_option("--format", bench.format, "Record format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    b->add_option("--threads", bench.threads, "Worker threads (0: all cores; HEXROUTE_THREADS caps)");

    GenFlags gen;
    auto *g = app.add_subcommand("gen", "Write a benchmark corpus of .qasm files and a manifest");
    g->add_option("--class", gen.cls, "Circuit class")
        ->check(CLI::IsMember({"deep", "square", "shallow"}))
        ->capture_default_str();
    g->add_option("--sizes", gen.sizes, "Widths, e.g. 2..7")->capture_default_str();
    g->add_option("--count", gen.count, "Circuits per width")->capture_default_str();
    g->add_option("--depth", gen.depth, "Gadget count for deep circuits (default: n)");
    g->add_option("--seed", gen.seed, "Corpus seed")->capture_default_str();
    g->add_option("--out", gen.out_dir, "Output directory")->required();
    g->add_flag("--force", gen.force, "Overwrite files in an existing directory");

    DeviceFlags dev;
    auto *d = app.add_subcommand("device", "Write a coupling map and synthetic calibration");
    d->add_option("--device", dev.device, "Built-in device name or coupling map JSON")->capture_default_str();
    d->add_option("--profile", dev.profile, "uniform:MU, lognormal:MEAN[:RELSD], hotspot:A-B@MU,... or ideal")
        ->capture_default_str();
    d->add_option("--seed", dev.seed, "Calibration seed")->capture_default_str();
    d->add_option("--out", dev.out_dir, "Output directory (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::FileError &e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }
    try {
        if (c->parsed()) {
            return cmd_compile(compile, out, err);
        }
        if (b->parsed()) {
            return cmd_bench(bench, out, err);
        }
        if (g->parsed()) {
            return cmd_gen(gen, out, err);
        }
        return cmd_device(dev, out, err);
    } catch (const CliFailure &e) {
        err << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::system_error &e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const QasmError &e) {
        err << "error: " << compile.input << ":" << e.what() << "\n";
        return kParseError;
    } catch (const DeviceParseError &e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    }
}

}  // namespace hexroute::cli
