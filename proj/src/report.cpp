// SPDX-License-Identifier: Apache-2.0
#include "rcs/report.hpp"

#include "rcs/circuit.hpp"
#include "rcs/numerics.hpp"
#include "rcs/parallel.hpp"
#include "rcs/spectral.hpp"
#include "rcs/statevector.hpp"
#include "rcs/transport.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rcs {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownMetrics = {"heatmap", "spectrum", "nist", "xeb", "wasserstein"};

[[noreturn]] void bad_config(const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
}

std::string require_string(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_string()) bad_config(ctx + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

std::int64_t require_int(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        bad_config(ctx + ": missing integer field '" + key + "'");
    }
    return j[key].get<std::int64_t>();
}

InputSpec parse_input_spec(const json& j, std::size_t idx) {
    std::string ctx = "inputs[" + std::to_string(idx) + "]";
    if (!j.is_object()) bad_config(ctx + " must be an object");
    InputSpec s;
    std::string kind = require_string(j, "kind", ctx);
    if (kind == "file") {
        s.kind = InputSpec::Kind::file;
        s.path = require_string(j, "path", ctx);
        if (j.contains("expected_n")) s.expected_n = static_cast<int>(require_int(j, "expected_n", ctx));
    } else if (kind == "uniform" || kind == "spoof") {
        s.kind = kind == "uniform" ? InputSpec::Kind::uniform : InputSpec::Kind::spoof;
        s.n = static_cast<int>(require_int(j, "n", ctx));
        s.m = static_cast<std::size_t>(require_int(j, "m", ctx));
        if (s.kind == InputSpec::Kind::spoof) {
            s.prefix = static_cast<int>(require_int(j, "prefix", ctx));
            s.fixed_value = j.contains("value") ? static_cast<int>(require_int(j, "value", ctx)) : 0;
        }
    } else if (kind == "circuit") {
        s.kind = InputSpec::Kind::circuit;
        s.n = static_cast<int>(require_int(j, "n", ctx));
        s.cycles = static_cast<int>(require_int(j, "cycles", ctx));
        s.m = static_cast<std::size_t>(require_int(j, "m", ctx));
        if (j.contains("pattern")) s.pattern = require_string(j, "pattern", ctx);
        if (j.contains("topology")) s.topology = require_string(j, "topology", ctx);
        if (j.contains("grid_rows")) s.grid_rows = static_cast<int>(require_int(j, "grid_rows", ctx));
        if (j.contains("grid_cols")) s.grid_cols = static_cast<int>(require_int(j, "grid_cols", ctx));
    } else {
        bad_config(ctx + ": unknown kind '" + kind + "'");
    }
    if (j.contains("seed")) s.seed = static_cast<std::uint64_t>(require_int(j, "seed", ctx));
    return s;
}

IdealSpec parse_ideal_spec(const json& j) {
    if (!j.is_object()) bad_config("ideal must be an object");
    IdealSpec s;
    std::string kind = require_string(j, "kind", "ideal");
    if (kind == "probfile") {
        s.kind = IdealSpec::Kind::probfile;
        s.path = require_string(j, "path", "ideal");
    } else if (kind == "circuit") {
        s.kind = IdealSpec::Kind::circuit;
        s.n = static_cast<int>(require_int(j, "n", "ideal"));
        s.cycles = static_cast<int>(require_int(j, "cycles", "ideal"));
        if (j.contains("seed")) s.seed = static_cast<std::uint64_t>(require_int(j, "seed", "ideal"));
        if (j.contains("pattern")) s.pattern = require_string(j, "pattern", "ideal");
        if (j.contains("topology")) s.topology = require_string(j, "topology", "ideal");
        if (j.contains("grid_rows")) s.grid_rows = static_cast<int>(require_int(j, "grid_rows", "ideal"));
        if (j.contains("grid_cols")) s.grid_cols = static_cast<int>(require_int(j, "grid_cols", "ideal"));
    } else {
        bad_config("ideal: unknown kind '" + kind + "'");
    }
    return s;
}

CircuitSpec circuit_spec_of(int n, int cycles, std::uint64_t seed, const std::string& pattern,
                            const std::string& topology, int rows, int cols) {
    CircuitSpec cs;
    cs.n_qubits = n;
    cs.m_cycles = cycles;
    cs.seed = seed;
    cs.pattern = pattern;
    if (topology == "ring") {
        cs.topology = Topology::ring;
    } else if (topology == "grid") {
        cs.topology = Topology::grid;
    } else {
        bad_config("unknown topology '" + topology + "'");
    }
    cs.grid_rows = rows;
    cs.grid_cols = cols;
    return cs;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return "fnv1a64:" + hex64(fnv1a64(bytes));
}

std::string hash_bits(const SampleSet& s) {
    return "fnv1a64:" + hex64(fnv1a64(std::span<const unsigned char>(
                             reinterpret_cast<const unsigned char*>(s.bits.data()), s.bits.size())));
}

std::string iso_utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json descriptor_to_json(const DatasetDescriptor& d) {
    json j;
    j["filename"] = d.filename;
    j["warning"] = d.warning;
    j["n_qubits"] = d.n_qubits ? json(*d.n_qubits) : json(nullptr);
    j["m_cycles"] = d.m_cycles ? json(*d.m_cycles) : json(nullptr);
    j["seed"] = d.seed ? json(*d.seed) : json(nullptr);
    j["elided_gates"] = d.elided_gates ? json(*d.elided_gates) : json(nullptr);
    j["pattern"] = d.pattern ? json(*d.pattern) : json(nullptr);
    return j;
}

DatasetDescriptor descriptor_from_json(const json& j) {
    DatasetDescriptor d;
    d.filename = j.value("filename", std::string{});
    d.warning = j.value("warning", false);
    if (j.contains("n_qubits") && !j["n_qubits"].is_null()) d.n_qubits = j["n_qubits"].get<int>();
    if (j.contains("m_cycles") && !j["m_cycles"].is_null()) d.m_cycles = j["m_cycles"].get<int>();
    if (j.contains("seed") && !j["seed"].is_null()) d.seed = j["seed"].get<int>();
    if (j.contains("elided_gates") && !j["elided_gates"].is_null()) {
        d.elided_gates = j["elided_gates"].get<int>();
    }
    if (j.contains("pattern") && !j["pattern"].is_null()) d.pattern = j["pattern"].get<std::string>();
    return d;
}

json outcome_to_json(const TestOutcome& o) {
    json j;
    j["test_name"] = o.test_name;
    j["statistic"] = o.statistic;
    j["p_value"] = std::isnan(o.p_value) ? json(nullptr) : json(o.p_value);
    j["passed"] = o.passed;
    j["alpha"] = o.alpha;
    j["skipped"] = o.skipped;
    return j;
}

TestOutcome outcome_from_json(const json& j) {
    TestOutcome o;
    o.test_name = j.value("test_name", std::string{});
    o.statistic = j.value("statistic", 0.0);
    o.p_value = j.contains("p_value") && !j["p_value"].is_null()
                    ? j["p_value"].get<double>()
                    : std::numeric_limits<double>::quiet_NaN();
    o.passed = j.value("passed", false);
    o.alpha = j.value("alpha", 0.01);
    o.skipped = j.value("skipped", false);
    return o;
}

} // namespace

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) bad_config("top level must be an object");
    RunConfig cfg;
    if (j.contains("seed")) cfg.seed = static_cast<std::uint64_t>(require_int(j, "seed", "top"));
    if (j.contains("threads")) {
        cfg.threads = static_cast<int>(require_int(j, "threads", "top"));
        if (cfg.threads < 1) bad_config("threads must be >= 1");
    }
    if (j.contains("timestamp")) {
        if (!j["timestamp"].is_boolean()) bad_config("timestamp must be a boolean");
        cfg.with_timestamp = j["timestamp"].get<bool>();
    }

    if (!j.contains("metrics") || !j["metrics"].is_array() || j["metrics"].empty()) {
        bad_config("metrics must be a nonempty array");
    }
    for (const auto& m : j["metrics"]) {
        if (!m.is_string()) bad_config("metrics entries must be strings");
        std::string name = m.get<std::string>();
        if (name == "wdist") name = "wasserstein"; // CLI alias
        if (!kKnownMetrics.count(name)) bad_config("unknown metric '" + name + "'");
        if (std::find(cfg.metrics.begin(), cfg.metrics.end(), name) == cfg.metrics.end()) {
            cfg.metrics.push_back(name);
        }
    }

    if (!j.contains("inputs") || !j["inputs"].is_array() || j["inputs"].empty()) {
        bad_config("inputs must be a nonempty array");
    }
    for (std::size_t i = 0; i < j["inputs"].size(); ++i) {
        cfg.inputs.push_back(parse_input_spec(j["inputs"][i], i));
    }

    if (j.contains("ideal")) cfg.ideal = parse_ideal_spec(j["ideal"]);

    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) bad_config("options must be an object");
        if (o.contains("k")) {
            auto k = require_int(o, "k", "options");
            if (k < 0) bad_config("options.k must be >= 0");
            cfg.spectrum_k = static_cast<std::size_t>(k);
        }
        if (o.contains("mean_peak")) {
            if (!o["mean_peak"].is_boolean()) bad_config("options.mean_peak must be a boolean");
            cfg.spectrum_mean_peak = o["mean_peak"].get<bool>();
        }
        if (o.contains("alpha")) {
            if (!o["alpha"].is_number()) bad_config("options.alpha must be a number");
            cfg.wasserstein_alpha = o["alpha"].get<double>();
            if (cfg.wasserstein_alpha < 1.0) bad_config("options.alpha must be >= 1");
        }
        if (o.contains("nist_alpha")) {
            if (!o["nist_alpha"].is_number()) bad_config("options.nist_alpha must be a number");
            cfg.nist_alpha = o["nist_alpha"].get<double>();
            if (cfg.nist_alpha <= 0.0 || cfg.nist_alpha >= 1.0) {
                bad_config("options.nist_alpha must be in (0,1)");
            }
        }
        if (o.contains("reference")) {
            cfg.wasserstein_reference = static_cast<int>(require_int(o, "reference", "options"));
            if (cfg.wasserstein_reference >= 0 &&
                static_cast<std::size_t>(cfg.wasserstein_reference) >= cfg.inputs.size()) {
                bad_config("options.reference is out of range");
            }
        }
    }

    bool want_xeb = std::find(cfg.metrics.begin(), cfg.metrics.end(), "xeb") != cfg.metrics.end();
    if (want_xeb && !cfg.ideal) {
        bool any_circuit = std::any_of(cfg.inputs.begin(), cfg.inputs.end(), [](const InputSpec& s) {
            return s.kind == InputSpec::Kind::circuit;
        });
        if (!any_circuit) {
            bad_config("xeb requested but no ideal distribution configured and no circuit input");
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: JSON parse failure in " + path + ": " + e.what());
    }
    return parse_run_config(j);
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["timestamp"] = cfg.with_timestamp;
    j["metrics"] = cfg.metrics;
    json inputs = json::array();
    for (const InputSpec& s : cfg.inputs) {
        json e;
        switch (s.kind) {
        case InputSpec::Kind::file:
            e["kind"] = "file";
            e["path"] = s.path;
            if (s.expected_n) e["expected_n"] = *s.expected_n;
            break;
        case InputSpec::Kind::uniform:
            e["kind"] = "uniform";
            e["n"] = s.n;
            e["m"] = s.m;
            break;
        case InputSpec::Kind::spoof:
            e["kind"] = "spoof";
            e["n"] = s.n;
            e["m"] = s.m;
            e["prefix"] = s.prefix;
            e["value"] = s.fixed_value;
            break;
        case InputSpec::Kind::circuit:
            e["kind"] = "circuit";
            e["n"] = s.n;
            e["cycles"] = s.cycles;
            e["m"] = s.m;
            e["pattern"] = s.pattern;
            e["topology"] = s.topology;
            if (s.topology == "grid") {
                e["grid_rows"] = s.grid_rows;
                e["grid_cols"] = s.grid_cols;
            }
            break;
        }
        if (s.seed) e["seed"] = *s.seed;
        inputs.push_back(e);
    }
    j["inputs"] = inputs;
    if (cfg.ideal) {
        json e;
        if (cfg.ideal->kind == IdealSpec::Kind::probfile) {
            e["kind"] = "probfile";
            e["path"] = cfg.ideal->path;
        } else {
            e["kind"] = "circuit";
            e["n"] = cfg.ideal->n;
            e["cycles"] = cfg.ideal->cycles;
            e["seed"] = cfg.ideal->seed;
            e["pattern"] = cfg.ideal->pattern;
            e["topology"] = cfg.ideal->topology;
            if (cfg.ideal->topology == "grid") {
                e["grid_rows"] = cfg.ideal->grid_rows;
                e["grid_cols"] = cfg.ideal->grid_cols;
            }
        }
        j["ideal"] = e;
    }
    json opts;
    opts["k"] = cfg.spectrum_k;
    opts["mean_peak"] = cfg.spectrum_mean_peak;
    opts["alpha"] = cfg.wasserstein_alpha;
    opts["nist_alpha"] = cfg.nist_alpha;
    opts["reference"] = cfg.wasserstein_reference;
    j["options"] = opts;
    return j;
}

MetricReport run_compare(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw std::invalid_argument("run_compare: no inputs configured");
    const std::size_t ni = cfg.inputs.size();
    auto want = [&](const char* name) {
        return std::find(cfg.metrics.begin(), cfg.metrics.end(), name) != cfg.metrics.end();
    };

    MetricReport rep;
    rep.config_echo = config_to_json(cfg);
    if (cfg.with_timestamp) rep.timestamp = iso_utc_now();
    rep.inputs.resize(ni);
    if (want("heatmap")) rep.heatmaps.resize(ni);
    if (want("spectrum")) rep.spectra.resize(ni);
    if (want("nist")) rep.nist.resize(ni);
    if (want("xeb")) rep.xeb.resize(ni);

    // shared ideal for XEB, resolved once up front
    std::shared_ptr<const ProbTable> shared_ideal;
    std::string shared_ideal_ref, shared_ideal_error;
    if (want("xeb") && cfg.ideal) {
        try {
            if (cfg.ideal->kind == IdealSpec::Kind::probfile) {
                shared_ideal = std::make_shared<ProbTable>(read_prob_table(cfg.ideal->path));
                shared_ideal_ref = "probfile:" + cfg.ideal->path;
            } else {
                CircuitSpec cs = circuit_spec_of(cfg.ideal->n, cfg.ideal->cycles, cfg.ideal->seed,
                                                 cfg.ideal->pattern, cfg.ideal->topology,
                                                 cfg.ideal->grid_rows, cfg.ideal->grid_cols);
                shared_ideal = std::make_shared<ProbTable>(ProbTable::from_state(simulate(cs)));
                shared_ideal_ref = "circuit:n" + std::to_string(cfg.ideal->n) + "-m" +
                                   std::to_string(cfg.ideal->cycles) + "-s" +
                                   std::to_string(cfg.ideal->seed);
            }
        } catch (const std::exception& e) {
            shared_ideal_error = e.what();
            rep.errors.push_back(std::string("ideal: ") + e.what());
        }
    }

    std::vector<std::shared_ptr<const SampleSet>> samples(ni);
    std::vector<std::shared_ptr<const ProbTable>> self_tables(ni);

    parallel_for(ni, cfg.threads, [&](std::size_t i) {
        const InputSpec& spec = cfg.inputs[i];
        InputEntry& ent = rep.inputs[i];
        std::uint64_t seed = spec.seed ? *spec.seed : cfg.seed + i;
        try {
            std::shared_ptr<SampleSet> s;
            switch (spec.kind) {
            case InputSpec::Kind::file:
                s = std::make_shared<SampleSet>(parse_sample_file(spec.path, spec.expected_n));
                ent.descriptor = parse_descriptor(spec.path);
                ent.hash = hash_file(spec.path);
                break;
            case InputSpec::Kind::uniform:
                s = std::make_shared<SampleSet>(generate_uniform(spec.n, spec.m, seed));
                break;
            case InputSpec::Kind::spoof:
                s = std::make_shared<SampleSet>(
                    generate_spoof(spec.n, spec.m, seed, spec.prefix, spec.fixed_value));
                break;
            case InputSpec::Kind::circuit: {
                CircuitSpec cs = circuit_spec_of(spec.n, spec.cycles, seed, spec.pattern,
                                                 spec.topology, spec.grid_rows, spec.grid_cols);
                auto table = std::make_shared<ProbTable>(ProbTable::from_state(simulate(cs)));
                // records are drawn with an offset seed so the circuit draw and
                // the gate-choice stream stay independent
                s = std::make_shared<SampleSet>(sample_bitstrings(
                    *table, spec.m, seed + 1,
                    "circuit-n" + std::to_string(spec.n) + "-m" + std::to_string(spec.cycles) +
                        "-s" + std::to_string(seed) + "-M" + std::to_string(spec.m)));
                self_tables[i] = table;
                break;
            }
            }
            if (ent.hash.empty()) ent.hash = hash_bits(*s);
            ent.label = s->label.empty() ? spec.path : s->label;
            ent.source = to_string(s->source);
            ent.n = s->n;
            ent.m = s->m;
            samples[i] = s;
        } catch (const std::exception& e) {
            ent.error = e.what();
            ent.label = spec.kind == InputSpec::Kind::file
                            ? spec.path
                            : "input-" + std::to_string(i);
            ent.source = "unavailable";
            // mark this input's metric slots so they never read as results
            const char* why = "input failed to load";
            if (want("heatmap")) {
                rep.heatmaps[i].input = i;
                rep.heatmaps[i].error = why;
            }
            if (want("spectrum")) {
                rep.spectra[i].input = i;
                rep.spectra[i].error = why;
            }
            if (want("nist")) {
                rep.nist[i].input = i;
                rep.nist[i].error = why;
            }
            if (want("xeb")) {
                rep.xeb[i].input = i;
                rep.xeb[i].error = why;
            }
            return;
        }

        const SampleSet& sample = *samples[i];
        if (want("heatmap")) {
            HeatmapEntry& h = rep.heatmaps[i];
            h.input = i;
            try {
                HeatMap hm = heat_map(sample);
                h.p1 = hm.p1;
                double bias = 0.0;
                for (double v : hm.per_qubit_mean) bias = std::max(bias, std::abs(v - 0.5));
                h.max_column_bias = bias;
                h.l_slices = hm.l_slices;
                h.has_sliced = hm.has_sliced;
            } catch (const std::exception& e) {
                h.error = e.what();
            }
        }
        if (want("spectrum")) {
            SpectrumEntry& se = rep.spectra[i];
            se.input = i;
            try {
                SliceSet slices = slice_matrices(sample, cfg.spectrum_k);
                SpectrumOptions so;
                so.mean_peak = cfg.spectrum_mean_peak;
                so.threads = 1; // inputs already run in parallel
                SpectrumResult sr = gram_spectrum(slices, so);
                se.outlier_peak = sr.outlier_peak;
                se.mp_distance = sr.mp_distance;
                se.gamma = sr.gamma;
                se.k = sr.k;
                se.n_slices = sr.n_slices;
                se.skipped_slices = sr.skipped_slices;
                se.max_trace_error = sr.max_trace_error;
                BulkFit fit = bulk_fit_report(sr);
                se.sigma2 = fit.sigma2;
                se.ks_bulk = fit.ks_bulk;
                se.in_support_fraction = fit.in_support_fraction;
            } catch (const std::exception& e) {
                se.error = e.what();
            }
        }
        if (want("nist")) {
            NistEntry& ne = rep.nist[i];
            ne.input = i;
            try {
                ne.outcomes = run_battery(sample, cfg.nist_alpha);
            } catch (const std::exception& e) {
                ne.error = e.what();
            }
        }
        if (want("xeb")) {
            XebEntry& xe = rep.xeb[i];
            xe.input = i;
            try {
                const ProbTable* ideal = nullptr;
                if (self_tables[i]) {
                    ideal = self_tables[i].get();
                    xe.ideal_ref = "circuit:self";
                } else if (shared_ideal) {
                    ideal = shared_ideal.get();
                    xe.ideal_ref = shared_ideal_ref;
                } else if (!shared_ideal_error.empty()) {
                    throw std::runtime_error("ideal unavailable: " + shared_ideal_error);
                } else {
                    throw std::runtime_error("no ideal distribution configured for this input");
                }
                xe.result = linear_xeb(sample, *ideal);
            } catch (const std::exception& e) {
                xe.error = e.what();
            }
        }
    });

    if (want("wasserstein")) {
        std::vector<std::shared_ptr<const ValueSeries>> series(ni);
        std::vector<std::string> series_err(ni);
        for (std::size_t i = 0; i < ni; ++i) {
            if (!samples[i]) {
                series_err[i] = "input failed to load";
                continue;
            }
            try {
                series[i] = std::make_shared<ValueSeries>(to_values(*samples[i]));
            } catch (const std::exception& e) {
                series_err[i] = e.what();
            }
        }
        auto emit_pair = [&](std::size_t a, std::size_t b) {
            WassersteinEntry w;
            w.a = a;
            w.b = b;
            w.alpha = cfg.wasserstein_alpha;
            if (series[a] && series[b]) {
                try {
                    WassersteinOptions wo;
                    wo.alpha = cfg.wasserstein_alpha;
                    WassersteinResult r = wasserstein(*series[a], *series[b], wo);
                    w.distance = r.distance;
                    w.m_used = r.m_used;
                } catch (const std::exception& e) {
                    w.error = e.what();
                }
            } else {
                w.error = "input " + std::to_string(series[a] ? b : a) + ": " +
                          (series[a] ? series_err[b] : series_err[a]);
            }
            rep.wasserstein.push_back(w);
        };
        if (cfg.wasserstein_reference >= 0) {
            std::size_t ref = static_cast<std::size_t>(cfg.wasserstein_reference);
            for (std::size_t j = 0; j < ni; ++j) {
                if (j != ref) emit_pair(ref, j);
            }
        } else {
            for (std::size_t a = 0; a < ni; ++a) {
                for (std::size_t b = a + 1; b < ni; ++b) emit_pair(a, b);
            }
        }
    }
    return rep;
}

namespace {

json report_to_json(const MetricReport& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["tool_version"] = r.tool_version;
    if (!r.timestamp.empty()) j["timestamp"] = r.timestamp;
    j["config"] = r.config_echo;

    json inputs = json::array();
    for (const InputEntry& e : r.inputs) {
        json ji;
        ji["label"] = e.label;
        ji["source"] = e.source;
        ji["n"] = e.n;
        ji["m"] = e.m;
        ji["hash"] = e.hash;
        if (e.descriptor) ji["descriptor"] = descriptor_to_json(*e.descriptor);
        if (!e.error.empty()) ji["error"] = e.error;
        inputs.push_back(ji);
    }
    j["inputs"] = inputs;

    json metrics;
    bool requested_w = false;
    if (r.config_echo.contains("metrics")) {
        for (const auto& m : r.config_echo["metrics"]) {
            if (m == "wasserstein") requested_w = true;
        }
    }
    if (!r.heatmaps.empty()) {
        json arr = json::array();
        for (const HeatmapEntry& h : r.heatmaps) {
            json e;
            e["input"] = h.input;
            if (!h.error.empty()) {
                e["error"] = h.error;
            } else {
                e["p1"] = h.p1;
                e["max_column_bias"] = h.max_column_bias;
                e["l_slices"] = h.l_slices;
                e["has_sliced"] = h.has_sliced;
            }
            arr.push_back(e);
        }
        metrics["heatmap"] = arr;
    }
    if (!r.spectra.empty()) {
        json arr = json::array();
        for (const SpectrumEntry& s : r.spectra) {
            json e;
            e["input"] = s.input;
            if (!s.error.empty()) {
                e["error"] = s.error;
            } else {
                e["outlier_peak"] = s.outlier_peak;
                e["mp_distance"] = s.mp_distance;
                e["gamma"] = s.gamma;
                e["k"] = s.k;
                e["n_slices"] = s.n_slices;
                e["skipped_slices"] = s.skipped_slices;
                e["max_trace_error"] = s.max_trace_error;
                e["sigma2"] = s.sigma2;
                e["ks_bulk"] = s.ks_bulk;
                e["in_support_fraction"] = s.in_support_fraction;
            }
            arr.push_back(e);
        }
        metrics["spectrum"] = arr;
    }
    if (!r.nist.empty()) {
        json arr = json::array();
        for (const NistEntry& n : r.nist) {
            json e;
            e["input"] = n.input;
            if (!n.error.empty()) {
                e["error"] = n.error;
            } else {
                json outs = json::array();
                for (const TestOutcome& o : n.outcomes) outs.push_back(outcome_to_json(o));
                e["outcomes"] = outs;
            }
            arr.push_back(e);
        }
        metrics["nist"] = arr;
    }
    if (!r.xeb.empty()) {
        json arr = json::array();
        for (const XebEntry& x : r.xeb) {
            json e;
            e["input"] = x.input;
            if (!x.error.empty()) {
                e["error"] = x.error;
            } else {
                e["fidelity"] = x.result.fidelity;
                e["std_error"] = x.result.std_error;
                e["m"] = x.result.m;
                e["n"] = x.result.n;
                e["ideal"] = x.ideal_ref;
            }
            arr.push_back(e);
        }
        metrics["xeb"] = arr;
    }
    if (!r.wasserstein.empty() || requested_w) {
        json wj;
        wj["normalization"] = r.wasserstein_normalization;
        json arr = json::array();
        for (const WassersteinEntry& w : r.wasserstein) {
            json e;
            e["a"] = w.a;
            e["b"] = w.b;
            e["alpha"] = w.alpha;
            if (!w.error.empty()) {
                e["error"] = w.error;
            } else {
                e["distance"] = w.distance;
                e["m_used"] = w.m_used;
            }
            arr.push_back(e);
        }
        wj["pairs"] = arr;
        metrics["wasserstein"] = wj;
    }
    j["metrics"] = metrics.is_null() ? json::object() : metrics;
    j["errors"] = r.errors;
    return j;
}

std::string report_to_text(const MetricReport& r) {
    std::ostringstream out;
    out << "rcs-verify report  schema=" << r.schema_version << "  tool=" << r.tool_version;
    if (!r.timestamp.empty()) out << "  " << r.timestamp;
    out << "\n\ninputs:\n";
    for (std::size_t i = 0; i < r.inputs.size(); ++i) {
        const InputEntry& e = r.inputs[i];
        out << "  [" << i << "] " << e.label;
        if (!e.error.empty()) {
            out << "  ERROR: " << e.error << "\n";
            continue;
        }
        out << "  source=" << e.source << "  n=" << e.n << "  M=" << e.m << "  " << e.hash << "\n";
    }
    auto entry_head = [&](const char* name, std::size_t input) {
        out << "  " << name << " [" << input << "]: ";
    };
    if (!r.heatmaps.empty()) {
        out << "\nheatmap:\n";
        for (const HeatmapEntry& h : r.heatmaps) {
            entry_head("heatmap", h.input);
            if (!h.error.empty()) {
                out << "ERROR: " << h.error << "\n";
            } else {
                out << "p1=" << h.p1 << "  max_column_bias=" << h.max_column_bias
                    << "  slices=" << h.l_slices << (h.has_sliced ? "" : "  (sliced mean omitted)")
                    << "\n";
            }
        }
    }
    if (!r.spectra.empty()) {
        out << "\nspectrum:\n";
        for (const SpectrumEntry& s : r.spectra) {
            entry_head("spectrum", s.input);
            if (!s.error.empty()) {
                out << "ERROR: " << s.error << "\n";
            } else {
                out << "outlier_peak=" << s.outlier_peak << "  mp_distance=" << s.mp_distance
                    << "  gamma=" << s.gamma << "  k=" << s.k << "  ks_bulk=" << s.ks_bulk
                    << "  in_support=" << s.in_support_fraction << "\n";
            }
        }
    }
    if (!r.nist.empty()) {
        out << "\nnist:\n";
        for (const NistEntry& n : r.nist) {
            if (!n.error.empty()) {
                entry_head("nist", n.input);
                out << "ERROR: " << n.error << "\n";
                continue;
            }
            for (const TestOutcome& o : n.outcomes) {
                entry_head("nist", n.input);
                out << o.test_name << "  ";
                if (o.skipped) {
                    out << "SKIPPED\n";
                } else {
                    out << "p=" << o.p_value << "  " << (o.passed ? "pass" : "FAIL") << "\n";
                }
            }
        }
    }
    if (!r.xeb.empty()) {
        out << "\nxeb:\n";
        for (const XebEntry& x : r.xeb) {
            entry_head("xeb", x.input);
            if (!x.error.empty()) {
                out << "ERROR: " << x.error << "\n";
            } else {
                out << "fidelity=" << x.result.fidelity << "  std_error=" << x.result.std_error
                    << "  M=" << x.result.m << "  ideal=" << x.ideal_ref << "\n";
            }
        }
    }
    if (!r.wasserstein.empty()) {
        out << "\nwasserstein (" << r.wasserstein_normalization << "):\n";
        for (const WassersteinEntry& w : r.wasserstein) {
            out << "  W[" << w.a << "," << w.b << "] alpha=" << w.alpha << ": ";
            if (!w.error.empty()) {
                out << "ERROR: " << w.error << "\n";
            } else {
                out << w.distance << "  (M=" << w.m_used << ")\n";
            }
        }
    }
    if (!r.errors.empty()) {
        out << "\nrun errors:\n";
        for (const std::string& e : r.errors) out << "  " << e << "\n";
    }
    return out.str();
}

} // namespace

std::string emit_report(const MetricReport& report, ReportFormat format) {
    if (format == ReportFormat::text) return report_to_text(report);
    return report_to_json(report).dump(2) + "\n";
}

MetricReport parse_report(const std::string& json_text) {
    json j = json::parse(json_text);
    MetricReport r;
    r.schema_version = j.value("schema_version", 0);
    if (r.schema_version != kReportSchemaVersion) {
        throw std::invalid_argument("parse_report: unsupported schema version " +
                                    std::to_string(r.schema_version));
    }
    r.tool_version = j.value("tool_version", std::string{});
    r.timestamp = j.value("timestamp", std::string{});
    if (j.contains("config")) r.config_echo = j["config"];
    for (const auto& ji : j.value("inputs", json::array())) {
        InputEntry e;
        e.label = ji.value("label", std::string{});
        e.source = ji.value("source", std::string{});
        e.n = ji.value("n", 0);
        e.m = ji.value("m", std::size_t{0});
        e.hash = ji.value("hash", std::string{});
        if (ji.contains("descriptor")) e.descriptor = descriptor_from_json(ji["descriptor"]);
        e.error = ji.value("error", std::string{});
        r.inputs.push_back(e);
    }
    const json metrics = j.value("metrics", json::object());
    for (const auto& je : metrics.value("heatmap", json::array())) {
        HeatmapEntry h;
        h.input = je.value("input", std::size_t{0});
        h.error = je.value("error", std::string{});
        if (h.error.empty()) {
            h.p1 = je.value("p1", 0.0);
            h.max_column_bias = je.value("max_column_bias", 0.0);
            h.l_slices = je.value("l_slices", std::size_t{0});
            h.has_sliced = je.value("has_sliced", false);
        }
        r.heatmaps.push_back(h);
    }
    for (const auto& je : metrics.value("spectrum", json::array())) {
        SpectrumEntry s;
        s.input = je.value("input", std::size_t{0});
        s.error = je.value("error", std::string{});
        if (s.error.empty()) {
            s.outlier_peak = je.value("outlier_peak", 0.0);
            s.mp_distance = je.value("mp_distance", 0.0);
            s.gamma = je.value("gamma", 0.0);
            s.k = je.value("k", std::size_t{0});
            s.n_slices = je.value("n_slices", std::size_t{0});
            s.skipped_slices = je.value("skipped_slices", std::size_t{0});
            s.max_trace_error = je.value("max_trace_error", 0.0);
            s.sigma2 = je.value("sigma2", 0.0);
            s.ks_bulk = je.value("ks_bulk", 0.0);
            s.in_support_fraction = je.value("in_support_fraction", 0.0);
        }
        r.spectra.push_back(s);
    }
    for (const auto& je : metrics.value("nist", json::array())) {
        NistEntry n;
        n.input = je.value("input", std::size_t{0});
        n.error = je.value("error", std::string{});
        for (const auto& jo : je.value("outcomes", json::array())) {
            n.outcomes.push_back(outcome_from_json(jo));
        }
        r.nist.push_back(n);
    }
    for (const auto& je : metrics.value("xeb", json::array())) {
        XebEntry x;
        x.input = je.value("input", std::size_t{0});
        x.error = je.value("error", std::string{});
        if (x.error.empty()) {
            x.result.fidelity = je.value("fidelity", 0.0);
            x.result.std_error = je.value("std_error", 0.0);
            x.result.m = je.value("m", std::size_t{0});
            x.result.n = je.value("n", 0);
            x.ideal_ref = je.value("ideal", std::string{});
        }
        r.xeb.push_back(x);
    }
    if (metrics.contains("wasserstein")) {
        const json& wj = metrics["wasserstein"];
        r.wasserstein_normalization = wj.value("normalization", std::string{});
        for (const auto& je : wj.value("pairs", json::array())) {
            WassersteinEntry w;
            w.a = je.value("a", std::size_t{0});
            w.b = je.value("b", std::size_t{0});
            w.alpha = je.value("alpha", 1.0);
            w.error = je.value("error", std::string{});
            if (w.error.empty()) {
                w.distance = je.value("distance", 0.0);
                w.m_used = je.value("m_used", std::size_t{0});
            }
            r.wasserstein.push_back(w);
        }
    }
    for (const auto& je : j.value("errors", json::array())) r.errors.push_back(je.get<std::string>());
    return r;
}

} // namespace rcs
