// SPDX-License-Identifier: Apache-2.0
//
// Tests for the comparison-run driver: config parsing, metric orchestration,
// fault isolation, and report serialization (JSON round trip + text mode).
#include <doctest.h>

#include "rcs/report.hpp"
#include "rcs/statevector.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

// Self-deleting temporary file under /tmp.
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents = "", const std::string& tag = "cfg") {
        static int counter = 0;
        path = "/tmp/rcs_report_test_" + tag + "_" + std::to_string(++counter) + ".tmp";
        if (!contents.empty()) {
            std::ofstream out(path, std::ios::binary);
            out << contents;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
};

bool has(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("minimal config parses with documented defaults") {
    json j = {{"metrics", {"heatmap"}},
              {"inputs", {{{"kind", "uniform"}, {"n", 4}, {"m", 10}}}}};
    rcs::RunConfig cfg = rcs::parse_run_config(j);
    CHECK(cfg.seed == 0);
    CHECK(cfg.threads == 1);
    CHECK(cfg.with_timestamp);
    REQUIRE(cfg.metrics.size() == 1);
    CHECK(cfg.metrics[0] == "heatmap");
    REQUIRE(cfg.inputs.size() == 1);
    CHECK(cfg.inputs[0].kind == rcs::InputSpec::Kind::uniform);
    CHECK(cfg.inputs[0].n == 4);
    CHECK(cfg.inputs[0].m == 10);
    CHECK(!cfg.inputs[0].seed);
    CHECK(!cfg.ideal);
    CHECK(cfg.spectrum_k == 0);
    CHECK(!cfg.spectrum_mean_peak);
    CHECK(cfg.wasserstein_alpha == 1.0);
    CHECK(cfg.nist_alpha == 0.01);
    CHECK(cfg.wasserstein_reference == -1);
}

TEST_CASE("wdist alias maps to wasserstein and duplicates collapse") {
    json j = {{"metrics", {"wdist", "wasserstein", "heatmap", "heatmap"}},
              {"inputs", {{{"kind", "uniform"}, {"n", 2}, {"m", 4}}}}};
    rcs::RunConfig cfg = rcs::parse_run_config(j);
    REQUIRE(cfg.metrics.size() == 2);
    CHECK(cfg.metrics[0] == "wasserstein");
    CHECK(cfg.metrics[1] == "heatmap");
}

TEST_CASE("full config survives parse -> emit -> parse unchanged") {
    json j;
    j["seed"] = 42;
    j["threads"] = 3;
    j["timestamp"] = false;
    j["metrics"] = {"xeb", "wasserstein", "spectrum"};
    j["inputs"] = json::array({
        {{"kind", "file"}, {"path", "/data/a.txt"}, {"expected_n", 53}, {"seed", 9}},
        {{"kind", "uniform"}, {"n", 10}, {"m", 100}},
        {{"kind", "spoof"}, {"n", 10}, {"m", 100}, {"prefix", 3}, {"value", 1}},
        {{"kind", "circuit"},
         {"n", 6},
         {"cycles", 8},
         {"m", 50},
         {"pattern", "ABCD"},
         {"topology", "grid"},
         {"grid_rows", 2},
         {"grid_cols", 3}},
    });
    j["ideal"] = {{"kind", "probfile"}, {"path", "/data/ideal.bin"}};
    j["options"] = {{"k", 32}, {"mean_peak", true}, {"alpha", 2.0},
                    {"nist_alpha", 0.05}, {"reference", 1}};

    rcs::RunConfig cfg = rcs::parse_run_config(j);
    CHECK(cfg.seed == 42);
    CHECK(cfg.threads == 3);
    CHECK(!cfg.with_timestamp);
    REQUIRE(cfg.inputs.size() == 4);
    CHECK(cfg.inputs[0].kind == rcs::InputSpec::Kind::file);
    CHECK(cfg.inputs[0].path == "/data/a.txt");
    REQUIRE(cfg.inputs[0].expected_n);
    CHECK(*cfg.inputs[0].expected_n == 53);
    REQUIRE(cfg.inputs[0].seed);
    CHECK(*cfg.inputs[0].seed == 9);
    CHECK(cfg.inputs[2].prefix == 3);
    CHECK(cfg.inputs[2].fixed_value == 1);
    CHECK(cfg.inputs[3].topology == "grid");
    CHECK(cfg.inputs[3].grid_rows == 2);
    CHECK(cfg.inputs[3].grid_cols == 3);
    REQUIRE(cfg.ideal);
    CHECK(cfg.ideal->kind == rcs::IdealSpec::Kind::probfile);
    CHECK(cfg.spectrum_k == 32);
    CHECK(cfg.spectrum_mean_peak);
    CHECK(cfg.wasserstein_alpha == 2.0);
    CHECK(cfg.nist_alpha == 0.05);
    CHECK(cfg.wasserstein_reference == 1);

    // the canonical form is a fixed point of parse -> emit
    json canon = rcs::config_to_json(cfg);
    json canon2 = rcs::config_to_json(rcs::parse_run_config(canon));
    CHECK(canon.dump() == canon2.dump());
}

TEST_CASE("config rejections carry actionable messages") {
    auto reject = [](const json& j, const char* piece) {
        CHECK_THROWS_WITH_AS(rcs::parse_run_config(j), doctest::Contains(piece),
                             std::invalid_argument);
    };
    json ok_inputs = json::array({{{"kind", "uniform"}, {"n", 2}, {"m", 4}}});

    reject(json::array(), "top level must be an object");
    reject({{"inputs", ok_inputs}}, "metrics must be a nonempty array");
    reject({{"metrics", json::array()}, {"inputs", ok_inputs}}, "metrics must be a nonempty array");
    reject({{"metrics", {42}}, {"inputs", ok_inputs}}, "metrics entries must be strings");
    reject({{"metrics", {"entropy"}}, {"inputs", ok_inputs}}, "unknown metric 'entropy'");
    reject({{"metrics", {"heatmap"}}}, "inputs must be a nonempty array");
    reject({{"metrics", {"heatmap"}}, {"inputs", json::array()}},
           "inputs must be a nonempty array");
    reject({{"metrics", {"heatmap"}}, {"inputs", {5}}}, "inputs[0] must be an object");
    reject({{"metrics", {"heatmap"}}, {"inputs", {{{"kind", "magic"}}}}},
           "unknown kind 'magic'");
    reject({{"metrics", {"heatmap"}}, {"inputs", {{{"kind", "file"}}}}},
           "missing string field 'path'");
    reject({{"metrics", {"heatmap"}}, {"inputs", {{{"kind", "uniform"}, {"n", 2}}}}},
           "missing integer field 'm'");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"threads", 0}},
           "threads must be >= 1");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"timestamp", 1}},
           "timestamp must be a boolean");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"options", {{"k", -1}}}},
           "options.k must be >= 0");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"options", {{"mean_peak", 1}}}},
           "options.mean_peak must be a boolean");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"options", {{"alpha", 0.5}}}},
           "options.alpha must be >= 1");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"options", {{"nist_alpha", 0.0}}}},
           "options.nist_alpha must be in (0,1)");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"options", {{"nist_alpha", 1.0}}}},
           "options.nist_alpha must be in (0,1)");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"options", {{"reference", 1}}}},
           "options.reference is out of range");
    reject({{"metrics", {"heatmap"}}, {"inputs", ok_inputs},
            {"ideal", {{"kind", "oracle"}}}},
           "ideal: unknown kind 'oracle'");

    // xeb needs an ideal source: absent both ideal and circuit inputs it is an error
    reject({{"metrics", {"xeb"}}, {"inputs", ok_inputs}},
           "xeb requested but no ideal distribution configured");
    json circuit_in = json::array({{{"kind", "circuit"}, {"n", 4}, {"cycles", 2}, {"m", 8}}});
    CHECK_NOTHROW(rcs::parse_run_config({{"metrics", {"xeb"}}, {"inputs", circuit_in}}));
    CHECK_NOTHROW(rcs::parse_run_config(
        {{"metrics", {"xeb"}},
         {"inputs", ok_inputs},
         {"ideal", {{"kind", "circuit"}, {"n", 2}, {"cycles", 2}}}}));
    // reference = -1 explicitly means all pairs and is always in range
    CHECK_NOTHROW(rcs::parse_run_config(
        {{"metrics", {"heatmap"}}, {"inputs", ok_inputs}, {"options", {{"reference", -1}}}}));
}

TEST_CASE("load_run_config reads a file and reports parse failures") {
    TempFile good(R"({"metrics":["heatmap"],"inputs":[{"kind":"uniform","n":3,"m":5}]})");
    rcs::RunConfig cfg = rcs::load_run_config(good.path);
    CHECK(cfg.inputs.size() == 1);
    CHECK(cfg.inputs[0].n == 3);

    TempFile bad("{ this is not json", "badcfg");
    CHECK_THROWS_WITH_AS(rcs::load_run_config(bad.path), doctest::Contains("JSON parse failure"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(rcs::load_run_config("/nonexistent/dir/cfg.json"),
                         doctest::Contains("cannot open config file"), std::runtime_error);
}

TEST_CASE("uniform vs spoof comparison flags the spoof on every metric") {
    json j = {{"seed", 7},
              {"threads", 2},
              {"timestamp", false},
              {"metrics", {"heatmap", "spectrum", "nist", "wasserstein"}},
              {"inputs",
               {{{"kind", "uniform"}, {"n", 8}, {"m", 2048}},
                {{"kind", "spoof"}, {"n", 8}, {"m", 2048}, {"prefix", 4}, {"value", 1}}}},
              {"options", {{"k", 16}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    CHECK(rep.schema_version == 1);
    CHECK(rep.tool_version == rcs::kToolVersion);
    CHECK(rep.timestamp.empty());
    CHECK(rep.errors.empty());

    REQUIRE(rep.inputs.size() == 2);
    CHECK(rep.inputs[0].error.empty());
    CHECK(rep.inputs[0].label == "uniform-n8-M2048-s7");
    CHECK(rep.inputs[0].source == "uniform-synthetic");
    CHECK(rep.inputs[0].n == 8);
    CHECK(rep.inputs[0].m == 2048);
    CHECK(rep.inputs[0].hash.substr(0, 8) == "fnv1a64:");
    CHECK(rep.inputs[1].label == "spoof-n8-M2048-s8-prefix4-v1"); // derived seed = 7 + 1
    CHECK(rep.inputs[1].source == "spoof-synthetic");
    CHECK(rep.inputs[0].hash != rep.inputs[1].hash);

    // heat map: fair sample hovers at 1/2; four pinned-to-one columns push the
    // spoof grand mean to (4*1 + 4*0.5)/8 = 3/4 and its worst column bias to 1/2
    REQUIRE(rep.heatmaps.size() == 2);
    const auto& h0 = rep.heatmaps[0];
    const auto& h1 = rep.heatmaps[1];
    REQUIRE(h0.error.empty());
    REQUIRE(h1.error.empty());
    CHECK(h0.p1 == doctest::Approx(0.5).epsilon(0.02));
    CHECK(h0.max_column_bias < 0.05);
    CHECK(h1.p1 == doctest::Approx(0.75).epsilon(0.02));
    CHECK(h1.max_column_bias == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(h0.l_slices == 256); // floor(2048 / 8) full 8-row slices
    CHECK(h0.has_sliced);

    // spectrum: 2048 rows in 16-row slices -> 128 Gram matrices with gamma = 1/2
    REQUIRE(rep.spectra.size() == 2);
    const auto& s0 = rep.spectra[0];
    const auto& s1 = rep.spectra[1];
    REQUIRE(s0.error.empty());
    REQUIRE(s1.error.empty());
    CHECK(s0.k == 16);
    CHECK(s0.n_slices == 128);
    CHECK(s0.gamma == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s0.max_trace_error < 1e-10);
    CHECK(s0.sigma2 > 0.05);
    CHECK(s0.sigma2 < 0.5);
    CHECK(s0.in_support_fraction > 0.5);
    // the pinned block inflates the top eigenvalue far beyond the fair peak
    CHECK(s1.mp_distance > s0.mp_distance + 0.5);

    // randomness battery: 16384 bits; the spoof's 3/4 ones rate sinks monobit
    // and invalidates the runs prerequisite
    REQUIRE(rep.nist.size() == 2);
    REQUIRE(rep.nist[0].error.empty());
    REQUIRE(rep.nist[1].error.empty());
    REQUIRE(rep.nist[0].outcomes.size() == 7);
    REQUIRE(rep.nist[1].outcomes.size() == 7);
    CHECK(rep.nist[0].outcomes[0].test_name == "monobit");
    CHECK(rep.nist[0].outcomes[4].test_name == "cumulative_sums_forward");
    CHECK(rep.nist[0].outcomes[6].test_name == "approximate_entropy");
    int passed = 0;
    for (const auto& o : rep.nist[0].outcomes) {
        CHECK(!o.skipped);
        if (o.passed) ++passed;
    }
    CHECK(passed >= 6);
    CHECK(!rep.nist[1].outcomes[0].passed);
    // runs prerequisite violated: the test runs but pins p to zero
    CHECK(!rep.nist[1].outcomes[2].skipped);
    CHECK(!rep.nist[1].outcomes[2].passed);
    CHECK(rep.nist[1].outcomes[2].p_value == 0.0);

    // transport distance: spoof values live in [15/16, 1); quantile shift ~ 0.47
    REQUIRE(rep.wasserstein.size() == 1);
    const auto& w = rep.wasserstein[0];
    CHECK(w.a == 0);
    CHECK(w.b == 1);
    CHECK(w.alpha == 1.0);
    REQUIRE(w.error.empty());
    CHECK(w.m_used == 2048);
    CHECK(w.distance > 0.40);
    CHECK(w.distance < 0.54);
    CHECK(rep.wasserstein_normalization == "uniform-1/M");
}

TEST_CASE("circuit input scores itself near unit fidelity") {
    json j = {{"seed", 1},
              {"timestamp", false},
              {"metrics", {"xeb"}},
              {"inputs",
               {{{"kind", "circuit"}, {"n", 10}, {"cycles", 14}, {"m", 20000}, {"seed", 5}}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    REQUIRE(rep.inputs.size() == 1);
    CHECK(rep.inputs[0].error.empty());
    CHECK(rep.inputs[0].label == "circuit-n10-m14-s5-M20000");
    CHECK(rep.inputs[0].source == "simulator");
    REQUIRE(rep.xeb.size() == 1);
    const auto& x = rep.xeb[0];
    REQUIRE(x.error.empty());
    CHECK(x.ideal_ref == "circuit:self");
    CHECK(x.result.n == 10);
    CHECK(x.result.m == 20000);
    CHECK(std::abs(x.result.fidelity - 1.0) < 0.3);
    CHECK(x.result.std_error > 0.0);
    CHECK(x.result.std_error < 0.05);
    CHECK(x.result.fidelity > 5.0 * x.result.std_error); // clearly not uniform
}

TEST_CASE("shared probfile ideal scores a uniform sample at exactly zero") {
    TempFile table_file("", "probtab");
    rcs::write_prob_table(rcs::ProbTable::uniform(6), table_file.path);

    json j = {{"seed", 3},
              {"timestamp", false},
              {"metrics", {"xeb"}},
              {"ideal", {{"kind", "probfile"}, {"path", table_file.path}}},
              {"inputs", {{{"kind", "uniform"}, {"n", 6}, {"m", 500}}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    REQUIRE(rep.xeb.size() == 1);
    REQUIRE(rep.xeb[0].error.empty());
    CHECK(rep.xeb[0].ideal_ref == "probfile:" + table_file.path);
    CHECK(rep.xeb[0].result.fidelity == 0.0);  // 2^n * 2^-n = 1 for every record
    CHECK(rep.xeb[0].result.std_error == 0.0); // all terms identical
}

TEST_CASE("shared circuit ideal is simulated once and referenced by name") {
    json j = {{"seed", 11},
              {"timestamp", false},
              {"metrics", {"xeb"}},
              {"ideal", {{"kind", "circuit"}, {"n", 6}, {"cycles", 8}, {"seed", 3}}},
              {"inputs", {{{"kind", "uniform"}, {"n", 6}, {"m", 400}}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    REQUIRE(rep.xeb.size() == 1);
    REQUIRE(rep.xeb[0].error.empty());
    CHECK(rep.xeb[0].ideal_ref == "circuit:n6-m8-s3");
    CHECK(rep.xeb[0].result.n == 6);
    // uniform records against an unrelated circuit: fidelity ~ 0 +- a few / sqrt(M)
    CHECK(std::abs(rep.xeb[0].result.fidelity) < 0.5);
}

TEST_CASE("unreadable ideal surfaces as a run error and per-entry failures") {
    json j = {{"timestamp", false},
              {"metrics", {"xeb"}},
              {"ideal", {{"kind", "probfile"}, {"path", "/nonexistent/ideal.bin"}}},
              {"inputs", {{{"kind", "uniform"}, {"n", 4}, {"m", 50}}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    REQUIRE(rep.errors.size() == 1);
    CHECK(has(rep.errors[0], "ideal:"));
    REQUIRE(rep.xeb.size() == 1);
    CHECK(has(rep.xeb[0].error, "ideal unavailable"));
}

TEST_CASE("one broken input does not poison the rest of the run") {
    json j = {{"seed", 2},
              {"threads", 2},
              {"timestamp", false},
              {"metrics", {"heatmap", "nist", "wasserstein"}},
              {"inputs",
               {{{"kind", "file"}, {"path", "/nonexistent/records.txt"}},
                {{"kind", "uniform"}, {"n", 20}, {"m", 1000}}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    REQUIRE(rep.inputs.size() == 2);
    CHECK(!rep.inputs[0].error.empty());
    CHECK(rep.inputs[0].source == "unavailable");
    CHECK(rep.inputs[0].label == "/nonexistent/records.txt");
    CHECK(rep.inputs[1].error.empty());

    // the failed input's metric slots are marked, never zero-filled results
    REQUIRE(rep.heatmaps.size() == 2);
    CHECK(rep.heatmaps[0].error == "input failed to load");
    REQUIRE(rep.heatmaps[1].error.empty());
    CHECK(rep.heatmaps[1].p1 == doctest::Approx(0.5).epsilon(0.02));
    REQUIRE(rep.nist.size() == 2);
    CHECK(rep.nist[0].error == "input failed to load");
    CHECK(rep.nist[1].error.empty());
    CHECK(rep.nist[1].outcomes.size() == 7);

    REQUIRE(rep.wasserstein.size() == 1);
    CHECK(has(rep.wasserstein[0].error, "input 0:"));
    CHECK(has(rep.wasserstein[0].error, "failed to load"));
    CHECK(rep.errors.empty()); // per-input failure, not a run-level error
}

TEST_CASE("input seeds default to global seed plus index; explicit seeds win") {
    json j = {{"seed", 100},
              {"timestamp", false},
              {"metrics", {"heatmap"}},
              {"inputs",
               {{{"kind", "uniform"}, {"n", 8}, {"m", 64}},
                {{"kind", "uniform"}, {"n", 8}, {"m", 64}, {"seed", 100}},
                {{"kind", "uniform"}, {"n", 8}, {"m", 64}}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    REQUIRE(rep.inputs.size() == 3);
    CHECK(rep.inputs[0].label == "uniform-n8-M64-s100");
    CHECK(rep.inputs[1].label == "uniform-n8-M64-s100");
    CHECK(rep.inputs[2].label == "uniform-n8-M64-s102");
    CHECK(rep.inputs[0].hash == rep.inputs[1].hash); // same stream
    CHECK(rep.inputs[0].hash != rep.inputs[2].hash);
}

TEST_CASE("reference mode anchors every transport pair to one input") {
    json base = {{"timestamp", false},
                 {"metrics", {"wasserstein"}},
                 {"inputs",
                  {{{"kind", "uniform"}, {"n", 6}, {"m", 128}},
                   {{"kind", "uniform"}, {"n", 6}, {"m", 128}},
                   {{"kind", "uniform"}, {"n", 6}, {"m", 128}}}}};

    json with_ref = base;
    with_ref["options"] = {{"reference", 1}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(with_ref));
    REQUIRE(rep.wasserstein.size() == 2);
    CHECK(rep.wasserstein[0].a == 1);
    CHECK(rep.wasserstein[0].b == 0);
    CHECK(rep.wasserstein[1].a == 1);
    CHECK(rep.wasserstein[1].b == 2);

    rcs::MetricReport all = rcs::run_compare(rcs::parse_run_config(base));
    REQUIRE(all.wasserstein.size() == 3);
    CHECK(all.wasserstein[0].a == 0);
    CHECK(all.wasserstein[0].b == 1);
    CHECK(all.wasserstein[1].a == 0);
    CHECK(all.wasserstein[1].b == 2);
    CHECK(all.wasserstein[2].a == 1);
    CHECK(all.wasserstein[2].b == 2);
}

TEST_CASE("emission is deterministic and thread-count independent") {
    json j = {{"seed", 19},
              {"threads", 2},
              {"timestamp", false},
              {"metrics", {"heatmap", "spectrum", "nist", "wasserstein"}},
              {"inputs",
               {{{"kind", "uniform"}, {"n", 8}, {"m", 256}},
                {{"kind", "spoof"}, {"n", 8}, {"m", 256}, {"prefix", 2}, {"value", 0}}}},
              {"options", {{"k", 16}}}};
    rcs::RunConfig cfg = rcs::parse_run_config(j);

    std::string e1 = rcs::emit_report(rcs::run_compare(cfg), rcs::ReportFormat::json);
    std::string e2 = rcs::emit_report(rcs::run_compare(cfg), rcs::ReportFormat::json);
    CHECK(e1 == e2);

    // same run on one thread: everything but the echoed thread count matches
    json j1 = j;
    j1["threads"] = 1;
    rcs::MetricReport r1 = rcs::run_compare(rcs::parse_run_config(j1));
    json a = json::parse(e1);
    json b = json::parse(rcs::emit_report(r1, rcs::ReportFormat::json));
    CHECK(a["inputs"].dump() == b["inputs"].dump());
    CHECK(a["metrics"].dump() == b["metrics"].dump());
    CHECK(a["errors"].dump() == b["errors"].dump());
}

TEST_CASE("JSON report round-trips bit-for-bit through parse_report") {
    // one healthy circuit input, one spoof that trips a per-entry error and a
    // pinned-to-zero p-value, so the round trip covers the error branches
    json j = {{"seed", 9},
              {"timestamp", false},
              {"metrics", {"heatmap", "spectrum", "nist", "xeb", "wasserstein"}},
              {"inputs",
               {{{"kind", "circuit"}, {"n", 6}, {"cycles", 6}, {"m", 2000}, {"seed", 9}},
                {{"kind", "spoof"}, {"n", 6}, {"m", 2000}, {"prefix", 3}, {"value", 1}}}}};
    rcs::MetricReport rep = rcs::run_compare(rcs::parse_run_config(j));

    // sanity on the branches this config is meant to exercise
    REQUIRE(rep.xeb.size() == 2);
    CHECK(rep.xeb[0].error.empty());
    CHECK(rep.xeb[0].ideal_ref == "circuit:self");
    CHECK(has(rep.xeb[1].error, "no ideal distribution configured"));
    REQUIRE(rep.nist.size() == 2);
    REQUIRE(rep.nist[1].outcomes.size() == 7);
    CHECK(!rep.nist[1].outcomes[2].passed); // runs prerequisite -> p = 0
    CHECK(rep.nist[1].outcomes[2].p_value == 0.0);

    std::string s1 = rcs::emit_report(rep, rcs::ReportFormat::json);
    rcs::MetricReport back = rcs::parse_report(s1);
    std::string s2 = rcs::emit_report(back, rcs::ReportFormat::json);
    CHECK(s1 == s2);

    CHECK(back.schema_version == rep.schema_version);
    CHECK(back.tool_version == rep.tool_version);
    CHECK(back.inputs.size() == rep.inputs.size());
    CHECK(back.inputs[0].hash == rep.inputs[0].hash);
    CHECK(back.xeb[0].result.fidelity == rep.xeb[0].result.fidelity);
    CHECK(back.xeb[0].result.std_error == rep.xeb[0].result.std_error);
    CHECK(back.spectra[0].mp_distance == rep.spectra[0].mp_distance);
    CHECK(back.wasserstein.size() == rep.wasserstein.size());
    CHECK(back.wasserstein[0].distance == rep.wasserstein[0].distance);

    // a skipped outcome serializes its missing p-value as null; splice one in
    // and confirm the NaN <-> null mapping is itself a stable round trip
    json doc = json::parse(s1);
    doc["metrics"]["nist"][1]["outcomes"].push_back({{"test_name", "synthetic_skip"},
                                                     {"statistic", 0.0},
                                                     {"p_value", nullptr},
                                                     {"passed", false},
                                                     {"alpha", 0.01},
                                                     {"skipped", true}});
    rcs::MetricReport spliced = rcs::parse_report(doc.dump(2) + "\n");
    REQUIRE(spliced.nist[1].outcomes.size() == 8);
    CHECK(spliced.nist[1].outcomes[7].skipped);
    CHECK(std::isnan(spliced.nist[1].outcomes[7].p_value));
    std::string t1 = rcs::emit_report(spliced, rcs::ReportFormat::json);
    std::string t2 = rcs::emit_report(rcs::parse_report(t1), rcs::ReportFormat::json);
    CHECK(t1 == t2);

    // text rendering of the same report mentions each section and oddity
    std::string text = rcs::emit_report(spliced, rcs::ReportFormat::text);
    CHECK(has(text, "rcs-verify report  schema=1"));
    CHECK(has(text, "inputs:"));
    CHECK(has(text, "circuit-n6-m6-s9-M2000"));
    CHECK(has(text, "heatmap:"));
    CHECK(has(text, "spectrum:"));
    CHECK(has(text, "nist:"));
    CHECK(has(text, "xeb:"));
    CHECK(has(text, "ideal=circuit:self"));
    CHECK(has(text, "ERROR: no ideal distribution configured"));
    CHECK(has(text, "SKIPPED"));
    CHECK(has(text, "wasserstein (uniform-1/M):"));
    CHECK(has(text, "W[0,1] alpha=1"));
}

TEST_CASE("parse_report rejects unknown schema versions and junk") {
    json j = {{"timestamp", false},
              {"metrics", {"heatmap"}},
              {"inputs", {{{"kind", "uniform"}, {"n", 4}, {"m", 16}}}}};
    std::string good = rcs::emit_report(rcs::run_compare(rcs::parse_run_config(j)),
                                        rcs::ReportFormat::json);

    json tampered = json::parse(good);
    tampered["schema_version"] = 2;
    CHECK_THROWS_WITH_AS(rcs::parse_report(tampered.dump()),
                         doctest::Contains("unsupported schema version"), std::invalid_argument);
    CHECK_THROWS_AS(rcs::parse_report("{}"), std::invalid_argument);
    CHECK_THROWS_AS(rcs::parse_report("not json at all"), std::exception);
}

TEST_CASE("run_compare refuses an empty input list") {
    rcs::RunConfig cfg;
    cfg.metrics = {"heatmap"};
    CHECK_THROWS_WITH_AS(rcs::run_compare(cfg), doctest::Contains("no inputs configured"),
                         std::invalid_argument);
}

} // TEST_SUITE
