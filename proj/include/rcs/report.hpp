// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/nist.hpp"
#include "rcs/sample_set.hpp"
#include "rcs/xeb.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rcs {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// One entry of a comparison run: a sample file or a synthetic generator.
struct InputSpec {
    enum class Kind { file, uniform, spoof, circuit };
    Kind kind = Kind::file;
    std::string path;        // file
    int n = 0;               // uniform/spoof/circuit
    std::size_t m = 0;       // records to load or generate
    std::optional<std::uint64_t> seed; // default: global seed + input index
    int prefix = 0;          // spoof
    int fixed_value = 0;     // spoof
    int cycles = 0;          // circuit
    std::string pattern = "ABCDCDAB"; // circuit
    std::string topology = "ring";    // circuit: "ring" or "grid"
    int grid_rows = 0, grid_cols = 0; // circuit grid
    std::optional<int> expected_n;    // file
};

/// Where the ideal distribution for XEB comes from.
struct IdealSpec {
    enum class Kind { probfile, circuit } kind = Kind::probfile;
    std::string path; // probfile
    int n = 0;        // circuit
    int cycles = 0;
    std::uint64_t seed = 0;
    std::string pattern = "ABCDCDAB";
    std::string topology = "ring";
    int grid_rows = 0, grid_cols = 0;
};

struct RunConfig {
    std::uint64_t seed = 0;
    int threads = 1;
    bool with_timestamp = true;
    std::vector<std::string> metrics; // subset of heatmap, spectrum, nist, xeb, wasserstein
    std::vector<InputSpec> inputs;
    std::optional<IdealSpec> ideal;
    // tunables, echoed in full into the report
    std::size_t spectrum_k = 0;   // 0 = 2n
    bool spectrum_mean_peak = false;
    double wasserstein_alpha = 1.0;
    double nist_alpha = 0.01;
    int wasserstein_reference = -1; // -1 = all pairs
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& cfg);

struct InputEntry {
    std::string label;
    std::string source;
    int n = 0;
    std::size_t m = 0;
    std::string hash; // fnv1a64 over the analyzed bits (or file bytes for files)
    std::optional<DatasetDescriptor> descriptor;
    std::string error; // nonempty: load failed, metrics skipped
};

struct HeatmapEntry {
    std::size_t input = 0;
    double p1 = 0.0;
    double max_column_bias = 0.0; // max |per-qubit mean - 1/2|
    std::size_t l_slices = 0;
    bool has_sliced = false;
    std::string error;
};

struct SpectrumEntry {
    std::size_t input = 0;
    double outlier_peak = 0.0, mp_distance = 0.0, gamma = 0.0;
    double sigma2 = 0.0, ks_bulk = 0.0, in_support_fraction = 0.0;
    double max_trace_error = 0.0;
    std::size_t k = 0, n_slices = 0, skipped_slices = 0;
    std::string error;
};

struct NistEntry {
    std::size_t input = 0;
    std::vector<TestOutcome> outcomes;
    std::string error;
};

struct XebEntry {
    std::size_t input = 0;
    XebResult result;
    std::string ideal_ref; // "probfile:<path>" or "circuit:self" or "circuit:<n>x<cycles>"
    std::string error;
};

struct WassersteinEntry {
    std::size_t a = 0, b = 0;
    double distance = 0.0;
    double alpha = 1.0;
    std::size_t m_used = 0;
    std::string error;
};

struct MetricReport {
    int schema_version = kReportSchemaVersion;
    std::string tool_version = kToolVersion;
    std::string timestamp; // empty = omitted from serialization
    nlohmann::json config_echo;
    std::vector<InputEntry> inputs;
    std::vector<HeatmapEntry> heatmaps;
    std::vector<SpectrumEntry> spectra;
    std::vector<NistEntry> nist;
    std::vector<XebEntry> xeb;
    std::vector<WassersteinEntry> wasserstein;
    std::string wasserstein_normalization = "uniform-1/M";
    std::vector<std::string> errors; // run-level problems
};

MetricReport run_compare(const RunConfig& cfg);

enum class ReportFormat { json, text };
std::string emit_report(const MetricReport& report, ReportFormat format);

/// Inverse of the JSON emitter; used for round-trip checks and downstream tools.
MetricReport parse_report(const std::string& json_text);

} // namespace rcs
