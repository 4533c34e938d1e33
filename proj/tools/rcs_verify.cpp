// SPDX-License-Identifier: Apache-2.0
//
// rcs-verify: statistical certification toolkit for bit-string samples from
// random circuit sampling experiments. See README for the full workflow.

#include "rcs/circuit.hpp"
#include "rcs/nist.hpp"
#include "rcs/report.hpp"
#include "rcs/sample_set.hpp"
#include "rcs/spectral.hpp"
#include "rcs/statevector.hpp"
#include "rcs/transport.hpp"
#include "rcs/xeb.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_heatmap_csv(const rcs::HeatMap& hm, const std::string& path) {
    std::ostringstream out;
    out.precision(17);
    out << "# p1=" << hm.p1 << "\n# per_qubit_mean\n";
    for (int c = 0; c < hm.n; ++c) out << (c ? "," : "") << hm.per_qubit_mean[c];
    out << "\n";
    if (hm.has_sliced) {
        out << "# sliced_mean " << hm.n << "x" << hm.n << " over " << hm.l_slices << " slices\n";
        for (int r = 0; r < hm.n; ++r) {
            for (int c = 0; c < hm.n; ++c) {
                out << (c ? "," : "") << hm.sliced_mean[static_cast<std::size_t>(r) * hm.n + c];
            }
            out << "\n";
        }
    }
    write_text(path, out.str());
}

void write_heatmap_pgm(const rcs::HeatMap& hm, const std::string& path) {
    if (!hm.has_sliced) throw std::runtime_error("pgm export needs the sliced mean (M >= n)");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "P5\n" << hm.n << " " << hm.n << "\n255\n";
    for (double v : hm.sliced_mean) {
        double clamped = std::min(1.0, std::max(0.0, v));
        out.put(static_cast<char>(static_cast<unsigned char>(std::lround(clamped * 255.0))));
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical certification of random-circuit bit-string samples"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int threads = 1;
    bool no_timestamp = false;
    app.add_option("--seed", seed, "global seed for synthetic inputs and circuits");
    app.add_option("--threads", threads, "worker budget for batch runs")->check(CLI::PositiveNumber);
    app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp from reports");

    // compare
    auto* cmp = app.add_subcommand("compare", "run a batch comparison from a config file");
    std::string cmp_config, cmp_out, cmp_format = "json";
    cmp->add_option("--config", cmp_config, "JSON run configuration")->required();
    cmp->add_option("--format", cmp_format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmp->add_option("--out", cmp_out, "write the report here instead of stdout");

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate a circuit and sample bit strings");
    int sim_n = 0, sim_cycles = 0, sim_rows = 0, sim_cols = 0;
    std::size_t sim_records = 0;
    std::string sim_out, sim_prob_out, sim_pattern = "ABCDCDAB", sim_topology = "ring";
    bool sim_prob_csv = false;
    sim->add_option("--n", sim_n, "qubit count")->required();
    sim->add_option("--cycles", sim_cycles, "gate cycles")->required();
    sim->add_option("--records", sim_records, "bit strings to sample")->required();
    sim->add_option("--out", sim_out, "sample file to write")->required();
    sim->add_option("--prob-out", sim_prob_out, "also write the exact output distribution");
    sim->add_flag("--prob-csv", sim_prob_csv, "write the distribution as CSV instead of binary");
    sim->add_option("--pattern", sim_pattern, "coupler activation pattern");
    sim->add_option("--topology", sim_topology, "ring or grid")
        ->check(CLI::IsMember({"ring", "grid"}));
    sim->add_option("--rows", sim_rows, "grid rows");
    sim->add_option("--cols", sim_cols, "grid cols");

    // xeb
    auto* xebc = app.add_subcommand("xeb", "linear cross-entropy benchmark of a sample");
    std::string xeb_sample, xeb_ideal;
    xebc->add_option("--sample", xeb_sample, "sample file")->required();
    xebc->add_option("--ideal", xeb_ideal, "ideal probability table file")->required();

    // nist
    auto* nistc = app.add_subcommand("nist", "randomness test battery on a sample");
    std::string nist_sample;
    double nist_alpha = 0.01;
    nistc->add_option("--sample", nist_sample, "sample file")->required();
    nistc->add_option("--alpha", nist_alpha, "significance level");

    // heatmap
    auto* heatc = app.add_subcommand("heatmap", "bit-average heat map of a sample");
    std::string heat_sample, heat_csv, heat_pgm;
    heatc->add_option("--sample", heat_sample, "sample file")->required();
    heatc->add_option("--csv", heat_csv, "CSV export path");
    heatc->add_option("--pgm", heat_pgm, "8-bit PGM export path");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "Gram-matrix spectrum of a sample");
    std::string spec_sample, spec_csv;
    std::size_t spec_k = 0;
    bool spec_mean_peak = false;
    spec->add_option("--sample", spec_sample, "sample file")->required();
    spec->add_option("--k", spec_k, "rows per slice (default 2n)");
    spec->add_flag("--mean-peak", spec_mean_peak, "estimate the outlier peak by mean, not median");
    spec->add_option("--eigencsv", spec_csv, "write all eigenvalues to CSV");

    // wdist
    auto* wd = app.add_subcommand("wdist", "order-statistic Wasserstein distance of two samples");
    std::string wd_a, wd_b;
    double wd_alpha = 1.0;
    wd->add_option("--a", wd_a, "first sample file")->required();
    wd->add_option("--b", wd_b, "second sample file")->required();
    wd->add_option("--alpha", wd_alpha, "distance order (>= 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmp->parsed()) {
            rcs::RunConfig cfg = rcs::load_run_config(cmp_config);
            if (app.count("--seed")) cfg.seed = seed;
            if (app.count("--threads")) cfg.threads = threads;
            if (no_timestamp) cfg.with_timestamp = false;
            rcs::MetricReport rep = rcs::run_compare(cfg);
            std::string text = rcs::emit_report(
                rep, cmp_format == "text" ? rcs::ReportFormat::text : rcs::ReportFormat::json);
            if (cmp_out.empty()) {
                std::cout << text;
            } else {
                write_text(cmp_out, text);
            }
        } else if (sim->parsed()) {
            rcs::CircuitSpec cs;
            cs.n_qubits = sim_n;
            cs.m_cycles = sim_cycles;
            cs.seed = seed;
            cs.pattern = sim_pattern;
            cs.topology = sim_topology == "grid" ? rcs::Topology::grid : rcs::Topology::ring;
            cs.grid_rows = sim_rows;
            cs.grid_cols = sim_cols;
            rcs::StateVector psi = rcs::simulate(cs);
            rcs::ProbTable table = rcs::ProbTable::from_state(psi);
            rcs::SampleSet sample = rcs::sample_bitstrings(table, sim_records, seed + 1);
            rcs::write_sample_file(sample, sim_out);
            if (!sim_prob_out.empty()) rcs::write_prob_table(table, sim_prob_out, !sim_prob_csv);
            json j;
            j["n"] = sim_n;
            j["cycles"] = sim_cycles;
            j["seed"] = seed;
            j["records"] = sim_records;
            j["out"] = sim_out;
            if (!sim_prob_out.empty()) j["prob_out"] = sim_prob_out;
            std::cout << j.dump(2) << "\n";
        } else if (xebc->parsed()) {
            rcs::SampleSet sample = rcs::parse_sample_file(xeb_sample);
            rcs::ProbTable ideal = rcs::read_prob_table(xeb_ideal);
            rcs::XebResult r = rcs::linear_xeb(sample, ideal);
            json j;
            j["fidelity"] = r.fidelity;
            j["std_error"] = r.std_error;
            j["M"] = r.m;
            j["n"] = r.n;
            std::cout << j.dump(2) << "\n";
        } else if (nistc->parsed()) {
            rcs::SampleSet sample = rcs::parse_sample_file(nist_sample);
            auto outcomes = rcs::run_battery(sample, nist_alpha);
            json arr = json::array();
            for (const auto& o : outcomes) {
                json e;
                e["test_name"] = o.test_name;
                e["statistic"] = o.statistic;
                e["p_value"] = std::isnan(o.p_value) ? json(nullptr) : json(o.p_value);
                e["passed"] = o.passed;
                e["alpha"] = o.alpha;
                e["skipped"] = o.skipped;
                arr.push_back(e);
            }
            std::cout << arr.dump(2) << "\n";
        } else if (heatc->parsed()) {
            rcs::SampleSet sample = rcs::parse_sample_file(heat_sample);
            rcs::HeatMap hm = rcs::heat_map(sample);
            if (!heat_csv.empty()) write_heatmap_csv(hm, heat_csv);
            if (!heat_pgm.empty()) write_heatmap_pgm(hm, heat_pgm);
            double bias = 0.0;
            for (double v : hm.per_qubit_mean) bias = std::max(bias, std::abs(v - 0.5));
            json j;
            j["p1"] = hm.p1;
            j["max_column_bias"] = bias;
            j["l_slices"] = hm.l_slices;
            j["has_sliced"] = hm.has_sliced;
            std::cout << j.dump(2) << "\n";
        } else if (spec->parsed()) {
            rcs::SampleSet sample = rcs::parse_sample_file(spec_sample);
            rcs::SliceSet slices = rcs::slice_matrices(sample, spec_k);
            rcs::SpectrumOptions so;
            so.mean_peak = spec_mean_peak;
            so.threads = threads;
            rcs::SpectrumResult sr = rcs::gram_spectrum(slices, so);
            rcs::BulkFit fit = rcs::bulk_fit_report(sr);
            if (!spec_csv.empty()) {
                std::ostringstream out;
                out.precision(17);
                out << "# slices=" << sr.n_slices << " n=" << sr.n << " k=" << sr.k << "\n";
                for (double v : sr.eigenvalues) out << v << "\n";
                write_text(spec_csv, out.str());
            }
            json j;
            j["outlier_peak"] = sr.outlier_peak;
            j["mp_distance"] = sr.mp_distance;
            j["gamma"] = sr.gamma;
            j["k"] = sr.k;
            j["n_slices"] = sr.n_slices;
            j["skipped_slices"] = sr.skipped_slices;
            j["ks_bulk"] = fit.ks_bulk;
            j["sigma2"] = fit.sigma2;
            j["in_support_fraction"] = fit.in_support_fraction;
            std::cout << j.dump(2) << "\n";
        } else if (wd->parsed()) {
            rcs::SampleSet a = rcs::parse_sample_file(wd_a);
            rcs::SampleSet b = rcs::parse_sample_file(wd_b);
            rcs::WassersteinOptions wo;
            wo.alpha = wd_alpha;
            rcs::WassersteinResult r = rcs::wasserstein(rcs::to_values(a), rcs::to_values(b), wo);
            json j;
            j["distance"] = r.distance;
            j["alpha"] = r.alpha;
            j["M_used"] = r.m_used;
            if (r.truncated) j["truncated"] = true;
            std::cout << j.dump(2) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "rcs-verify: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
