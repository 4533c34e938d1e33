// SPDX-License-Identifier: Apache-2.0
#include "rcs/sample_set.hpp"

#include "rcs/rng.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcs {

std::string to_string(SampleSource s) {
    switch (s) {
    case SampleSource::hardware: return "hardware";
    case SampleSource::tensor_network: return "tensor-network";
    case SampleSource::uniform_synthetic: return "uniform-synthetic";
    case SampleSource::spoof_synthetic: return "spoof-synthetic";
    case SampleSource::simulator: return "simulator";
    }
    return "unknown";
}

namespace {

std::string basename_of(const std::string& path) {
    auto pos = path.find_last_of("/\\");
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

std::string strip_extension(const std::string& name) {
    auto pos = name.find_last_of('.');
    return pos == std::string::npos ? name : name.substr(0, pos);
}

bool parse_int_field(const std::string& tok, char key, int min_value, std::optional<int>& out) {
    if (tok.size() < 2 || tok[0] != key) return false;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    }
    try {
        int v = std::stoi(tok.substr(1));
        if (v < min_value) return false;
        out = v;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_pattern_field(const std::string& tok, std::optional<std::string>& out) {
    if (tok.size() < 2 || tok[0] != 'p') return false;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i] < 'A' || tok[i] > 'D') return false;
    }
    out = tok.substr(1);
    return true;
}

void check_budget(std::size_t n, std::size_t m, std::size_t budget) {
    if (n != 0 && m > budget / n) {
        std::ostringstream msg;
        msg << "sample of " << m << " x " << n << " bits exceeds the memory budget of " << budget
            << " bytes";
        throw std::length_error(msg.str());
    }
}

} // namespace

DatasetDescriptor parse_descriptor(const std::string& filename) {
    DatasetDescriptor d;
    d.filename = filename;

    std::string stem = strip_extension(basename_of(filename));
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start <= stem.size()) {
        auto pos = stem.find('-', start);
        if (pos == std::string::npos) {
            tokens.push_back(stem.substr(start));
            break;
        }
        tokens.push_back(stem.substr(start, pos - start));
        start = pos + 1;
    }

    bool full_form = tokens.size() == 6 && tokens[0] == "measurement";
    if (full_form) {
        full_form = parse_int_field(tokens[1], 'n', 1, d.n_qubits) &&
                    parse_int_field(tokens[2], 'm', 1, d.m_cycles) &&
                    parse_int_field(tokens[3], 's', 0, d.seed) &&
                    parse_int_field(tokens[4], 'e', 0, d.elided_gates) &&
                    parse_pattern_field(tokens[5], d.pattern);
    }
    if (full_form) return d;

    // Salvage whatever fields look like the convention's, and flag the name.
    d = DatasetDescriptor{};
    d.filename = filename;
    d.warning = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        if (!d.n_qubits && parse_int_field(tok, 'n', 1, d.n_qubits)) continue;
        if (!d.m_cycles && parse_int_field(tok, 'm', 1, d.m_cycles)) continue;
        if (!d.seed && parse_int_field(tok, 's', 0, d.seed)) continue;
        if (!d.elided_gates && parse_int_field(tok, 'e', 0, d.elided_gates)) continue;
        if (!d.pattern) parse_pattern_field(tok, d.pattern);
    }
    return d;
}

SampleSet parse_sample_file(const std::string& path, std::optional<int> expected_n,
                            SampleSource source, std::size_t memory_budget) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);

    SampleSet s;
    s.label = basename_of(path);
    s.source = source;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // accept CRLF and trailing whitespace
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        if (line.empty()) continue;

        if (s.m == 0) {
            s.n = static_cast<int>(line.size());
            if (expected_n && s.n != *expected_n) {
                std::ostringstream msg;
                msg << path << ": expected " << *expected_n << " bits per record, found " << s.n;
                throw std::runtime_error(msg.str());
            }
        } else if (line.size() != static_cast<std::size_t>(s.n)) {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": record length " << line.size()
                << " differs from first record length " << s.n;
            throw std::runtime_error(msg.str());
        }
        check_budget(static_cast<std::size_t>(s.n), s.m + 1, memory_budget);

        for (char c : line) {
            if (c != '0' && c != '1') {
                std::ostringstream msg;
                msg << path << ":" << line_no << ": non-binary character '" << c << "'";
                throw std::runtime_error(msg.str());
            }
            s.bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        ++s.m;
    }
    if (in.bad()) throw std::runtime_error("I/O error while reading " + path);
    if (s.m == 0) throw std::runtime_error(path + ": no records");
    return s;
}

SampleSet generate_uniform(int n, std::size_t m, std::uint64_t seed, std::size_t memory_budget) {
    if (n < 1 || m < 1) throw std::invalid_argument("generate_uniform: n and M must be >= 1");
    check_budget(static_cast<std::size_t>(n), m, memory_budget);

    SampleSet s;
    s.n = n;
    s.m = m;
    s.source = SampleSource::uniform_synthetic;
    {
        std::ostringstream lbl;
        lbl << "uniform-n" << n << "-M" << m << "-s" << seed;
        s.label = lbl.str();
    }
    s.bits.resize(s.total_bits());
    Rng rng(seed);
    for (auto& b : s.bits) b = static_cast<std::uint8_t>(rng.fair_bit());
    return s;
}

SampleSet generate_spoof(int n, std::size_t m, std::uint64_t seed, int fixed_prefix_len,
                         int fixed_value, std::size_t memory_budget) {
    if (n < 1 || m < 1) throw std::invalid_argument("generate_spoof: n and M must be >= 1");
    if (fixed_prefix_len < 0 || fixed_prefix_len > n) {
        throw std::out_of_range("generate_spoof: prefix length out of [0, n]");
    }
    if (fixed_value != 0 && fixed_value != 1) {
        throw std::invalid_argument("generate_spoof: fixed value must be 0 or 1");
    }
    check_budget(static_cast<std::size_t>(n), m, memory_budget);

    SampleSet s;
    s.n = n;
    s.m = m;
    s.source = SampleSource::spoof_synthetic;
    {
        std::ostringstream lbl;
        lbl << "spoof-n" << n << "-M" << m << "-s" << seed << "-prefix" << fixed_prefix_len << "-v"
            << fixed_value;
        s.label = lbl.str();
    }
    s.bits.resize(s.total_bits());
    Rng rng(seed);
    auto fixed = static_cast<std::uint8_t>(fixed_value);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint8_t* row = s.bits.data() + i * static_cast<std::size_t>(n);
        for (int q = 0; q < fixed_prefix_len; ++q) row[q] = fixed;
        for (int q = fixed_prefix_len; q < n; ++q) row[q] = static_cast<std::uint8_t>(rng.fair_bit());
    }
    return s;
}

void write_sample_file(const SampleSet& sample, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    std::string line(static_cast<std::size_t>(sample.n), '0');
    for (std::size_t i = 0; i < sample.m; ++i) {
        auto row = sample.row(i);
        for (int q = 0; q < sample.n; ++q) line[q] = row[q] ? '1' : '0';
        out << line << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("I/O error while writing " + path);
}

} // namespace rcs
