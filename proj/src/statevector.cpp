// SPDX-License-Identifier: Apache-2.0
#include "rcs/statevector.hpp"

#include "rcs/numerics.hpp"
#include "rcs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcs {

namespace {

void check_width(int n) {
    if (n < 1) throw std::invalid_argument("statevector: n must be >= 1");
    if (n > kMaxSimQubits) {
        throw std::invalid_argument("statevector: n exceeds the " +
                                    std::to_string(kMaxSimQubits) + "-qubit simulator cap");
    }
}

// max |(U U^H - I)_ij| for the arity-appropriate block of g.u
double gate_unitarity_defect(const Gate& g) {
    int d = g.arity == 1 ? 2 : 4;
    double worst = 0.0;
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            cplx s = 0.0;
            for (int k = 0; k < d; ++k) s += g.u[r * d + k] * std::conj(g.u[c * d + k]);
            if (r == c) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

} // namespace

StateVector StateVector::zero_state(int n) {
    check_width(n);
    StateVector psi;
    psi.n = n;
    psi.amps.assign(std::size_t{1} << n, cplx{0.0, 0.0});
    psi.amps[0] = 1.0;
    return psi;
}

double StateVector::norm_error() const {
    CompensatedSum acc;
    for (const cplx& a : amps) acc.add(std::norm(a));
    return std::abs(acc.value() - 1.0);
}

void apply_gate(StateVector& psi, const Gate& g) {
    const std::size_t dim = psi.amps.size();
    if (g.arity == 1) {
        int q = g.qubits[0];
        if (q < 0 || q >= psi.n) throw std::out_of_range("apply_gate: qubit index out of range");
        // qubit q toggles bit (n-1-q) of the basis index
        const std::size_t stride = std::size_t{1} << (psi.n - 1 - q);
        const cplx u00 = g.u[0], u01 = g.u[1], u10 = g.u[2], u11 = g.u[3];
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                cplx a0 = psi.amps[i], a1 = psi.amps[i + stride];
                psi.amps[i] = u00 * a0 + u01 * a1;
                psi.amps[i + stride] = u10 * a0 + u11 * a1;
            }
        }
        return;
    }
    if (g.arity != 2) throw std::invalid_argument("apply_gate: arity must be 1 or 2");
    int qa = g.qubits[0], qb = g.qubits[1];
    if (qa < 0 || qa >= psi.n || qb < 0 || qb >= psi.n || qa == qb) {
        throw std::out_of_range("apply_gate: bad two-qubit operand pair");
    }
    const std::size_t sa = std::size_t{1} << (psi.n - 1 - qa);
    const std::size_t sb = std::size_t{1} << (psi.n - 1 - qb);
    const std::size_t mask = sa | sb;
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & mask) continue; // visit each 4-tuple once, from its 00 corner
        cplx a00 = psi.amps[i];
        cplx a01 = psi.amps[i + sb];
        cplx a10 = psi.amps[i + sa];
        cplx a11 = psi.amps[i + sa + sb];
        // basis order within the block: (qa,qb) = 00,01,10,11
        psi.amps[i]           = g.u[0] * a00 + g.u[1] * a01 + g.u[2] * a10 + g.u[3] * a11;
        psi.amps[i + sb]      = g.u[4] * a00 + g.u[5] * a01 + g.u[6] * a10 + g.u[7] * a11;
        psi.amps[i + sa]      = g.u[8] * a00 + g.u[9] * a01 + g.u[10] * a10 + g.u[11] * a11;
        psi.amps[i + sa + sb] = g.u[12] * a00 + g.u[13] * a01 + g.u[14] * a10 + g.u[15] * a11;
    }
}

StateVector simulate(int n, const std::vector<Gate>& gates) {
    StateVector psi = StateVector::zero_state(n);
    for (const Gate& g : gates) {
        if (gate_unitarity_defect(g) > 1e-12) {
            throw std::invalid_argument("simulate: gate matrix is not unitary");
        }
        apply_gate(psi, g);
    }
    double drift = psi.norm_error();
    if (drift > 1e-10) {
        throw std::runtime_error("simulate: norm drifted by " + std::to_string(drift));
    }
    return psi;
}

StateVector simulate(const CircuitSpec& spec) {
    check_width(spec.n_qubits);
    return simulate(spec.n_qubits, build_circuit(spec));
}

ProbTable ProbTable::uniform(int n) {
    check_width(n);
    ProbTable t;
    t.n = n;
    t.p.assign(std::size_t{1} << n, 1.0 / static_cast<double>(std::size_t{1} << n));
    return t;
}

ProbTable ProbTable::from_state(const StateVector& psi) {
    ProbTable t;
    t.n = psi.n;
    t.p.resize(psi.amps.size());
    CompensatedSum total;
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
        t.p[i] = std::norm(psi.amps[i]);
        total.add(t.p[i]);
    }
    if (std::abs(total.value() - 1.0) > 1e-10) {
        throw std::runtime_error("ProbTable: probabilities do not sum to 1");
    }
    return t;
}

double ProbTable::lookup(std::span<const std::uint8_t> bits) const {
    if (static_cast<int>(bits.size()) != n) {
        throw std::invalid_argument("ProbTable::lookup: record width mismatch");
    }
    std::size_t idx = 0;
    for (std::uint8_t b : bits) idx = (idx << 1) | (b & 1u);
    return p[idx];
}

std::vector<double> phases(const StateVector& psi) {
    std::vector<double> out(psi.amps.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::arg(psi.amps[i]);
    return out;
}

SampleSet sample_bitstrings(const ProbTable& table, std::size_t m, std::uint64_t seed,
                            const std::string& label) {
    if (m == 0) throw std::invalid_argument("sample_bitstrings: m must be >= 1");
    // prefix-sum CDF; compensated so a million draws land where they should
    std::vector<double> cdf(table.p.size());
    CompensatedSum acc;
    for (std::size_t i = 0; i < table.p.size(); ++i) {
        acc.add(table.p[i]);
        cdf[i] = acc.value();
    }
    cdf.back() = 1.0;

    SampleSet s;
    s.n = table.n;
    s.m = m;
    s.source = SampleSource::simulator;
    s.label = label.empty() ? ("sim-n" + std::to_string(table.n) + "-M" + std::to_string(m) +
                               "-s" + std::to_string(seed))
                            : label;
    s.bits.resize(m * static_cast<std::size_t>(table.n));
    Rng rng(seed);
    for (std::size_t r = 0; r < m; ++r) {
        double u = rng.uniform();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= cdf.size()) idx = cdf.size() - 1;
        std::uint8_t* row = s.bits.data() + r * static_cast<std::size_t>(table.n);
        for (int q = 0; q < table.n; ++q) {
            row[q] = static_cast<std::uint8_t>((idx >> (table.n - 1 - q)) & 1u);
        }
    }
    return s;
}

namespace {
constexpr char kProbMagic[8] = {'R', 'C', 'S', 'P', 'R', 'O', 'B', '1'};
}

void write_prob_table(const ProbTable& table, const std::string& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("write_prob_table: cannot open " + path);
    if (binary) {
        out.write(kProbMagic, sizeof kProbMagic);
        std::uint32_t n = static_cast<std::uint32_t>(table.n);
        out.write(reinterpret_cast<const char*>(&n), sizeof n);
        out.write(reinterpret_cast<const char*>(table.p.data()),
                  static_cast<std::streamsize>(table.p.size() * sizeof(double)));
    } else {
        out << "# n=" << table.n << "\n";
        out.precision(17);
        for (double v : table.p) out << v << "\n";
    }
    out.flush();
    if (!out) throw std::runtime_error("write_prob_table: write failed for " + path);
}

ProbTable read_prob_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_prob_table: cannot open " + path);
    char head[8] = {};
    in.read(head, sizeof head);
    ProbTable t;
    if (in.gcount() == 8 && std::memcmp(head, kProbMagic, 8) == 0) {
        std::uint32_t n = 0;
        in.read(reinterpret_cast<char*>(&n), sizeof n);
        if (!in || n < 1 || n > static_cast<std::uint32_t>(kMaxSimQubits)) {
            throw std::runtime_error("read_prob_table: bad header in " + path);
        }
        t.n = static_cast<int>(n);
        t.p.resize(std::size_t{1} << n);
        in.read(reinterpret_cast<char*>(t.p.data()),
                static_cast<std::streamsize>(t.p.size() * sizeof(double)));
        if (static_cast<std::size_t>(in.gcount()) != t.p.size() * sizeof(double)) {
            throw std::runtime_error("read_prob_table: truncated table in " + path);
        }
    } else {
        in.clear();
        in.seekg(0);
        std::string line;
        if (!std::getline(in, line) || line.rfind("# n=", 0) != 0) {
            throw std::runtime_error("read_prob_table: unrecognized format in " + path);
        }
        t.n = std::stoi(line.substr(4));
        if (t.n < 1 || t.n > kMaxSimQubits) {
            throw std::runtime_error("read_prob_table: bad width in " + path);
        }
        t.p.reserve(std::size_t{1} << t.n);
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                t.p.push_back(std::stod(line));
            } catch (const std::exception&) {
                throw std::runtime_error("read_prob_table: bad value at " + path + ":" +
                                         std::to_string(lineno));
            }
        }
        if (t.p.size() != (std::size_t{1} << t.n)) {
            throw std::runtime_error("read_prob_table: expected " +
                                     std::to_string(std::size_t{1} << t.n) + " rows in " + path);
        }
    }
    CompensatedSum total;
    for (double v : t.p) {
        if (v < 0.0) throw std::runtime_error("read_prob_table: negative probability in " + path);
        total.add(v);
    }
    if (std::abs(total.value() - 1.0) > 1e-8) {
        throw std::runtime_error("read_prob_table: probabilities do not sum to 1 in " + path);
    }
    return t;
}

} // namespace rcs
