// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/circuit.hpp"
#include "rcs/linalg.hpp"
#include "rcs/sample_set.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rcs {

/// Exact amplitudes of an n-qubit register, 2^n entries. Qubit 0 is the most
/// significant bit of the basis index, so bit string b maps to index
/// sum_q b[q] * 2^(n-1-q).
struct StateVector {
    int n = 0;
    std::vector<cplx> amps;

    static StateVector zero_state(int n);

    double norm_error() const; // | <psi|psi> - 1 |
};

/// Hard cap on simulator width: 2^24 amplitudes (256 MiB) keeps a desk-scale
/// run comfortably inside memory while covering every test regime.
inline constexpr int kMaxSimQubits = 24;

void apply_gate(StateVector& psi, const Gate& g);

/// Run the full gate list on |0...0>. Checks every gate for unitarity and the
/// final norm for drift before returning.
StateVector simulate(const CircuitSpec& spec);
StateVector simulate(int n, const std::vector<Gate>& gates);

/// Output probabilities of a state or an externally supplied distribution.
struct ProbTable {
    int n = 0;
    std::vector<double> p; // indexed by basis state, sums to 1

    static ProbTable uniform(int n);
    static ProbTable from_state(const StateVector& psi);

    double lookup(std::span<const std::uint8_t> bits) const;
};

std::vector<double> phases(const StateVector& psi); // arg(amp), in [-pi, pi]

/// Inverse-CDF sampling of measurement records from a probability table.
SampleSet sample_bitstrings(const ProbTable& table, std::size_t m, std::uint64_t seed,
                            const std::string& label = "");

/// On-disk probability tables: binary ("RCSPROB1", uint32 n, 2^n doubles,
/// little-endian) or CSV with a "# n=<k>" header line and one value per row.
void write_prob_table(const ProbTable& table, const std::string& path, bool binary = true);
ProbTable read_prob_table(const std::string& path);

} // namespace rcs
