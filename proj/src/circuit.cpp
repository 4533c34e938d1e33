// SPDX-License-Identifier: Apache-2.0
#include "rcs/circuit.hpp"

#include "rcs/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rcs {

std::array<cplx, 4> gate_matrix(OneQubitGate g) {
    const cplx a{0.5, 0.5};  // (1+i)/2
    const cplx b{0.5, -0.5}; // (1-i)/2
    const double inv_sqrt2 = 0.7071067811865475244;
    switch (g) {
    case OneQubitGate::sqrt_x:
        return {a, b, b, a};
    case OneQubitGate::sqrt_y:
        return {a, -a, a, a};
    case OneQubitGate::sqrt_w:
        return {a, cplx{0.0, -inv_sqrt2}, cplx{inv_sqrt2, 0.0}, a};
    }
    throw std::logic_error("gate_matrix: unknown gate");
}

std::array<cplx, 16> fsim_matrix(double theta, double phi) {
    std::array<cplx, 16> u{};
    double c = std::cos(theta), s = std::sin(theta);
    u[0 * 4 + 0] = 1.0;
    u[1 * 4 + 1] = c;
    u[1 * 4 + 2] = cplx{0.0, -s};
    u[2 * 4 + 1] = cplx{0.0, -s};
    u[2 * 4 + 2] = c;
    u[3 * 4 + 3] = std::polar(1.0, -phi);
    return u;
}

std::vector<std::pair<int, int>> active_couplers(const CircuitSpec& spec, char letter) {
    const int n = spec.n_qubits;
    std::vector<std::pair<int, int>> bonds;

    if (spec.topology == Topology::ring) {
        // A and C activate even bonds, B and D odd bonds plus the wrap bond
        // when the ring closes without a collision (even n > 2).
        if (letter == 'A' || letter == 'C') {
            for (int i = 0; i + 1 < n; i += 2) bonds.emplace_back(i, i + 1);
        } else if (letter == 'B' || letter == 'D') {
            for (int i = 1; i + 1 < n; i += 2) bonds.emplace_back(i, i + 1);
            if (n > 2 && n % 2 == 0) bonds.emplace_back(n - 1, 0);
        } else {
            throw std::invalid_argument(std::string("no coupler set for pattern letter '") + letter +
                                        "' on ring topology");
        }
        return bonds;
    }

    // grid: A/B horizontal bonds at even/odd columns, C/D vertical bonds at
    // even/odd rows; qubit index is row-major.
    const int rows = spec.grid_rows, cols = spec.grid_cols;
    if (rows < 1 || cols < 1 || rows * cols != n) {
        throw std::invalid_argument("grid topology requires grid_rows * grid_cols == n_qubits");
    }
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int q = r * cols + c;
            switch (letter) {
            case 'A':
                if (c + 1 < cols && c % 2 == 0) bonds.emplace_back(q, q + 1);
                break;
            case 'B':
                if (c + 1 < cols && c % 2 == 1) bonds.emplace_back(q, q + 1);
                break;
            case 'C':
                if (r + 1 < rows && r % 2 == 0) bonds.emplace_back(q, q + cols);
                break;
            case 'D':
                if (r + 1 < rows && r % 2 == 1) bonds.emplace_back(q, q + cols);
                break;
            default:
                throw std::invalid_argument(std::string("no coupler set for pattern letter '") +
                                            letter + "' on grid topology");
            }
        }
    }
    return bonds;
}

std::vector<Gate> build_circuit(const CircuitSpec& spec) {
    if (spec.n_qubits < 1) throw std::invalid_argument("build_circuit: n_qubits must be >= 1");
    if (spec.m_cycles < 1) throw std::invalid_argument("build_circuit: m_cycles must be >= 1");
    if (spec.pattern.empty()) throw std::invalid_argument("build_circuit: empty pattern");
    for (char c : spec.pattern) {
        if (c < 'A' || c > 'D') {
            throw std::invalid_argument("build_circuit: pattern letters must be in {A,B,C,D}");
        }
    }

    const std::array<std::array<cplx, 4>, 3> alphabet = {
        gate_matrix(OneQubitGate::sqrt_x),
        gate_matrix(OneQubitGate::sqrt_y),
        gate_matrix(OneQubitGate::sqrt_w),
    };
    const std::array<cplx, 16> two_qubit = fsim_matrix(spec.fsim_theta, spec.fsim_phi);

    Rng rng(spec.seed);
    std::vector<int> previous(spec.n_qubits, -1);
    std::vector<Gate> gates;

    for (int cycle = 0; cycle < spec.m_cycles; ++cycle) {
        for (int q = 0; q < spec.n_qubits; ++q) {
            int choice;
            if (spec.forbid_repeat && previous[q] >= 0) {
                // draw from the two gates differing from last cycle's
                int r = static_cast<int>(rng.below(2));
                choice = (previous[q] + 1 + r) % 3;
            } else {
                choice = static_cast<int>(rng.below(3));
            }
            previous[q] = choice;
            Gate g;
            g.arity = 1;
            g.qubits = {q, -1};
            std::copy(alphabet[choice].begin(), alphabet[choice].end(), g.u.begin());
            gates.push_back(g);
        }
        char letter = spec.pattern[cycle % spec.pattern.size()];
        for (auto [a, b] : active_couplers(spec, letter)) {
            Gate g;
            g.arity = 2;
            g.qubits = {a, b};
            g.u = two_qubit;
            gates.push_back(g);
        }
    }
    return gates;
}

} // namespace rcs
