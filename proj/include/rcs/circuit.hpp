// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/linalg.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rcs {

/// Single-qubit gate alphabet used by the pseudo-random circuits.
enum class OneQubitGate : int { sqrt_x = 0, sqrt_y = 1, sqrt_w = 2 };

/// 2x2 matrices of the gate alphabet. sqrt_x and sqrt_y are the principal
/// square roots of the Pauli matrices; sqrt_w is the principal square root of
/// W = (X + Y)/sqrt(2). For an involutory P the principal root is
/// ((1+i)I + (1-i)P)/2.
std::array<cplx, 4> gate_matrix(OneQubitGate g);

/// fSim(theta, phi): partial-iSWAP mixing on |01>,|10> plus a conditional
/// phase exp(-i phi) on |11>. Row/column order 00,01,10,11.
std::array<cplx, 16> fsim_matrix(double theta, double phi);

enum class Topology { ring, grid };

struct CircuitSpec {
    int n_qubits = 0;
    int m_cycles = 0;
    std::uint64_t seed = 0;
    std::string pattern = "ABCDCDAB"; // coupler-activation letters, one per cycle (repeating)
    Topology topology = Topology::ring;
    int grid_rows = 0; // grid topology only; rows*cols must equal n_qubits
    int grid_cols = 0;
    bool forbid_repeat = true; // no identical single-qubit gate on a qubit in consecutive cycles
    double fsim_theta = 1.5707963267948966;  // pi/2
    double fsim_phi = 0.5235987755982988;    // pi/6
};

struct Gate {
    int arity = 1;                 // 1 or 2
    std::array<int, 2> qubits{};   // qubits[1] used when arity == 2
    std::array<cplx, 16> u{};      // 2x2 in u[0..3] or 4x4 in u[0..15]
};

/// Coupler pairs activated by one pattern letter under the given spec.
std::vector<std::pair<int, int>> active_couplers(const CircuitSpec& spec, char letter);

/// Deterministic gate list: per cycle one random single-qubit gate per qubit
/// (no consecutive repetition when forbid_repeat) followed by the fixed
/// two-qubit gate on every coupler active under the cycle's pattern letter.
std::vector<Gate> build_circuit(const CircuitSpec& spec);

} // namespace rcs
