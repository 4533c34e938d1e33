// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rcs {

/// Seeded deterministic generator used everywhere randomness is needed.
///
/// All variates are derived from the raw 64-bit output of std::mt19937_64,
/// whose sequence is fixed by the standard, so identical seeds produce
/// identical bits, uniforms and normals on every platform and compiler.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// One fair bit. Draws a 64-bit word and serves it bit by bit.
    int fair_bit() {
        if (bits_left_ == 0) {
            bit_buffer_ = next_u64();
            bits_left_ = 64;
        }
        int b = static_cast<int>(bit_buffer_ & 1u);
        bit_buffer_ >>= 1;
        --bits_left_;
        return b;
    }

    /// Uniform integer in [0, bound) via rejection, bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % bound;
    }

    /// Standard normal via Box-Muller (pair cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so log() stays finite
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925287 * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t bit_buffer_ = 0;
    int bits_left_ = 0;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace rcs
