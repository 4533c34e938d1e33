// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/sample_set.hpp"
#include "rcs/statevector.hpp"

namespace rcs {

struct XebResult {
    double fidelity = 0.0;  // (2^n / M) * sum p_ideal(x_i) - 1
    double std_error = 0.0; // standard error of the mean of per-record terms
    std::size_t m = 0;
    int n = 0;
};

/// Linear cross-entropy benchmark of a sample against an ideal distribution.
/// Against a uniform table the result is identically zero; against the
/// circuit's own output distribution it concentrates near one.
XebResult linear_xeb(const SampleSet& sample, const ProbTable& ideal);

/// Total-variation distance: sum |p - q| / 2, in [0, 1].
double kolmogorov_distance(const ProbTable& p, const ProbTable& q);

/// Bhattacharya overlap: sum sqrt(p*q), in [0, 1], one iff p == q.
double bhattacharya_overlap(const ProbTable& p, const ProbTable& q);

} // namespace rcs
