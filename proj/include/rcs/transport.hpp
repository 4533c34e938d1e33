// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/sample_set.hpp"

#include <cstdint>
#include <vector>

namespace rcs {

/// Bit strings mapped to [0,1): row read as an unsigned integer, most
/// significant bit first, divided by 2^n.
struct ValueSeries {
    std::vector<double> values;
    int n_source = 0;
};

ValueSeries to_values(const SampleSet& sample);

struct WassersteinResult {
    double distance = 0.0;
    double alpha = 1.0;
    std::size_t m_used = 0;
    bool truncated = false; // inputs had unequal lengths and were cut to the shorter
};

struct WassersteinOptions {
    double alpha = 1.0;
    /// Unequal lengths: truncate both to the common prefix length (default) or
    /// deterministically subsample the longer one instead.
    bool subsample = false;
    std::uint64_t subsample_seed = 0;
};

/// Empirical alpha-Wasserstein with uniform 1/M weights:
/// ((1/M) sum |a_(i) - b_(i)|^alpha)^(1/alpha) over the sorted series.
WassersteinResult wasserstein(const ValueSeries& a, const ValueSeries& b,
                              const WassersteinOptions& opts = {});

} // namespace rcs
