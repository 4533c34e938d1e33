// SPDX-License-Identifier: Apache-2.0
#include "rcs/transport.hpp"

#include "rcs/numerics.hpp"
#include "rcs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcs {

ValueSeries to_values(const SampleSet& sample) {
    if (sample.n > 53) {
        // beyond 53 bits the positional value no longer fits a double exactly
        throw std::invalid_argument("to_values: n > 53 loses integer precision in a double");
    }
    ValueSeries v;
    v.n_source = sample.n;
    v.values.resize(sample.m);
    for (std::size_t r = 0; r < sample.m; ++r) {
        auto row = sample.row(r);
        double x = 0.0;
        for (std::uint8_t b : row) x = 2.0 * x + (b & 1u); // exact for n <= 53
        v.values[r] = std::ldexp(x, -sample.n);
    }
    return v;
}

WassersteinResult wasserstein(const ValueSeries& a, const ValueSeries& b,
                              const WassersteinOptions& opts) {
    if (a.values.empty() || b.values.empty()) {
        throw std::invalid_argument("wasserstein: empty series");
    }
    if (opts.alpha < 1.0) throw std::invalid_argument("wasserstein: alpha must be >= 1");

    std::vector<double> xs = a.values, ys = b.values;
    WassersteinResult res;
    res.alpha = opts.alpha;
    if (xs.size() != ys.size()) {
        res.truncated = true;
        std::size_t m = std::min(xs.size(), ys.size());
        if (opts.subsample) {
            // deterministic draw without replacement from the longer series
            auto cut = [&](std::vector<double>& v) {
                if (v.size() == m) return;
                Rng rng(opts.subsample_seed);
                for (std::size_t i = 0; i < m; ++i) {
                    std::size_t j = i + static_cast<std::size_t>(rng.below(v.size() - i));
                    std::swap(v[i], v[j]);
                }
                v.resize(m);
            };
            cut(xs);
            cut(ys);
        } else {
            xs.resize(m);
            ys.resize(m);
        }
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    res.m_used = xs.size();

    CompensatedSum acc;
    if (opts.alpha == 1.0) {
        for (std::size_t i = 0; i < xs.size(); ++i) acc.add(std::abs(xs[i] - ys[i]));
        res.distance = acc.value() / static_cast<double>(xs.size());
    } else {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            acc.add(std::pow(std::abs(xs[i] - ys[i]), opts.alpha));
        }
        res.distance = std::pow(acc.value() / static_cast<double>(xs.size()), 1.0 / opts.alpha);
    }
    return res;
}

} // namespace rcs
