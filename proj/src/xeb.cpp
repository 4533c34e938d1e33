// SPDX-License-Identifier: Apache-2.0
#include "rcs/xeb.hpp"

#include "rcs/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rcs {

XebResult linear_xeb(const SampleSet& sample, const ProbTable& ideal) {
    if (sample.n != ideal.n) throw std::invalid_argument("linear_xeb: qubit-count mismatch");
    if (sample.m == 0) throw std::invalid_argument("linear_xeb: empty sample");

    const double scale = std::ldexp(1.0, sample.n); // 2^n
    std::vector<double> terms(sample.m);
    for (std::size_t i = 0; i < sample.m; ++i) {
        terms[i] = scale * ideal.lookup(sample.row(i)) - 1.0;
    }
    XebResult r;
    r.m = sample.m;
    r.n = sample.n;
    MeanStd ms = mean_and_stddev(terms);
    // compensated mean, not the naive running mean: terms span a 2^n range
    CompensatedSum acc;
    for (double t : terms) acc.add(t);
    r.fidelity = acc.value() / static_cast<double>(sample.m);
    r.std_error = sample.m > 1 ? ms.stddev / std::sqrt(static_cast<double>(sample.m)) : 0.0;
    return r;
}

namespace {
void check_pair(const ProbTable& p, const ProbTable& q, const char* who) {
    if (p.n != q.n || p.p.size() != q.p.size()) {
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    }
}
} // namespace

double kolmogorov_distance(const ProbTable& p, const ProbTable& q) {
    check_pair(p, q, "kolmogorov_distance");
    CompensatedSum acc;
    for (std::size_t i = 0; i < p.p.size(); ++i) acc.add(std::abs(p.p[i] - q.p[i]));
    return 0.5 * acc.value();
}

double bhattacharya_overlap(const ProbTable& p, const ProbTable& q) {
    check_pair(p, q, "bhattacharya_overlap");
    CompensatedSum acc;
    for (std::size_t i = 0; i < p.p.size(); ++i) acc.add(std::sqrt(p.p[i] * q.p[i]));
    double v = acc.value();
    return v > 1.0 ? 1.0 : v; // clamp roundoff at the boundary
}

} // namespace rcs
