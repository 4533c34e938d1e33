// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rcs {

inline constexpr double kPi = 3.14159265358979323846;

/// Neumaier-compensated accumulator. Keeps long sums (10^6+ terms spanning a
/// wide dynamic range) accurate to a few ulp independent of term count.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation (n-1 denominator), 0 for n < 2
};

MeanStd mean_and_stddev(std::span<const double> xs);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
/// Series expansion for x < a+1, Lentz continued fraction otherwise.
double igamc(double a, double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// One-sample Kolmogorov-Smirnov statistic of `sorted` (ascending) against a
/// continuous CDF: sup_x |F_emp(x) - F(x)|.
double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// FNV-1a over raw bytes; used for input provenance hashes in reports.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);

} // namespace rcs
