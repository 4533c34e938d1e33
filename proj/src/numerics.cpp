// SPDX-License-Identifier: Apache-2.0
#include "rcs/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcs {

double compensated_sum(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

MeanStd mean_and_stddev(std::span<const double> xs) {
    MeanStd r;
    if (xs.empty()) return r;
    r.mean = compensated_sum(xs) / static_cast<double>(xs.size());
    if (xs.size() < 2) return r;
    CompensatedSum sq;
    for (double x : xs) {
        double d = x - r.mean;
        sq.add(d * d);
    }
    r.stddev = std::sqrt(sq.value() / static_cast<double>(xs.size() - 1));
    return r;
}

namespace {

// Near the diagonal x ~ a both expansions need O(sqrt(a)) terms, so the
// iteration budget scales with a instead of being a flat constant.
int gamma_iter_cap(double a) {
    return 500 + static_cast<int>(60.0 * std::sqrt(a));
}

// Lower regularized gamma P(a, x) by power series.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    const int cap = gamma_iter_cap(a);
    for (int i = 0; i < cap; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("igamc: series did not converge");
}

// Upper regularized gamma Q(a, x) by modified Lentz continued fraction.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    const int cap = gamma_iter_cap(a);
    for (int i = 1; i <= cap; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("igamc: continued fraction did not converge");
}

} // namespace

double igamc(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("igamc: requires a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / 1.4142135623730950488);
}

double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    if (sorted.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = cdf(sorted[i]);
        double hi = (static_cast<double>(i) + 1.0) / n - f;
        double lo = f - static_cast<double>(i) / n;
        if (hi > d) d = hi;
        if (lo > d) d = lo;
    }
    return d;
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // offset basis
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ULL; // FNV prime
    }
    return h;
}

} // namespace rcs
