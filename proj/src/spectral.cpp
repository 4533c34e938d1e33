// SPDX-License-Identifier: Apache-2.0
#include "rcs/spectral.hpp"

#include "rcs/linalg.hpp"
#include "rcs/numerics.hpp"
#include "rcs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace rcs {

HeatMap heat_map(const SampleSet& sample) {
    const std::size_t n = static_cast<std::size_t>(sample.n);
    HeatMap h;
    h.n = sample.n;
    h.per_qubit_mean.assign(n, 0.0);

    std::vector<std::size_t> col_ones(n, 0);
    for (std::size_t r = 0; r < sample.m; ++r) {
        const std::uint8_t* row = sample.bits.data() + r * n;
        for (std::size_t c = 0; c < n; ++c) col_ones[c] += row[c];
    }
    std::size_t total_ones = 0;
    for (std::size_t c = 0; c < n; ++c) {
        h.per_qubit_mean[c] = static_cast<double>(col_ones[c]) / static_cast<double>(sample.m);
        total_ones += col_ones[c];
    }
    h.p1 = static_cast<double>(total_ones) / static_cast<double>(sample.total_bits());

    h.l_slices = sample.m / n;
    if (h.l_slices == 0) return h; // M < n: per-qubit means only
    h.has_sliced = true;
    std::vector<std::size_t> acc(n * n, 0);
    for (std::size_t s = 0; s < h.l_slices; ++s) {
        const std::uint8_t* block = sample.bits.data() + s * n * n;
        for (std::size_t i = 0; i < n * n; ++i) acc[i] += block[i];
    }
    h.sliced_mean.resize(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        h.sliced_mean[i] = static_cast<double>(acc[i]) / static_cast<double>(h.l_slices);
    }
    return h;
}

SliceSet slice_matrices(const SampleSet& sample, std::size_t k) {
    if (k == 0) k = 2 * static_cast<std::size_t>(sample.n);
    if (k < 1) throw std::invalid_argument("slice_matrices: k must be >= 1");
    if (sample.m < k) {
        throw std::invalid_argument("slice_matrices: sample has fewer than k = " +
                                    std::to_string(k) + " records");
    }
    SliceSet s;
    s.k = k;
    s.n = sample.n;
    s.count = sample.m / k;
    s.bits = std::span<const std::uint8_t>(sample.bits.data(),
                                           s.count * k * static_cast<std::size_t>(sample.n));
    return s;
}

namespace {

// (1/k) X^T X accumulated in integers: bit products are bit ANDs, so only
// the positions of the ones in each row matter.
Matrix gram_of_slice(std::span<const std::uint8_t> slice, std::size_t k, std::size_t n,
                     std::size_t& ones_out) {
    std::vector<std::uint32_t> g(n * n, 0);
    std::vector<std::uint32_t> idx;
    idx.reserve(n);
    for (std::size_t r = 0; r < k; ++r) {
        const std::uint8_t* row = slice.data() + r * n;
        idx.clear();
        for (std::size_t c = 0; c < n; ++c) {
            if (row[c]) idx.push_back(static_cast<std::uint32_t>(c));
        }
        for (std::size_t i = 0; i < idx.size(); ++i) {
            std::uint32_t a = idx[i];
            ++g[a * n + a];
            for (std::size_t j = i + 1; j < idx.size(); ++j) ++g[a * n + idx[j]];
        }
    }
    std::size_t ones = 0;
    for (std::size_t c = 0; c < n; ++c) ones += g[c * n + c];
    ones_out = ones;

    Matrix m(n, n);
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = static_cast<double>(g[i * n + j]) * inv_k;
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

double residual_norm(const Matrix& a, const SymEigen& eig, std::size_t col) {
    const std::size_t n = a.rows();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t l = 0; l < n; ++l) av += a.at(i, l) * eig.vectors.at(l, col);
        double r = av - eig.values[col] * eig.vectors.at(i, col);
        acc += r * r;
    }
    return std::sqrt(acc);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

} // namespace

SpectrumResult gram_spectrum(const SliceSet& slices, const SpectrumOptions& opts) {
    if (slices.count == 0) throw std::invalid_argument("gram_spectrum: empty slice list");
    const std::size_t n = static_cast<std::size_t>(slices.n);
    const std::size_t count = slices.count;

    std::vector<double> eig_flat(count * n, 0.0);
    std::vector<double> trace_err(count, 0.0);
    std::vector<std::uint8_t> failed(count, 0);

    parallel_for(count, opts.threads, [&](std::size_t s) {
        std::size_t ones = 0;
        Matrix g = gram_of_slice(slices.slice(s), slices.k, n, ones);
        SymEigen eig;
        try {
            eig = sym_eigen(g, opts.verify_residuals);
        } catch (const std::runtime_error&) {
            failed[s] = 1; // non-convergence: skip the slice, keep going
            return;
        }
        if (opts.verify_residuals) {
            for (std::size_t c = 0; c < n; ++c) {
                if (residual_norm(g, eig, c) > 1e-8) {
                    throw std::runtime_error("gram_spectrum: eigenpair residual above 1e-8");
                }
            }
        }
        CompensatedSum tr;
        for (double v : eig.values) tr.add(v);
        trace_err[s] = std::abs(tr.value() - static_cast<double>(ones) / static_cast<double>(slices.k));
        std::copy(eig.values.begin(), eig.values.end(), eig_flat.begin() + s * n);
    });

    SpectrumResult res;
    res.n = slices.n;
    res.k = slices.k;
    res.gamma = static_cast<double>(slices.n) / static_cast<double>(slices.k);

    std::vector<double> peaks;
    peaks.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        if (failed[s]) {
            ++res.skipped_slices;
            continue;
        }
        res.eigenvalues.insert(res.eigenvalues.end(), eig_flat.begin() + s * n,
                               eig_flat.begin() + (s + 1) * n);
        peaks.push_back(eig_flat[s * n + n - 1]); // in-slice ascending: last is largest
        res.max_trace_error = std::max(res.max_trace_error, trace_err[s]);
    }
    res.n_slices = peaks.size();
    if (peaks.empty()) throw std::runtime_error("gram_spectrum: every slice failed to converge");

    if (opts.mean_peak) {
        CompensatedSum acc;
        for (double p : peaks) acc.add(p);
        res.outlier_peak = acc.value() / static_cast<double>(peaks.size());
    } else {
        std::sort(peaks.begin(), peaks.end());
        std::size_t mid = peaks.size() / 2;
        res.outlier_peak = peaks.size() % 2 == 1 ? peaks[mid]
                                                 : 0.5 * (peaks[mid - 1] + peaks[mid]);
    }
    res.mp_distance = std::abs(res.outlier_peak - static_cast<double>(slices.n) / 4.0);

    // Freedman-Diaconis histogram of the bulk (everything below each slice's top)
    std::vector<double> bulk;
    bulk.reserve(res.n_slices * (n - 1));
    for (std::size_t s = 0, kept = 0; s < count; ++s) {
        if (failed[s]) continue;
        for (std::size_t j = 0; j + 1 < n; ++j) bulk.push_back(eig_flat[s * n + j]);
        ++kept;
    }
    if (!bulk.empty()) {
        std::sort(bulk.begin(), bulk.end());
        double gamma_hi = 0.25 * (1.0 + std::sqrt(res.gamma)) * (1.0 + std::sqrt(res.gamma));
        double hi = std::max(1.1 * gamma_hi, bulk.back() * (1.0 + 1e-9));
        double iqr = quantile_sorted(bulk, 0.75) - quantile_sorted(bulk, 0.25);
        double width = 2.0 * iqr / std::cbrt(static_cast<double>(bulk.size()));
        std::size_t bins = width > 0.0 ? static_cast<std::size_t>(std::ceil(hi / width)) : 1;
        if (bins < 1) bins = 1;
        if (bins > 4096) bins = 4096;
        res.bin_edges.resize(bins + 1);
        for (std::size_t b = 0; b <= bins; ++b) {
            res.bin_edges[b] = hi * static_cast<double>(b) / static_cast<double>(bins);
        }
        res.bulk_histogram.assign(bins, 0.0);
        double bin_w = hi / static_cast<double>(bins);
        for (double v : bulk) {
            std::size_t b = v >= hi ? bins - 1 : static_cast<std::size_t>(v / bin_w);
            res.bulk_histogram[b] += 1.0;
        }
        double norm = 1.0 / (static_cast<double>(bulk.size()) * bin_w);
        for (double& d : res.bulk_histogram) d *= norm;
    }
    return res;
}

double mp_density(double lambda, double sigma2, double gamma) {
    if (sigma2 <= 0.0) throw std::invalid_argument("mp_density: sigma2 must be positive");
    if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("mp_density: gamma must be in (0,1]");
    double sq = std::sqrt(gamma);
    double lo = sigma2 * (1.0 - sq) * (1.0 - sq);
    double hi = sigma2 * (1.0 + sq) * (1.0 + sq);
    if (lambda <= lo || lambda >= hi) return 0.0;
    return std::sqrt((hi - lambda) * (lambda - lo)) /
           (2.0 * kPi * sigma2 * gamma * lambda);
}

MpCdfTable mp_cdf_table(double sigma2, double gamma, std::size_t points) {
    if (sigma2 <= 0.0) throw std::invalid_argument("mp_cdf_table: sigma2 must be positive");
    if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("mp_cdf_table: gamma must be in (0,1]");
    if (points < 2) throw std::invalid_argument("mp_cdf_table: need at least 2 points");
    MpCdfTable t;
    t.sigma2 = sigma2;
    t.gamma = gamma;
    double sq = std::sqrt(gamma);
    t.lambda_minus = sigma2 * (1.0 - sq) * (1.0 - sq);
    t.lambda_plus = sigma2 * (1.0 + sq) * (1.0 + sq);
    const double span = t.lambda_plus - t.lambda_minus;

    // density transported to theta; when lambda_minus == 0 (gamma == 1) the
    // sin^2 factors cancel exactly and the integrand stays bounded
    auto f = [&](double theta) {
        double st = std::sin(theta), ct = std::cos(theta);
        if (t.lambda_minus == 0.0) {
            return span * ct * ct / (kPi * sigma2 * gamma);
        }
        double lam = t.lambda_minus + span * st * st;
        return span * span * st * st * ct * ct / (kPi * sigma2 * gamma * lam);
    };

    const double h = (kPi / 2.0) / static_cast<double>(points);
    t.cum.resize(points + 1);
    t.cum[0] = 0.0;
    double prev = f(0.0);
    CompensatedSum acc;
    for (std::size_t i = 1; i <= points; ++i) {
        double cur = f(static_cast<double>(i) * h);
        acc.add(0.5 * (prev + cur) * h);
        t.cum[i] = acc.value();
        prev = cur;
    }
    t.total_mass = t.cum.back();
    return t;
}

double MpCdfTable::cdf(double lambda) const {
    if (lambda <= lambda_minus) return 0.0;
    if (lambda >= lambda_plus) return 1.0;
    double u = (lambda - lambda_minus) / (lambda_plus - lambda_minus);
    double theta = std::asin(std::sqrt(u));
    double pos = theta / (kPi / 2.0) * static_cast<double>(cum.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= cum.size()) return 1.0;
    double frac = pos - static_cast<double>(lo);
    double raw = cum[lo] * (1.0 - frac) + cum[lo + 1] * frac;
    return raw / total_mass;
}

BulkFit bulk_fit_report(const SpectrumResult& spectrum) {
    const std::size_t n = static_cast<std::size_t>(spectrum.n);
    if (n < 2) throw std::invalid_argument("bulk_fit_report: need n >= 2 for a bulk");
    std::vector<double> bulk;
    bulk.reserve(spectrum.n_slices * (n - 1));
    for (std::size_t s = 0; s < spectrum.n_slices; ++s) {
        for (std::size_t j = 0; j + 1 < n; ++j) bulk.push_back(spectrum.eigenvalues[s * n + j]);
    }
    if (bulk.size() < 100) {
        throw std::invalid_argument("bulk_fit_report: need at least 100 bulk eigenvalues");
    }
    std::sort(bulk.begin(), bulk.end());
    if (bulk.front() == bulk.back()) {
        throw std::runtime_error("bulk_fit_report: degenerate bulk (all eigenvalues equal)");
    }

    BulkFit fit;
    fit.bulk_count = bulk.size();
    CompensatedSum acc;
    for (double v : bulk) acc.add(v);
    fit.sigma2 = acc.value() / static_cast<double>(bulk.size()); // MP bulk mean equals sigma2

    MpCdfTable table = mp_cdf_table(fit.sigma2, spectrum.gamma);
    fit.lambda_minus = table.lambda_minus;
    fit.lambda_plus = table.lambda_plus;

    std::size_t inside = 0;
    for (double v : bulk) inside += (v >= fit.lambda_minus && v <= fit.lambda_plus);
    fit.in_support_fraction = static_cast<double>(inside) / static_cast<double>(bulk.size());

    fit.ks_bulk = ks_statistic(bulk, [&](double x) { return table.cdf(x); });
    return fit;
}

} // namespace rcs
