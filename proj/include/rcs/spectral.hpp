// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/sample_set.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rcs {

/// Column and sliced-square bit averages for visual inspection.
struct HeatMap {
    int n = 0;
    std::vector<double> per_qubit_mean; // length n, frequency of outcome 1
    std::vector<double> sliced_mean;    // n*n row-major, mean over full n-row slices
    bool has_sliced = false;            // false when M < n (with warning)
    std::size_t l_slices = 0;
    double p1 = 0.0; // grand mean over all bits
};

HeatMap heat_map(const SampleSet& sample);

/// Disjoint consecutive k-row blocks of the sample; the trailing partial
/// block is discarded. Views into the sample's storage — the sample must
/// outlive the SliceSet.
struct SliceSet {
    std::span<const std::uint8_t> bits; // covers count*k rows
    std::size_t k = 0;
    std::size_t count = 0;
    int n = 0;

    std::span<const std::uint8_t> slice(std::size_t s) const {
        return bits.subspan(s * k * static_cast<std::size_t>(n),
                            k * static_cast<std::size_t>(n));
    }
};

/// k = 0 selects the default k = 2n.
SliceSet slice_matrices(const SampleSet& sample, std::size_t k = 0);

struct SpectrumResult {
    std::vector<double> eigenvalues; // slice-major, n per processed slice, ascending in-slice
    std::vector<double> bulk_histogram; // density per bin
    std::vector<double> bin_edges;      // bulk_histogram.size() + 1 edges
    double outlier_peak = 0.0; // location estimate of the per-slice top eigenvalue
    double mp_distance = 0.0;  // |outlier_peak - n/4|
    double gamma = 0.0;        // n / k
    std::size_t k = 0;
    int n = 0;
    std::size_t n_slices = 0;       // slices whose spectra were computed
    std::size_t skipped_slices = 0; // eigensolver failed to converge
    double max_trace_error = 0.0;   // max over slices |sum(eig) - ones/k|
};

struct SpectrumOptions {
    bool mean_peak = false;        // use the mean of per-slice maxima instead of the median
    bool verify_residuals = true;  // check ||A v - lambda v|| <= 1e-8 for every pair
    int threads = 1;
};

SpectrumResult gram_spectrum(const SliceSet& slices, const SpectrumOptions& opts = {});

/// Marchenko-Pastur density with scale sigma2 and shape gamma = n/k:
/// rho(x) = sqrt((l+ - x)(x - l-)) / (2 pi sigma2 gamma x), l± = sigma2(1±sqrt(gamma))^2,
/// zero outside (l-, l+).
double mp_density(double lambda, double sigma2, double gamma);

/// Quadrature table for the MP CDF. The substitution x = l- + (l+ - l-) sin^2(t)
/// absorbs both square-root edges (and the x = 0 singularity at gamma = 1),
/// leaving a smooth integrand on [0, pi/2].
struct MpCdfTable {
    double sigma2 = 0.0, gamma = 0.0;
    double lambda_minus = 0.0, lambda_plus = 0.0;
    double total_mass = 0.0;  // raw integral over the support; analytically 1
    std::vector<double> cum;  // prefix integral on the uniform theta grid

    double cdf(double lambda) const; // normalized, monotone, 0 below support, 1 above
};

MpCdfTable mp_cdf_table(double sigma2, double gamma, std::size_t points = 16384);

/// Goodness of fit of the bulk (everything but the per-slice top eigenvalue)
/// against an MP law with sigma2 fitted from the bulk mean.
struct BulkFit {
    double sigma2 = 0.0;
    double lambda_minus = 0.0, lambda_plus = 0.0;
    double ks_bulk = 0.0;             // KS distance, empirical bulk vs fitted MP
    double in_support_fraction = 0.0; // bulk eigenvalues inside [l-, l+]
    std::size_t bulk_count = 0;
};

BulkFit bulk_fit_report(const SpectrumResult& spectrum);

} // namespace rcs
