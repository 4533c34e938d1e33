// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/sample_set.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rcs {

struct TestOutcome {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 0.0; // NaN when skipped
    bool passed = false;  // p_value >= alpha
    double alpha = 0.01;
    bool skipped = false; // stream below the test's minimum length
};

/// The tests operate on a flat bit stream (values 0/1). A SampleSet's rows
/// concatenate in row-major order, i.e. reading the file top to bottom.

TestOutcome monobit_test(std::span<const std::uint8_t> bits, double alpha = 0.01);
TestOutcome block_frequency_test(std::span<const std::uint8_t> bits, std::size_t block_len = 128,
                                 double alpha = 0.01);
TestOutcome runs_test(std::span<const std::uint8_t> bits, double alpha = 0.01);
TestOutcome longest_run_test(std::span<const std::uint8_t> bits, double alpha = 0.01);
/// Partial-sum excursion test, forward and backward scans.
std::array<TestOutcome, 2> cumulative_sums_test(std::span<const std::uint8_t> bits,
                                                double alpha = 0.01);
TestOutcome approximate_entropy_test(std::span<const std::uint8_t> bits, std::size_t m = 2,
                                     double alpha = 0.01);

/// Six-test battery over the concatenated stream; cumulative sums contributes
/// two outcomes (forward/backward), so seven entries come back. Tests whose
/// minimum stream length exceeds the input are marked skipped rather than
/// given an invented p-value.
std::vector<TestOutcome> run_battery(const SampleSet& sample, double alpha = 0.01);

} // namespace rcs
