// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rcs {

enum class SampleSource {
    hardware,
    tensor_network,
    uniform_synthetic,
    spoof_synthetic,
    simulator,
};

std::string to_string(SampleSource s);

/// A set of measured bit strings: an M x n binary matrix, one row per record.
/// Column j is qubit j; within a record the leftmost file character maps to
/// qubit 0. Immutable by convention once built — safe to share across threads.
struct SampleSet {
    std::vector<std::uint8_t> bits; // row-major, entries 0/1
    int n = 0;                      // qubits per record
    std::size_t m = 0;              // record count
    std::string label;
    SampleSource source = SampleSource::hardware;

    std::span<const std::uint8_t> row(std::size_t i) const {
        return {bits.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    int bit(std::size_t i, int q) const { return bits[i * static_cast<std::size_t>(n) + q]; }
    std::size_t total_bits() const { return m * static_cast<std::size_t>(n); }
};

/// Fields of the measurement-file naming convention
/// measurement-n<k>-m<k>-s<k>-e<k>-p<pattern>. Names that do not fully match
/// degrade to whatever fields could be recovered, with `warning` set.
struct DatasetDescriptor {
    std::optional<int> n_qubits;
    std::optional<int> m_cycles;
    std::optional<int> seed;
    std::optional<int> elided_gates;
    std::optional<std::string> pattern;
    std::string filename;
    bool warning = false;
};

/// In-memory budget for sample matrices (bytes). Parsing or generating a
/// sample larger than this throws std::length_error.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} * 1024 * 1024 * 1024;

DatasetDescriptor parse_descriptor(const std::string& filename);

SampleSet parse_sample_file(const std::string& path,
                            std::optional<int> expected_n = std::nullopt,
                            SampleSource source = SampleSource::hardware,
                            std::size_t memory_budget = kDefaultMemoryBudget);

SampleSet generate_uniform(int n, std::size_t m, std::uint64_t seed,
                           std::size_t memory_budget = kDefaultMemoryBudget);

/// Uniform record generator with the first `fixed_prefix_len` columns pinned
/// to `fixed_value` — the synthetic stand-in for prefix-spoofed datasets.
SampleSet generate_spoof(int n, std::size_t m, std::uint64_t seed, int fixed_prefix_len,
                         int fixed_value, std::size_t memory_budget = kDefaultMemoryBudget);

void write_sample_file(const SampleSet& sample, const std::string& path);

} // namespace rcs
