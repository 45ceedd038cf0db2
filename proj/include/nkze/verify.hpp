#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nkze {

using IndexPacker =
    std::function<std::uint64_t(std::uint8_t, std::span<const std::uint8_t>, std::span<const std::uint8_t>)>;

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// Packing routine under test; defaults to nkze::pack_index.
    IndexPacker packer;
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail; ///< failing case and reproducer seed
};

/// Brute-force oracle suite over small instances (N <= 12).
std::vector<PropertyResult> run_verify_suite(const VerifyOptions& options = {});

} // namespace nkze
