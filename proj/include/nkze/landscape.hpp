#pragma once

#include "nkze/bits.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace nkze {

struct LandscapeConfig {
    std::size_t N = 12; ///< search policy bits
    std::size_t K = 0;  ///< other search bits coupled to each locus
    std::size_t Z = 12; ///< shape policy bits
    std::size_t E = 0;  ///< shape bits coupled to each locus
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the first violated bound.
    void validate() const;

    std::size_t row_bits() const noexcept { return K + 1 + E; }
};

/// Packs bits left to right, first bit most significant.
std::uint64_t pack_bits(std::span<const std::uint8_t> bits);

/// Row index for (self, search neighbours..., shape neighbours...).
std::uint64_t pack_index(std::uint8_t self_bit, std::span<const std::uint8_t> neighbor_bits,
                         std::span<const std::uint8_t> shape_bits);

/// Contribution value for (locus, row) as a pure function of the landscape
/// seed. Both the materialized table and lazy lookups go through this.
double contribution_value(std::uint64_t landscape_seed, std::size_t locus, std::uint64_t row);

/// An immutable NKZE landscape: interaction map plus contribution source.
/// Safe to share read-only across threads.
class Landscape {
  public:
    /// Contribution tables are materialized up to 2^kMaxTableRowBits rows.
    static constexpr std::size_t kMaxTableRowBits = 20;

    enum class Storage { Auto, Table, Lazy };

    explicit Landscape(const LandscapeConfig& config, Storage storage = Storage::Auto);

    const LandscapeConfig& config() const noexcept { return config_; }
    std::size_t N() const noexcept { return config_.N; }
    std::size_t K() const noexcept { return config_.K; }
    std::size_t Z() const noexcept { return config_.Z; }
    std::size_t E() const noexcept { return config_.E; }

    std::span<const std::size_t> search_neighbors(std::size_t locus) const;
    std::span<const std::size_t> shape_neighbors(std::size_t locus) const;

    std::uint64_t rows() const noexcept { return std::uint64_t{1} << config_.row_bits(); }
    bool materialized() const noexcept { return !table_.empty(); }

    /// Contribution source lookup, column `locus`, row `row`.
    double value(std::size_t locus, std::uint64_t row) const;

    /// Checks lengths against K and E before packing; throws std::logic_error.
    std::uint64_t pack(std::uint8_t self_bit, std::span<const std::uint8_t> neighbor_bits,
                       std::span<const std::uint8_t> shape_bits) const;

    std::uint64_t row_index(std::size_t locus, const SearchPolicy& g, const ShapePolicy& e) const;
    double contribution(std::size_t locus, const SearchPolicy& g, const ShapePolicy& e) const;

    /// Mean of the N contributions.
    double evaluate(const SearchPolicy& g, const ShapePolicy& e) const;

    /// Debug dump: `locus,neighbor_kind,index` with kind in {search,shape}.
    void write_interaction_csv(std::ostream& os) const;

  private:
    void check_lengths(const SearchPolicy& g, const ShapePolicy& e) const;

    LandscapeConfig config_;
    std::vector<std::size_t> search_nbrs_; // N x K, row-major
    std::vector<std::size_t> shape_nbrs_;  // N x E, row-major
    std::vector<double> table_;            // N x rows(), column per locus
};

inline Landscape generate_landscape(const LandscapeConfig& config) { return Landscape(config); }

/// Largest N accepted by the enumeration oracles.
inline constexpr std::size_t kEnumerationLimit = 20;

struct Optimum {
    SearchPolicy policy;
    double fitness = 0.0;
};

/// Exhaustive maximum over all 2^N search policies for a fixed shape policy.
/// Ties go to the lowest binary value of g. Throws SizeError above the limit.
Optimum brute_force_optimum(const Landscape& landscape, const ShapePolicy& e);

/// Policies strictly fitter than every single-bit-flip neighbour.
std::size_t count_local_optima(const Landscape& landscape, const ShapePolicy& e);

/// Fitness of every policy, indexed by its packed value.
std::vector<double> enumerate_fitness(const Landscape& landscape, const ShapePolicy& e);

} // namespace nkze
