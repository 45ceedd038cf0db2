#include "nkze/landscape.hpp"

#include "nkze/error.hpp"
#include "nkze/rng.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nkze {

namespace {

constexpr std::uint64_t kNeighborStream = 0x4E454947484253ULL; // "NEIGHBS"
constexpr std::uint64_t kValueStream = 0x56414C554553ULL;      // "VALUES"
constexpr std::size_t kMaxRowBits = 63;

// First `count` entries of a partial Fisher-Yates shuffle of `pool`.
std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool, std::size_t count,
                                                    Rng& rng) {
    for (std::size_t k = 0; k < count; ++k) {
        const auto j = k + static_cast<std::size_t>(rng.below(pool.size() - k));
        std::swap(pool[k], pool[j]);
    }
    pool.resize(count);
    return pool;
}

} // namespace

void LandscapeConfig::validate() const {
    if (N < 1) throw ConfigError("N must be >= 1 (got " + std::to_string(N) + ")");
    if (K > N - 1)
        throw ConfigError("K must be <= N-1 (got K=" + std::to_string(K) + ", N=" + std::to_string(N) + ")");
    if (E > Z)
        throw ConfigError("E must be <= Z (got E=" + std::to_string(E) + ", Z=" + std::to_string(Z) + ")");
    if (row_bits() > kMaxRowBits)
        throw ConfigError("K+1+E must be <= " + std::to_string(kMaxRowBits) + " (got " +
                          std::to_string(row_bits()) + ")");
}

std::uint64_t pack_bits(std::span<const std::uint8_t> bits) {
    std::uint64_t v = 0;
    for (auto b : bits) v = (v << 1) | (b & 1U);
    return v;
}

std::uint64_t pack_index(std::uint8_t self_bit, std::span<const std::uint8_t> neighbor_bits,
                         std::span<const std::uint8_t> shape_bits) {
    std::uint64_t v = self_bit & 1U;
    for (auto b : neighbor_bits) v = (v << 1) | (b & 1U);
    for (auto b : shape_bits) v = (v << 1) | (b & 1U);
    return v;
}

double contribution_value(std::uint64_t landscape_seed, std::size_t locus, std::uint64_t row) {
    const std::uint64_t column_key = mix_seed(mix_seed(landscape_seed, kValueStream), locus);
    return unit_from_bits(mix_seed(column_key, row));
}

Landscape::Landscape(const LandscapeConfig& config, Storage storage) : config_(config) {
    config_.validate();
    const std::size_t n = config_.N;

    Rng rng(mix_seed(config_.seed, kNeighborStream));
    search_nbrs_.reserve(n * config_.K);
    shape_nbrs_.reserve(n * config_.E);
    std::vector<std::size_t> shape_pool(config_.Z);
    std::iota(shape_pool.begin(), shape_pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> others;
        others.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) others.push_back(j);
        for (auto j : sample_without_replacement(std::move(others), config_.K, rng)) search_nbrs_.push_back(j);
        for (auto j : sample_without_replacement(shape_pool, config_.E, rng)) shape_nbrs_.push_back(j);
    }

    const bool small = config_.row_bits() <= kMaxTableRowBits;
    if (storage == Storage::Table && !small)
        throw SizeError("contribution table too large to materialize (K+1+E=" +
                        std::to_string(config_.row_bits()) + ")");
    if (storage == Storage::Table || (storage == Storage::Auto && small)) {
        const std::uint64_t r = rows();
        table_.resize(n * r);
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint64_t row = 0; row < r; ++row)
                table_[i * r + row] = contribution_value(config_.seed, i, row);
    }
}

std::span<const std::size_t> Landscape::search_neighbors(std::size_t locus) const {
    return {search_nbrs_.data() + locus * config_.K, config_.K};
}

std::span<const std::size_t> Landscape::shape_neighbors(std::size_t locus) const {
    return {shape_nbrs_.data() + locus * config_.E, config_.E};
}

double Landscape::value(std::size_t locus, std::uint64_t row) const {
    if (!table_.empty()) return table_[locus * rows() + row];
    return contribution_value(config_.seed, locus, row);
}

std::uint64_t Landscape::pack(std::uint8_t self_bit, std::span<const std::uint8_t> neighbor_bits,
                              std::span<const std::uint8_t> shape_bits) const {
    if (neighbor_bits.size() != config_.K || shape_bits.size() != config_.E)
        throw std::logic_error("pack: expected " + std::to_string(config_.K) + " neighbour bits and " +
                               std::to_string(config_.E) + " shape bits");
    return pack_index(self_bit, neighbor_bits, shape_bits);
}

void Landscape::check_lengths(const SearchPolicy& g, const ShapePolicy& e) const {
    if (g.size() != config_.N || e.size() != config_.Z)
        throw std::logic_error("policy length mismatch: expected g of " + std::to_string(config_.N) +
                               " bits and e of " + std::to_string(config_.Z) + " bits");
}

std::uint64_t Landscape::row_index(std::size_t locus, const SearchPolicy& g, const ShapePolicy& e) const {
    std::uint64_t v = g[locus];
    for (auto j : search_neighbors(locus)) v = (v << 1) | g[j];
    for (auto j : shape_neighbors(locus)) v = (v << 1) | e[j];
    return v;
}

double Landscape::contribution(std::size_t locus, const SearchPolicy& g, const ShapePolicy& e) const {
    check_lengths(g, e);
    if (locus >= config_.N) throw std::out_of_range("locus out of range");
    return value(locus, row_index(locus, g, e));
}

double Landscape::evaluate(const SearchPolicy& g, const ShapePolicy& e) const {
    check_lengths(g, e);
    double sum = 0.0;
    for (std::size_t i = 0; i < config_.N; ++i) sum += value(i, row_index(i, g, e));
    return sum / static_cast<double>(config_.N);
}

void Landscape::write_interaction_csv(std::ostream& os) const {
    os << "locus,neighbor_kind,index\n";
    for (std::size_t i = 0; i < config_.N; ++i) {
        for (auto j : search_neighbors(i)) os << i << ",search," << j << '\n';
        for (auto j : shape_neighbors(i)) os << i << ",shape," << j << '\n';
    }
}

std::vector<double> enumerate_fitness(const Landscape& landscape, const ShapePolicy& e) {
    const std::size_t n = landscape.N();
    if (n > kEnumerationLimit)
        throw SizeError("enumeration refused: N=" + std::to_string(n) + " exceeds limit " +
                        std::to_string(kEnumerationLimit));
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> fitness(count);
    for (std::uint64_t v = 0; v < count; ++v) fitness[v] = landscape.evaluate(SearchPolicy::from_uint(v, n), e);
    return fitness;
}

Optimum brute_force_optimum(const Landscape& landscape, const ShapePolicy& e) {
    const auto fitness = enumerate_fitness(landscape, e);
    std::uint64_t best = 0;
    for (std::uint64_t v = 1; v < fitness.size(); ++v)
        if (fitness[v] > fitness[best]) best = v;
    return {SearchPolicy::from_uint(best, landscape.N()), fitness[best]};
}

std::size_t count_local_optima(const Landscape& landscape, const ShapePolicy& e) {
    const auto fitness = enumerate_fitness(landscape, e);
    const std::size_t n = landscape.N();
    std::size_t count = 0;
    for (std::uint64_t v = 0; v < fitness.size(); ++v) {
        bool peak = true;
        for (std::size_t b = 0; b < n && peak; ++b) peak = fitness[v] > fitness[v ^ (std::uint64_t{1} << b)];
        count += peak;
    }
    return count;
}

} // namespace nkze
