#pragma once

#include "nkze/bits.hpp"
#include "nkze/rng.hpp"

#include <cstddef>
#include <vector>

namespace nkze {

inline constexpr double kProbFloor = 0.05;
inline constexpr double kProbCeil = 0.95;

/// Per-firm vector of probabilities that each search bit is sampled as 1.
struct GuidingVector {
    std::vector<double> p;

    /// Uniform [0,1] draws, then clamped.
    static GuidingVector random(std::size_t n, Rng& rng);

    void clamp();
    std::size_t size() const noexcept { return p.size(); }
};

/// p <- (1-alpha) p + alpha g, then clamp into [kProbFloor, kProbCeil].
GuidingVector learn_towards(GuidingVector guide, const SearchPolicy& target, double alpha);

/// g_i = 1 iff r_i < p_i with r_i ~ U[0,1).
SearchPolicy sample_policy(const GuidingVector& guide, Rng& rng);

} // namespace nkze
