#pragma once

#include "nkze/landscape.hpp"
#include "nkze/population.hpp"
#include "nkze/rng.hpp"

namespace nkze {

// Standard (greedy hill-climbing) dynamics. Every accepted move is strictly
// improving for the acting firm and flips exactly one bit.

/// Flip one uniformly chosen search bit; keep it only if strictly fitter.
Move searcher_step(Population& population, std::size_t firm, const Landscape& landscape, Rng& rng);

/// Candidate A flips one search bit, candidate B flips one shared shape bit.
/// The better of the two is adopted if it strictly beats the current fitness.
/// With Z == 0 only candidate A exists.
Move shaper_step(Population& population, std::size_t firm, const Landscape& landscape, Rng& rng);

/// Every firm acts once, in a fresh random order.
void run_iteration_standard(Population& population, const Landscape& landscape, Rng& rng,
                            const TurnObserver& observer = {});

} // namespace nkze
