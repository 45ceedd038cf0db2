#pragma once

#include "nkze/guide.hpp"
#include "nkze/landscape.hpp"
#include "nkze/memory.hpp"
#include "nkze/population.hpp"
#include "nkze/rng.hpp"

#include <cstddef>

namespace nkze {

/// epsilon_t = epsilon_0 * gamma^t after t decays.
class EpsilonSchedule {
  public:
    explicit EpsilonSchedule(double epsilon0 = 1.0, double gamma = 0.999);

    double epsilon() const noexcept { return epsilon_; }
    double gamma() const noexcept { return gamma_; }
    std::size_t decays() const noexcept { return decays_; }

    /// Called once at the end of every iteration.
    void decay();

  private:
    double epsilon0_;
    double gamma_;
    std::size_t decays_ = 0;
    double epsilon_;
};

/// Exploit the memory iff a U[0,1) draw exceeds epsilon.
bool exploit_decision(double epsilon, Rng& rng);

/// Unconditionally copy the best memory: searchers take g, shapers take g and
/// overwrite the shared shape. Returns false (and does nothing) on an empty db.
bool adopt_from_memory(Population& population, std::size_t firm, const MemoryDB& db, const Landscape& landscape);

/// One Stealthy Global Learning turn: memory exploitation with probability
/// 1-epsilon, otherwise learn towards the current global best, sample a
/// candidate policy, and (for shapers) also try one shape-bit flip.
Move stealthl_firm_turn(Population& population, std::size_t firm, const Landscape& landscape, const MemoryDB& db,
                        double epsilon, double alpha, Rng& rng);

/// All firms act once in random order, the iteration's best firm is offered
/// to the memory, then epsilon decays.
void stealthl_iteration(Population& population, const Landscape& landscape, MemoryDB& db,
                        EpsilonSchedule& schedule, double alpha, Rng& rng, const TurnObserver& observer = {});

/// Shared tail of a learning-model exploration turn: adopt the guided search
/// candidate, or for shapers the better of it and a single shape-bit flip.
Move explore_with_candidate(Population& population, std::size_t firm, const Landscape& landscape,
                            SearchPolicy candidate, Rng& rng);

} // namespace nkze
