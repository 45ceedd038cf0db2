#include "nkze/stealthl.hpp"

#include "nkze/error.hpp"

#include <cmath>
#include <string>

namespace nkze {

EpsilonSchedule::EpsilonSchedule(double epsilon0, double gamma)
    : epsilon0_(epsilon0), gamma_(gamma), epsilon_(epsilon0) {
    if (!(epsilon0 >= 0.0 && epsilon0 <= 1.0))
        throw ConfigError("epsilon0 must lie in [0,1] (got " + std::to_string(epsilon0) + ")");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0,1) (got " + std::to_string(gamma) + ")");
}

void EpsilonSchedule::decay() {
    ++decays_;
    epsilon_ = epsilon0_ * std::pow(gamma_, static_cast<double>(decays_));
}

bool exploit_decision(double epsilon, Rng& rng) { return rng.uniform01() > epsilon; }

bool adopt_from_memory(Population& population, std::size_t firm, const MemoryDB& db, const Landscape& landscape) {
    const MemoryEntry* best = db.best();
    if (best == nullptr) return false;
    Firm& f = population.firms[firm];
    f.g = best->g;
    if (f.role == Role::Shaper) {
        population.set_shape(best->e, landscape);
    } else {
        f.fitness = landscape.evaluate(f.g, population.shape);
    }
    return true;
}

Move explore_with_candidate(Population& population, std::size_t firm, const Landscape& landscape,
                            SearchPolicy candidate, Rng& rng) {
    const Firm& f = population.firms[firm];
    const double g_fit = landscape.evaluate(candidate, population.shape);
    ShapePolicy e_candidate;
    double e_fit = 0.0;
    if (f.role == Role::Shaper && landscape.Z() > 0) {
        const auto bit = static_cast<std::size_t>(rng.below(landscape.Z()));
        e_candidate = population.shape.flipped(bit);
        e_fit = landscape.evaluate(f.g, e_candidate);
    }
    return choose_shaper_move(population, firm, landscape, std::move(candidate), g_fit, std::move(e_candidate), e_fit);
}

Move stealthl_firm_turn(Population& population, std::size_t firm, const Landscape& landscape, const MemoryDB& db,
                        double epsilon, double alpha, Rng& rng) {
    if (exploit_decision(epsilon, rng) && adopt_from_memory(population, firm, db, landscape)) return Move::Memory;

    // The target is read at this moment, so earlier turns in the same
    // iteration are visible.
    const SearchPolicy target = population.firms[population.best_index()].g;
    Firm& f = population.firms[firm];
    f.guide = learn_towards(std::move(f.guide), target, alpha);
    SearchPolicy candidate = sample_policy(f.guide, rng);
    return explore_with_candidate(population, firm, landscape, std::move(candidate), rng);
}

void stealthl_iteration(Population& population, const Landscape& landscape, MemoryDB& db,
                        EpsilonSchedule& schedule, double alpha, Rng& rng, const TurnObserver& observer) {
    const double epsilon = schedule.epsilon();
    for (auto idx : turn_order(population.size(), rng)) {
        observed_turn(population, idx, observer,
                      [&] { return stealthl_firm_turn(population, idx, landscape, db, epsilon, alpha, rng); });
    }
    const Firm& elite = population.firms[population.best_index()];
    db.memorize({elite.g, population.shape, elite.fitness});
    schedule.decay();
}

} // namespace nkze
