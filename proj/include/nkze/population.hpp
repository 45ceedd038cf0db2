#pragma once

#include "nkze/bits.hpp"
#include "nkze/guide.hpp"
#include "nkze/landscape.hpp"
#include "nkze/rng.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace nkze {

enum class Role : std::uint8_t { Searcher, Shaper };

std::string_view to_string(Role role);

struct Firm {
    std::size_t id = 0;
    Role role = Role::Searcher;
    SearchPolicy g;
    double fitness = 0.0;  ///< evaluate(g, shape) under the current shared shape
    GuidingVector guide;   ///< empty for the Standard model
};

/// Firms plus the single shared shape policy.
struct Population {
    std::vector<Firm> firms;
    ShapePolicy shape;

    /// Recompute every cached fitness against `shape`.
    void refresh(const Landscape& landscape);
    /// Replace the shared shape policy and invalidate all cached fitness.
    void set_shape(ShapePolicy e, const Landscape& landscape);

    std::size_t size() const noexcept { return firms.size(); }
    std::size_t shaper_count() const;
    /// Index of the fittest firm, lowest id on ties.
    std::size_t best_index() const;
};

/// round(beta * M) with halves rounded up.
std::size_t shaper_quota(std::size_t M, double beta);

/// Roles for M firms; the shaper ids are picked by shuffling.
std::vector<Role> roles_from_beta(std::size_t M, double beta, Rng& rng);

/// Random search policies for the given roles, then a random shared shape.
Population init_population(std::span<const Role> roles, const Landscape& landscape, Rng& rng);
Population init_population(std::size_t M, double beta, const Landscape& landscape, Rng& rng);

/// Give every firm a random guiding vector (learning models only).
void init_guides(Population& population, Rng& rng);

enum class Move : std::uint8_t { None, Search, Shape, Memory };

std::string_view to_string(Move move);

/// Snapshot of one firm's turn, for tests and diagnostics.
struct TurnEvent {
    std::size_t firm = 0;
    Move move = Move::None;
    SearchPolicy g_before, g_after;
    ShapePolicy e_before, e_after;
    double fitness_before = 0.0, fitness_after = 0.0;
};

using TurnObserver = std::function<void(const TurnEvent&)>;

/// Fresh uniform random order of firm indices.
std::vector<std::size_t> turn_order(std::size_t M, Rng& rng);

/// Strictly-improving choice between a search candidate (g', current e) and
/// a shape candidate (current g, e'). The shape candidate is skipped when
/// `shape_candidate` is empty. Equal improvements favour the search move.
Move choose_shaper_move(Population& population, std::size_t firm, const Landscape& landscape,
                        SearchPolicy search_candidate, double search_fitness, ShapePolicy shape_candidate,
                        double shape_fitness);

/// Runs `act()` for one firm, reporting before/after state when an observer
/// is set.
template <class Act>
Move observed_turn(Population& population, std::size_t firm, const TurnObserver& observer, Act&& act) {
    if (!observer) return act();
    TurnEvent ev;
    ev.firm = firm;
    ev.g_before = population.firms[firm].g;
    ev.e_before = population.shape;
    ev.fitness_before = population.firms[firm].fitness;
    ev.move = act();
    ev.g_after = population.firms[firm].g;
    ev.e_after = population.shape;
    ev.fitness_after = population.firms[firm].fitness;
    observer(ev);
    return ev.move;
}

} // namespace nkze
