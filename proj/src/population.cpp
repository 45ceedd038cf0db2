#include "nkze/population.hpp"

#include "nkze/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace nkze {

std::string_view to_string(Role role) { return role == Role::Shaper ? "shaper" : "searcher"; }

std::string_view to_string(Move move) {
    switch (move) {
    case Move::None: return "none";
    case Move::Search: return "search";
    case Move::Shape: return "shape";
    case Move::Memory: return "memory";
    }
    return "unknown";
}

void Population::refresh(const Landscape& landscape) {
    for (auto& f : firms) f.fitness = landscape.evaluate(f.g, shape);
}

void Population::set_shape(ShapePolicy e, const Landscape& landscape) {
    shape = std::move(e);
    refresh(landscape);
}

std::size_t Population::shaper_count() const {
    std::size_t n = 0;
    for (const auto& f : firms) n += f.role == Role::Shaper;
    return n;
}

std::size_t Population::best_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < firms.size(); ++i)
        if (firms[i].fitness > firms[best].fitness) best = i;
    return best;
}

std::size_t shaper_quota(std::size_t M, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0,1] (got " + std::to_string(beta) + ")");
    return static_cast<std::size_t>(std::floor(beta * static_cast<double>(M) + 0.5));
}

std::vector<Role> roles_from_beta(std::size_t M, double beta, Rng& rng) {
    if (M < 1) throw ConfigError("M must be >= 1");
    const std::size_t shapers = shaper_quota(M, beta);
    std::vector<std::size_t> ids(M);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    rng.shuffle(std::span(ids));
    std::vector<Role> roles(M, Role::Searcher);
    for (std::size_t k = 0; k < shapers; ++k) roles[ids[k]] = Role::Shaper;
    return roles;
}

Population init_population(std::span<const Role> roles, const Landscape& landscape, Rng& rng) {
    Population pop;
    pop.firms.reserve(roles.size());
    for (std::size_t id = 0; id < roles.size(); ++id) {
        Firm f;
        f.id = id;
        f.role = roles[id];
        f.g = SearchPolicy::random(landscape.N(), rng);
        pop.firms.push_back(std::move(f));
    }
    pop.set_shape(ShapePolicy::random(landscape.Z(), rng), landscape);
    return pop;
}

Population init_population(std::size_t M, double beta, const Landscape& landscape, Rng& rng) {
    const auto roles = roles_from_beta(M, beta, rng);
    return init_population(roles, landscape, rng);
}

void init_guides(Population& population, Rng& rng) {
    for (auto& f : population.firms) f.guide = GuidingVector::random(f.g.size(), rng);
}

std::vector<std::size_t> turn_order(std::size_t M, Rng& rng) {
    std::vector<std::size_t> order(M);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));
    return order;
}

Move choose_shaper_move(Population& population, std::size_t firm, const Landscape& landscape,
                        SearchPolicy search_candidate, double search_fitness, ShapePolicy shape_candidate,
                        double shape_fitness) {
    Firm& f = population.firms[firm];
    const bool has_shape = !shape_candidate.empty();
    if (has_shape && shape_fitness > search_fitness && shape_fitness > f.fitness) {
        population.set_shape(std::move(shape_candidate), landscape);
        return Move::Shape;
    }
    if (search_fitness > f.fitness) {
        f.g = std::move(search_candidate);
        f.fitness = search_fitness;
        return Move::Search;
    }
    return Move::None;
}

} // namespace nkze
