#include "nkze/standard.hpp"

namespace nkze {

Move searcher_step(Population& population, std::size_t firm, const Landscape& landscape, Rng& rng) {
    Firm& f = population.firms[firm];
    const auto bit = static_cast<std::size_t>(rng.below(landscape.N()));
    SearchPolicy candidate = f.g.flipped(bit);
    const double fit = landscape.evaluate(candidate, population.shape);
    if (fit > f.fitness) {
        f.g = std::move(candidate);
        f.fitness = fit;
        return Move::Search;
    }
    return Move::None;
}

Move shaper_step(Population& population, std::size_t firm, const Landscape& landscape, Rng& rng) {
    const Firm& f = population.firms[firm];
    const auto search_bit = static_cast<std::size_t>(rng.below(landscape.N()));
    SearchPolicy g_candidate = f.g.flipped(search_bit);
    const double g_fit = landscape.evaluate(g_candidate, population.shape);

    ShapePolicy e_candidate;
    double e_fit = 0.0;
    if (landscape.Z() > 0) {
        const auto shape_bit = static_cast<std::size_t>(rng.below(landscape.Z()));
        e_candidate = population.shape.flipped(shape_bit);
        e_fit = landscape.evaluate(f.g, e_candidate);
    }
    return choose_shaper_move(population, firm, landscape, std::move(g_candidate), g_fit, std::move(e_candidate),
                              e_fit);
}

void run_iteration_standard(Population& population, const Landscape& landscape, Rng& rng,
                            const TurnObserver& observer) {
    for (auto idx : turn_order(population.size(), rng)) {
        observed_turn(population, idx, observer, [&] {
            return population.firms[idx].role == Role::Shaper ? shaper_step(population, idx, landscape, rng)
                                                              : searcher_step(population, idx, landscape, rng);
        });
    }
}

} // namespace nkze
