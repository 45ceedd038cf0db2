#include "nkze/error.hpp"
#include "nkze/stealthl.hpp"

#include <doctest.h>

#include <cmath>

using namespace nkze;

TEST_CASE("learn_towards moves each bit and clamps") {
    GuidingVector p{{0.5, 0.5, 0.96, 0.01}};
    const auto out = learn_towards(p, SearchPolicy{1, 0, 1, 0}, 0.2);
    CHECK(out.p[0] == doctest::Approx(0.6));
    CHECK(out.p[1] == doctest::Approx(0.4));
    CHECK(out.p[2] == kProbCeil);
    CHECK(out.p[3] == kProbFloor);

    CHECK(learn_towards(GuidingVector{{0.3}}, SearchPolicy{1}, 0.0).p[0] == doctest::Approx(0.3));
    CHECK(learn_towards(GuidingVector{{0.3}}, SearchPolicy{1}, 1.0).p[0] == kProbCeil);
    CHECK(learn_towards(GuidingVector{{0.3}}, SearchPolicy{0}, 1.0).p[0] == kProbFloor);
    CHECK_THROWS(learn_towards(GuidingVector{{0.3}}, SearchPolicy{1, 0}, 0.5));
}

TEST_CASE("guiding vector stays clamped under random updates") {
    Rng rng(17);
    auto p = GuidingVector::random(12, rng);
    for (int k = 0; k < 5000; ++k) {
        p = learn_towards(std::move(p), SearchPolicy::random(12, rng), rng.uniform01());
        for (double v : p.p) REQUIRE((v >= kProbFloor && v <= kProbCeil));
    }
}

TEST_CASE("sampling a converged vector keeps 5% mutation") {
    Rng rng(23);
    GuidingVector p{std::vector<double>(12, kProbCeil)};
    std::size_t ones = 0;
    const int draws = 20000;
    for (int k = 0; k < draws; ++k) {
        const auto g = sample_policy(p, rng);
        for (std::size_t i = 0; i < g.size(); ++i) ones += g[i];
    }
    const double rate = static_cast<double>(ones) / (12.0 * draws);
    CHECK(std::abs(rate - 0.95) <= 0.01);
}

TEST_CASE("epsilon schedule is gamma^t") {
    EpsilonSchedule s(1.0, 0.999);
    CHECK(s.epsilon() == 1.0);
    for (int t = 1; t <= 1000; ++t) {
        s.decay();
        REQUIRE(s.epsilon() == doctest::Approx(std::pow(0.999, t)).epsilon(1e-12));
    }
    CHECK(s.decays() == 1000);
    CHECK_THROWS_AS(EpsilonSchedule(1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(EpsilonSchedule(1.5, 0.9), ConfigError);
}

TEST_CASE("exploit decision rate follows epsilon") {
    Rng rng(31);
    auto rate = [&](double eps) {
        int hits = 0;
        for (int k = 0; k < 10000; ++k) hits += exploit_decision(eps, rng);
        return hits / 10000.0;
    };
    CHECK(rate(1.0) == 0.0);
    CHECK(rate(0.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(rate(0.5) - 0.5) <= 0.02);
}

TEST_CASE("memory database rules") {
    auto entry = [](const char* g, const char* e, double f) {
        return MemoryEntry{SearchPolicy::from_string(g), ShapePolicy::from_string(e), f};
    };
    CHECK_THROWS_AS(MemoryDB(0), ConfigError);

    SUBCASE("same shape replaced only when fitter") {
        MemoryDB db(3);
        CHECK(db.memorize(entry("00", "01", 0.5)) == MemorizeResult::Inserted);
        CHECK(db.memorize(entry("11", "01", 0.4)) == MemorizeResult::Rejected);
        CHECK(db.memorize(entry("11", "01", 0.5)) == MemorizeResult::Rejected);
        CHECK(db.memorize(entry("10", "01", 0.7)) == MemorizeResult::Replaced);
        CHECK(db.size() == 1);
        CHECK(db.best()->g.to_string() == "10");
    }
    SUBCASE("full database evicts the worst only for a better candidate") {
        MemoryDB db(2);
        db.memorize(entry("00", "00", 0.3));
        db.memorize(entry("00", "01", 0.6));
        CHECK(db.memorize(entry("00", "10", 0.2)) == MemorizeResult::Rejected);
        CHECK(db.memorize(entry("00", "10", 0.3)) == MemorizeResult::Rejected);
        CHECK(db.memorize(entry("00", "10", 0.4)) == MemorizeResult::Evicted);
        CHECK(db.size() == 2);
        CHECK(db.worst()->fitness == 0.4);
    }
    SUBCASE("best is argmax") {
        MemoryDB db(5);
        db.memorize(entry("00", "00", 0.3));
        db.memorize(entry("01", "01", 0.9));
        db.memorize(entry("10", "10", 0.7));
        CHECK(db.best()->fitness == 0.9);
        CHECK(db.best()->g.to_string() == "01");
    }
    SUBCASE("empty database") {
        MemoryDB db;
        CHECK(db.best() == nullptr);
        CHECK(db.worst() == nullptr);
        CHECK(db.capacity() == 50);
    }
}

TEST_CASE("random memorize sequences keep capacity, uniqueness and monotone worst") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        MemoryDB db(1 + rng.below(8));
        double worst_when_full = -1.0;
        for (int k = 0; k < 300; ++k) {
            db.memorize({SearchPolicy::random(4, rng), ShapePolicy::random(4, rng), rng.uniform01()});
            REQUIRE(db.size() <= db.capacity());
            const auto es = db.entries();
            for (std::size_t a = 0; a < es.size(); ++a)
                for (std::size_t b = a + 1; b < es.size(); ++b) REQUIRE(es[a].e != es[b].e);
            if (db.size() == db.capacity()) {
                REQUIRE(db.worst()->fitness >= worst_when_full);
                worst_when_full = db.worst()->fitness;
            }
        }
    }
}

TEST_CASE("adopting from memory") {
    const Landscape land({4, 1, 3, 1, 5});
    Rng rng(2);
    auto pop = init_population(2, 0.5, land, rng);
    MemoryDB db;
    CHECK_FALSE(adopt_from_memory(pop, 0, db, land));

    db.memorize({SearchPolicy::from_string("0001"), ShapePolicy::from_string("000"), 0.3});
    db.memorize({SearchPolicy::from_string("1111"), ShapePolicy::from_string("101"), 0.9});
    db.memorize({SearchPolicy::from_string("0101"), ShapePolicy::from_string("110"), 0.7});
    const std::size_t searcher = pop.firms[0].role == Role::Searcher ? 0 : 1;
    const std::size_t shaper = 1 - searcher;

    const auto e_before = pop.shape;
    CHECK(adopt_from_memory(pop, searcher, db, land));
    CHECK(pop.firms[searcher].g.to_string() == "1111");
    CHECK(pop.shape == e_before);
    CHECK(pop.firms[searcher].fitness == land.evaluate(pop.firms[searcher].g, pop.shape));

    CHECK(adopt_from_memory(pop, shaper, db, land));
    CHECK(pop.firms[shaper].g.to_string() == "1111");
    CHECK(pop.shape.to_string() == "101");
    for (const auto& f : pop.firms) CHECK(f.fitness == land.evaluate(f.g, pop.shape));
}

TEST_CASE("stealthl iteration memorizes the elite and decays epsilon") {
    const Landscape land({12, 5, 12, 6, 6});
    Rng rng(8);
    auto pop = init_population(10, 0.5, land, rng);
    init_guides(pop, rng);
    MemoryDB db(50);
    EpsilonSchedule s;
    for (int t = 1; t <= 30; ++t) {
        stealthl_iteration(pop, land, db, s, 0.2, rng, [&](const TurnEvent& ev) {
            if (pop.firms[ev.firm].role == Role::Searcher) CHECK(ev.e_before == ev.e_after);
            if (ev.move == Move::Shape) CHECK(ev.e_before.hamming(ev.e_after) == 1);
        });
        CHECK(s.decays() == static_cast<std::size_t>(t));
        const auto& elite = pop.firms[pop.best_index()];
        bool found = false;
        for (const auto& e : db.entries()) found = found || (e.e == pop.shape && e.fitness >= elite.fitness);
        CHECK(found);
        for (const auto& f : pop.firms)
            for (double v : f.guide.p) REQUIRE((v >= kProbFloor && v <= kProbCeil));
    }
}
