#include "nkze/verify.hpp"

#include "nkze/landscape.hpp"
#include "nkze/population.hpp"
#include "nkze/rng.hpp"
#include "nkze/standard.hpp"

#include <set>
#include <sstream>
#include <string>

namespace nkze {

namespace {

constexpr std::size_t kMaxVerifyN = 12;

struct Failure {
    std::string detail;
};

std::string describe(const LandscapeConfig& c) {
    std::ostringstream os;
    os << "N=" << c.N << " K=" << c.K << " Z=" << c.Z << " E=" << c.E << " landscape_seed=" << c.seed;
    return os.str();
}

LandscapeConfig random_config(Rng& rng, std::size_t max_n, std::size_t max_z) {
    LandscapeConfig c;
    c.N = 1 + static_cast<std::size_t>(rng.below(max_n));
    c.K = static_cast<std::size_t>(rng.below(c.N));
    c.Z = static_cast<std::size_t>(rng.below(max_z + 1));
    c.E = static_cast<std::size_t>(rng.below(c.Z + 1));
    c.seed = rng.next();
    return c;
}

std::uint64_t binary_string_value(const std::string& s) { return s.empty() ? 0 : std::stoull(s, nullptr, 2); }

void check_packing(const IndexPacker& pack, Rng& rng) {
    const std::uint8_t ex1_nbr[] = {1, 1, 0};
    if (const auto v = pack(0, ex1_nbr, {}); v != 6)
        throw Failure{"(0110) packed to " + std::to_string(v) + ", expected 6"};
    const std::uint8_t ex2_nbr[] = {1, 0, 1};
    const std::uint8_t ex2_shape[] = {0, 1, 0};
    if (const auto v = pack(0, ex2_nbr, ex2_shape); v != 42)
        throw Failure{"(0101010) packed to " + std::to_string(v) + ", expected 42"};

    for (std::size_t len = 1; len <= 10; ++len) {
        const auto split = static_cast<std::size_t>(rng.below(len)); // neighbour bits; rest are shape
        std::set<std::uint64_t> seen;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            std::vector<std::uint8_t> bits(len);
            std::string text;
            for (std::size_t i = 0; i < len; ++i) {
                bits[i] = (v >> (len - 1 - i)) & 1U;
                text += bits[i] ? '1' : '0';
            }
            const std::span<const std::uint8_t> all(bits);
            const auto got = pack(bits[0], all.subspan(1, split), all.subspan(1 + split));
            if (got != binary_string_value(text))
                throw Failure{"(" + text + ") packed to " + std::to_string(got) + ", expected " +
                              std::to_string(binary_string_value(text))};
            seen.insert(got);
        }
        if (seen.size() != (std::uint64_t{1} << len))
            throw Failure{"packing is not a bijection for length " + std::to_string(len)};
    }
}

void check_interaction_map(Rng& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const auto cfg = random_config(rng, kMaxVerifyN, kMaxVerifyN);
        const Landscape a(cfg), b(cfg);
        for (std::size_t i = 0; i < cfg.N; ++i) {
            const auto sn = a.search_neighbors(i);
            const auto en = a.shape_neighbors(i);
            std::set<std::size_t> s(sn.begin(), sn.end()), e(en.begin(), en.end());
            if (sn.size() != cfg.K || s.size() != cfg.K || s.count(i) != 0 || (!s.empty() && *s.rbegin() >= cfg.N))
                throw Failure{"bad search neighbours at locus " + std::to_string(i) + " (" + describe(cfg) + ")"};
            if (en.size() != cfg.E || e.size() != cfg.E || (!e.empty() && *e.rbegin() >= cfg.Z))
                throw Failure{"bad shape neighbours at locus " + std::to_string(i) + " (" + describe(cfg) + ")"};
            const auto sb = b.search_neighbors(i);
            const auto eb = b.shape_neighbors(i);
            if (!std::equal(sn.begin(), sn.end(), sb.begin(), sb.end()) ||
                !std::equal(en.begin(), en.end(), eb.begin(), eb.end()))
                throw Failure{"interaction map not deterministic (" + describe(cfg) + ")"};
        }
    }
}

void check_fitness_equivalence(const IndexPacker& pack, Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const auto cfg = random_config(rng, 6, 4);
        const Landscape land(cfg);
        for (std::uint64_t gv = 0; gv < (std::uint64_t{1} << cfg.N); ++gv) {
            const auto g = SearchPolicy::from_uint(gv, cfg.N);
            for (std::uint64_t ev = 0; ev < (std::uint64_t{1} << cfg.Z); ++ev) {
                const auto e = ShapePolicy::from_uint(ev, cfg.Z);
                double sum = 0.0;
                for (std::size_t i = 0; i < cfg.N; ++i) {
                    std::vector<std::uint8_t> nbr, shp;
                    for (auto j : land.search_neighbors(i)) nbr.push_back(g[j]);
                    for (auto j : land.shape_neighbors(i)) shp.push_back(e[j]);
                    sum += contribution_value(cfg.seed, i, pack(g[i], nbr, shp));
                }
                const double expected = sum / static_cast<double>(cfg.N);
                const double got = land.evaluate(g, e);
                if (got != expected)
                    throw Failure{"evaluate(g=" + g.to_string() + ", e=" + e.to_string() + ") mismatch (" +
                                  describe(cfg) + ")"};
            }
        }
    }
}

void check_storage_agreement(Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const auto cfg = random_config(rng, 8, 8);
        const Landscape table(cfg, Landscape::Storage::Table);
        const Landscape lazy(cfg, Landscape::Storage::Lazy);
        for (int probe = 0; probe < 200; ++probe) {
            const auto i = static_cast<std::size_t>(rng.below(cfg.N));
            const auto row = rng.below(table.rows());
            const double v = table.value(i, row);
            if (v != lazy.value(i, row))
                throw Failure{"table and lazy values differ at locus " + std::to_string(i) + " row " +
                              std::to_string(row) + " (" + describe(cfg) + ")"};
            if (!(v >= 0.0 && v <= 1.0)) throw Failure{"contribution outside [0,1] (" + describe(cfg) + ")"};
        }
    }
}

void check_optima(Rng& rng) {
    for (int trial = 0; trial < 10; ++trial) {
        auto cfg = random_config(rng, 10, 4);
        const Landscape land(cfg);
        const auto e = ShapePolicy::random(cfg.Z, rng);
        const auto fitness = enumerate_fitness(land, e);
        const auto best = brute_force_optimum(land, e);
        for (double f : fitness)
            if (f > best.fitness) throw Failure{"brute_force_optimum not maximal (" + describe(cfg) + ")"};

        std::size_t peaks = 0;
        for (std::uint64_t v = 0; v < fitness.size(); ++v) {
            bool peak = true;
            for (std::size_t b = 0; b < cfg.N; ++b) peak = peak && fitness[v] > fitness[v ^ (std::uint64_t{1} << b)];
            peaks += peak;
        }
        if (peaks != count_local_optima(land, e))
            throw Failure{"count_local_optima disagrees with recount (" + describe(cfg) + ")"};

        cfg.K = 0;
        cfg.E = 0;
        const Landscape additive(cfg);
        if (const auto n = count_local_optima(additive, e); n != 1)
            throw Failure{"K=0 landscape has " + std::to_string(n) + " local optima (" + describe(cfg) + ")"};
        SearchPolicy argmax(cfg.N);
        for (std::size_t i = 0; i < cfg.N; ++i) argmax.set(i, additive.value(i, 1) > additive.value(i, 0));
        if (brute_force_optimum(additive, e).policy != argmax)
            throw Failure{"K=0 optimum is not the per-locus argmax (" + describe(cfg) + ")"};
    }
}

void check_standard_replay(Rng& rng) {
    for (int trial = 0; trial < 10; ++trial) {
        auto cfg = random_config(rng, kMaxVerifyN, 6);
        const Landscape land(cfg);
        Rng dyn(rng.next());
        Population pop = init_population(8, 0.5, land, dyn);
        std::string failure;
        const TurnObserver obs = [&](const TurnEvent& ev) {
            if (!failure.empty()) return;
            const double replay = land.evaluate(ev.g_after, ev.e_after);
            const auto flips = ev.g_before.hamming(ev.g_after) + ev.e_before.hamming(ev.e_after);
            if (replay != ev.fitness_after) failure = "cached fitness differs from evaluate";
            else if (ev.fitness_after < ev.fitness_before) failure = "acting firm lost fitness";
            else if (ev.move == Move::None ? flips != 0 : flips != 1) failure = "accepted move flipped != 1 bit";
        };
        for (int t = 0; t < 20 && failure.empty(); ++t) {
            run_iteration_standard(pop, land, dyn, obs);
            for (const auto& f : pop.firms)
                if (f.fitness != land.evaluate(f.g, pop.shape)) failure = "stale cached fitness after iteration";
        }
        if (!failure.empty()) throw Failure{failure + " (" + describe(cfg) + ")"};
    }
}

void check_shape_invariance(Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        auto cfg = random_config(rng, 8, 8);
        cfg.E = 0;
        const Landscape land(cfg);
        const auto g = SearchPolicy::random(cfg.N, rng);
        const double ref = land.evaluate(g, ShapePolicy::random(cfg.Z, rng));
        for (int k = 0; k < 10; ++k)
            if (land.evaluate(g, ShapePolicy::random(cfg.Z, rng)) != ref)
                throw Failure{"E=0 fitness depends on the shape policy (" + describe(cfg) + ")"};
    }
}

} // namespace

std::vector<PropertyResult> run_verify_suite(const VerifyOptions& options) {
    const IndexPacker pack = options.packer ? options.packer : IndexPacker(&pack_index);

    struct Check {
        const char* name;
        std::function<void(Rng&)> run;
    };
    const std::vector<Check> checks = {
        {"packing", [&](Rng& r) { check_packing(pack, r); }},
        {"interaction-map", check_interaction_map},
        {"fitness-equivalence", [&](Rng& r) { check_fitness_equivalence(pack, r); }},
        {"storage-agreement", check_storage_agreement},
        {"optima", check_optima},
        {"standard-replay", check_standard_replay},
        {"shape-invariance", check_shape_invariance},
    };

    std::vector<PropertyResult> results;
    for (std::size_t k = 0; k < checks.size(); ++k) {
        const std::uint64_t seed = mix_seed(options.seed, k);
        Rng rng(seed);
        PropertyResult res{checks[k].name, true, {}};
        try {
            checks[k].run(rng);
        } catch (const Failure& f) {
            res.passed = false;
            res.detail = f.detail + "; reproduce with --seed " + std::to_string(options.seed);
        } catch (const std::exception& ex) {
            res.passed = false;
            res.detail = std::string("exception: ") + ex.what() + "; reproduce with --seed " +
                         std::to_string(options.seed);
        }
        results.push_back(std::move(res));
    }
    return results;
}

} // namespace nkze
