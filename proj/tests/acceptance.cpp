// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "nkze/config.hpp"
#include "nkze/engine.hpp"
#include "nkze/landscape.hpp"
#include "nkze/standard.hpp"
#include "nkze/stats.hpp"
#include "nkze/stealthl.hpp"
#include "nkze/structc.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace nkze;

namespace {

constexpr double kAlpha = 0.05; // one-sided significance level
constexpr std::uint64_t kMasterSeed = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Cached experiment results keyed by a label.
std::map<std::string, CellResult> g_cache;

const CellResult& run_cell(const std::string& key, const SimulationConfig& config) {
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    std::vector<Cell> cells = {{key, config}};
    auto res = run_experiment(cells, 0);
    if (!res[0].error.empty()) throw std::runtime_error(key + ": " + res[0].error);
    return g_cache.emplace(key, std::move(res[0])).first->second;
}

SimulationConfig cell_config(Model model, std::size_t K, std::size_t E) {
    SimulationConfig c;
    c.model = model;
    c.landscape.K = K;
    c.landscape.E = E;
    c.master_seed = kMasterSeed;
    return c;
}

std::vector<double> column(const CellResult& r, const Selector& sel, std::size_t iteration) {
    const auto units = unit_series(r.records, sel, r.cell.config.iterations);
    std::vector<double> out;
    for (const auto& row : units)
        if (!std::isnan(row[iteration - 1])) out.push_back(row[iteration - 1]);
    return out;
}

std::vector<double> mean_curve(const CellResult& r, const Selector& sel) {
    std::vector<double> out;
    for (const auto& p : aggregate(r.records, sel).points) out.push_back(p.summary.mean);
    return out;
}

const Selector kBestAll{Statistic::Best, RoleFilter::All, {}};
const Selector kMeanSearcher{Statistic::Mean, RoleFilter::Searcher, {}};
const Selector kMeanShaper{Statistic::Mean, RoleFilter::Shaper, {}};

Selector searchers_in(std::size_t size, std::size_t shapers) {
    return {Statistic::Mean, RoleFilter::Searcher, GroupComposition{size, shapers}};
}

// --- criteria ---------------------------------------------------------------

Outcome c1_fitness_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(0xC1);
    std::size_t pairs = 0;
    for (int cfg = 0; cfg < 20; ++cfg) {
        const std::size_t N = 1 + rng.below(6);
        const std::size_t K = rng.below(N);
        const std::size_t Z = rng.below(5);
        const std::size_t E = rng.below(Z + 1);
        const std::uint64_t seed = rng.next();
        const Landscape land({N, K, Z, E, seed});
        const oracle::Model ref(N, K, Z, E, seed);
        for (std::uint64_t gv = 0; gv < (1ULL << N); ++gv)
            for (std::uint64_t ev = 0; ev < (1ULL << Z); ++ev) {
                const double got = land.evaluate(SearchPolicy::from_uint(gv, N), ShapePolicy::from_uint(ev, Z));
                const double want = ref.fitness(oracle::bits_of(gv, N), oracle::bits_of(ev, Z));
                if (got != want)
                    return {false, fmt("mismatch N=%zu K=%zu Z=%zu E=%zu g=%llu e=%llu", N, K, Z, E,
                                       (unsigned long long)gv, (unsigned long long)ev)};
                ++pairs;
            }
    }
    const double secs = seconds_since(t0);
    return {secs < 10.0, fmt("%zu policy pairs exact over 20 configs, %.2fs (limit 10s)", pairs, secs)};
}

Outcome c2_worked_examples() {
    const std::uint8_t n1[] = {1, 1, 0};
    const std::uint8_t n2[] = {1, 0, 1};
    const std::uint8_t s2[] = {0, 1, 0};
    const auto a = pack_index(0, n1, {});
    const auto b = pack_index(0, n2, s2);
    return {a == 6 && b == 42, fmt("(0110)->%llu, (0101010)->%llu", (unsigned long long)a, (unsigned long long)b)};
}

Outcome c3_k0_convergence() {
    const auto t0 = std::chrono::steady_clock::now();
    auto c = cell_config(Model::Standard, 0, 0);
    c.beta = 0.0;
    const auto& r = run_cell("c3", c);
    std::size_t converged = 0;
    for (std::size_t run = 0; run < c.runs; ++run) {
        LandscapeConfig lc = c.landscape;
        lc.seed = derive_seeds(c.master_seed, run, c.model).landscape;
        const Landscape land(lc);
        const double opt = brute_force_optimum(land, ShapePolicy(lc.Z)).fitness;
        bool all = true;
        for (const auto& rec : r.records)
            if (rec.run == run && rec.iteration == c.iterations) all = all && rec.fitness == opt;
        converged += all;
    }
    const double share = static_cast<double>(converged) / static_cast<double>(c.runs);
    const double secs = seconds_since(t0);
    return {share >= 0.95 && secs < 30.0,
            fmt("%zu/%zu runs fully at the optimum (need >= 95%%), %.2fs (limit 30s)", converged, c.runs, secs)};
}

Outcome c4_stealthl_dominance() {
    bool ok = true;
    std::string detail;
    for (auto [K, E] : {std::pair<std::size_t, std::size_t>{5, 6}, {11, 12}}) {
        const auto& std_r = run_cell(fmt("std_K%zu_E%zu", K, E), cell_config(Model::Standard, K, E));
        const auto& stl_r = run_cell(fmt("stl_K%zu_E%zu", K, E), cell_config(Model::StealthL, K, E));
        const auto a = stats::summarize(column(stl_r, kBestAll, 100));
        const auto b = stats::summarize(column(std_r, kBestAll, 100));
        const bool cell_ok = a.mean > b.mean && a.mean - *a.ci95_half > b.mean + *b.ci95_half;
        ok = ok && cell_ok;
        detail += fmt("K%zu_E%zu stealthl %.4f+-%.4f vs standard %.4f+-%.4f; ", K, E, a.mean, *a.ci95_half, b.mean,
                      *b.ci95_half);
    }
    return {ok, detail};
}

Outcome c5_standard_at_k0() {
    const auto& std_r = run_cell("std_K0_E0", cell_config(Model::Standard, 0, 0));
    const auto& stl_r = run_cell("stl_K0_E0", cell_config(Model::StealthL, 0, 0));
    const auto a = column(std_r, kBestAll, 100);
    const auto b = column(stl_r, kBestAll, 100);
    const double ma = stats::mean(a), mb = stats::mean(b);
    // Standard >= StealthL: point estimate not below, and no significant
    // evidence for the opposite ordering.
    const double p_rev = stats::welch_greater_p(b, a);
    return {ma >= mb && p_rev >= kAlpha,
            fmt("standard %.4f vs stealthl %.4f, p(stealthl > standard) = %.3f", ma, mb, p_rev)};
}

std::size_t reach_iteration(const std::vector<double>& curve, double share) {
    const double target = share * curve.back();
    for (std::size_t t = 0; t < curve.size(); ++t)
        if (curve[t] >= target) return t + 1;
    return curve.size();
}

Outcome c6_learning_rate() {
    auto fast = cell_config(Model::StealthL, 11, 12);
    fast.alpha = 0.9;
    auto slow = cell_config(Model::StealthL, 11, 12);
    slow.alpha = 0.2;
    const auto& rf = run_cell("stl_K11_E12_a0.9", fast);
    const auto& rs = run_cell("stl_K11_E12", slow);
    const auto a = column(rf, kMeanSearcher, 100);
    const auto b = column(rs, kMeanSearcher, 100);
    const double p = stats::welch_greater_p(b, a);
    const auto tf = reach_iteration(mean_curve(rf, kMeanSearcher), 0.9);
    const auto ts = reach_iteration(mean_curve(rs, kMeanSearcher), 0.9);
    return {p < kAlpha && tf < ts,
            fmt("final searcher mean a0.9 %.4f vs a0.2 %.4f (p=%.4f); 90%% of final reached at t=%zu vs t=%zu",
                stats::mean(a), stats::mean(b), p, tf, ts)};
}

std::vector<double> shaper_gap(const CellResult& r) {
    const auto sh = column(r, kMeanShaper, 100);
    const auto se = column(r, kMeanSearcher, 100);
    std::vector<double> d(sh.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = sh[i] - se[i];
    return d;
}

Outcome c7_shaper_gap() {
    const auto& r5 = run_cell("std_K5_E6", cell_config(Model::Standard, 5, 6));
    const auto& r0 = run_cell("std_K0_E0", cell_config(Model::Standard, 0, 0));
    // Shapers and searchers share a run, so the comparison is paired by run.
    const auto g5 = shaper_gap(r5);
    const auto g0 = shaper_gap(r0);
    const double p = stats::one_sample_greater_p(g5, 0.0);
    const double m5 = stats::mean(g5), m0 = stats::mean(g0);
    return {p < kAlpha && m5 > m0, fmt("gap K5_E6 %.4f (p=%.4f) vs K0_E0 %.4f", m5, p, m0)};
}

const CellResult& structc_k11() { return run_cell("sc_K11_E12", cell_config(Model::StructC, 11, 12)); }

Outcome c8_lone_searcher() {
    const auto& r = structc_k11();
    const auto units = unit_series(r.records, searchers_in(1, 0), r.cell.config.iterations);
    std::vector<double> diff;
    for (const auto& row : units) diff.push_back(row.back() - row.front());
    const auto s = stats::summarize(diff);
    const double lo = s.mean - *s.ci95_half, hi = s.mean + *s.ci95_half;
    return {(lo <= 0.0 && hi >= 0.0) || hi < 0.02,
            fmt("final-initial %.4f, 95%% CI [%.4f, %.4f] over %zu appearances (need CI containing 0 or below 0.02)",
                s.mean, lo, hi, s.n)};
}

Outcome c9_scale_effect() {
    const auto& r = structc_k11();
    std::vector<double> means;
    std::string detail = "searcher means";
    for (std::size_t size = 1; size <= 4; ++size) {
        // A size-1 group with one shaper has no searcher; the lone searcher
        // (size 1, no shapers) stands in for size 1.
        const std::size_t shapers = size == 1 ? 0 : 1;
        means.push_back(stats::mean(column(r, searchers_in(size, shapers), 100)));
        detail += fmt(" g%zus%zu=%.4f", size, shapers, means.back());
    }
    bool mono = true;
    for (std::size_t i = 1; i < means.size(); ++i) mono = mono && means[i] >= means[i - 1];
    const auto a = column(r, searchers_in(4, 3), 100);
    const auto b = column(r, searchers_in(4, 0), 100);
    const double p = stats::welch_greater_p(a, b);
    detail += fmt("; g4s3 %.4f vs g4s0 %.4f p=%.4f", stats::mean(a), stats::mean(b), p);
    return {mono && p < kAlpha, detail};
}

// Each property returns an empty string on success.
std::string prop_memory(Rng& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        MemoryDB db(1 + rng.below(10));
        double floor = -1.0;
        for (int k = 0; k < 500; ++k) {
            db.memorize({SearchPolicy::random(6, rng), ShapePolicy::random(3, rng), rng.uniform01()});
            if (db.size() > db.capacity()) return "memory over capacity";
            std::set<ShapePolicy> shapes;
            for (const auto& e : db.entries()) shapes.insert(e.e);
            if (shapes.size() != db.size()) return "duplicate shape in memory";
            if (db.size() == db.capacity()) {
                if (db.worst()->fitness < floor) return "memory worst decreased";
                floor = db.worst()->fitness;
            }
        }
    }
    return {};
}

std::string prop_epsilon(Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const double gamma = 0.5 + 0.49 * rng.uniform01();
        EpsilonSchedule s(1.0, gamma);
        for (int t = 1; t <= 500; ++t) {
            s.decay();
            if (std::abs(s.epsilon() - std::pow(gamma, t)) > 1e-12 * std::pow(gamma, t)) return "epsilon != gamma^t";
        }
    }
    return {};
}

std::string prop_clamp(Rng& rng) {
    for (int trial = 0; trial < 200; ++trial) {
        auto p = GuidingVector::random(12, rng);
        for (int k = 0; k < 200; ++k) {
            p = learn_towards(std::move(p), SearchPolicy::random(12, rng), rng.uniform01());
            for (double v : p.p)
                if (v < kProbFloor || v > kProbCeil) return "guiding vector escaped [0.05, 0.95]";
        }
    }
    return {};
}

std::string prop_single_bit(Rng& rng) {
    std::string err;
    auto check = [&](const TurnEvent& ev) {
        if (ev.move == Move::Search && (ev.g_before.hamming(ev.g_after) != 1 || ev.e_before != ev.e_after))
            err = "search move was not a single search-bit change";
        if (ev.move == Move::Shape && (ev.e_before.hamming(ev.e_after) != 1 || ev.g_before != ev.g_after))
            err = "shape move was not a single shape-bit change";
        if (ev.move == Move::None && (ev.g_before != ev.g_after || ev.e_before != ev.e_after))
            err = "rejected move changed policies";
    };
    for (int trial = 0; trial < 10; ++trial) {
        const Landscape land({12, rng.below(12), 12, rng.below(13), rng.next()});
        auto pop = init_population(10, 0.5, land, rng);
        for (int t = 0; t < 50; ++t) run_iteration_standard(pop, land, rng, check);

        auto groups = form_groups(10, 4, {}, 50, rng);
        auto sc = init_population(groups.roles(), land, rng);
        init_guides(sc, rng);
        EpsilonSchedule s(1.0, 0.9); // reaches exploitation quickly
        for (int t = 0; t < 50; ++t)
            structc_iteration(sc, groups, land, s, 0.2, rng, {}, [&](const TurnEvent& ev) {
                if (ev.move != Move::Memory) check(ev);
            });
        if (!err.empty()) return err;
    }
    return {};
}

std::string prop_partition(Rng& rng) {
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t M = 1 + rng.below(30);
        const std::size_t omega = 1 + rng.below(6);
        const auto gs = form_groups(M, omega, {}, 50, rng);
        std::vector<int> hits(M, 0);
        for (const auto& g : gs.groups) {
            if (g.members.size() != g.composition.size || g.members.empty() || g.members.size() > omega)
                return "group size mismatch";
            for (auto m : g.members) {
                ++hits[m];
                if (gs.group_of[m] != g.id) return "group_of disagrees with membership";
            }
        }
        for (int h : hits)
            if (h != 1) return "firm not in exactly one group";
    }
    return {};
}

std::string prop_records_and_reruns(Rng& rng) {
    for (auto model : {Model::Standard, Model::StealthL, Model::StructC}) {
        SimulationConfig c;
        c.model = model;
        c.landscape = {10, 1 + rng.below(9), 8, rng.below(9), 0};
        c.iterations = 15;
        c.runs = model == Model::StructC ? 1 : 4;
        c.master_seed = rng.next();
        const std::vector<Cell> cells = {{"a", c}};
        const auto r1 = run_experiment(cells, 1);
        const auto r2 = run_experiment(cells, 0);
        if (r1[0].records.size() != r1[0].replications * c.iterations * c.M) return "record count mismatch";
        if (r1[0].records.size() != r2[0].records.size()) return "rerun record count differs";
        for (std::size_t i = 0; i < r1[0].records.size(); ++i)
            if (r1[0].records[i].fitness != r2[0].records[i].fitness ||
                r1[0].records[i].firm_id != r2[0].records[i].firm_id)
                return "rerun not bit-identical";
    }
    return {};
}

Outcome c10_invariants() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::pair<const char*, std::function<std::string(Rng&)>>> props = {
        {"memory", prop_memory},         {"epsilon", prop_epsilon},     {"clamp", prop_clamp},
        {"single-bit", prop_single_bit}, {"partition", prop_partition}, {"records+reruns", prop_records_and_reruns},
    };
    std::string failures;
    for (std::size_t k = 0; k < props.size(); ++k) {
        Rng rng(mix_seed(0xC10, k));
        const auto err = props[k].second(rng);
        if (!err.empty()) failures += std::string(props[k].first) + ": " + err + "; ";
    }
    const double secs = seconds_since(t0);
    return {failures.empty() && secs < 60.0,
            fmt("%zu properties, %s%.2fs (limit 60s)", props.size(), failures.empty() ? "all hold, " : failures.c_str(),
                secs)};
}

Outcome c11_local_optima() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> avg;
    std::string detail = "mean optima";
    for (std::size_t K : {0, 3, 6, 9}) {
        double sum = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            sum += static_cast<double>(count_local_optima(Landscape({10, K, 0, 0, seed}), ShapePolicy{}));
        avg.push_back(sum / 20.0);
        detail += fmt(" K%zu=%.2f", K, avg.back());
    }
    bool mono = true;
    for (std::size_t i = 1; i < avg.size(); ++i) mono = mono && avg[i] >= avg[i - 1];
    const double secs = seconds_since(t0);
    return {mono && secs < 60.0, detail + fmt(", %.2fs", secs)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"fitness oracle equivalence", c1_fitness_oracle},
        {"worked-example packing", c2_worked_examples},
        {"K=0 convergence", c3_k0_convergence},
        {"StealthL dominance on rugged landscapes", c4_stealthl_dominance},
        {"Standard advantage at K=0", c5_standard_at_k0},
        {"learning-rate effect", c6_learning_rate},
        {"shaper-searcher gap", c7_shaper_gap},
        {"StructC lone-searcher stagnation", c8_lone_searcher},
        {"StructC scale effect", c9_scale_effect},
        {"structural invariants", c10_invariants},
        {"local-optima trend", c11_local_optima},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        failed += !o.pass;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed;
}
