#include "nkze/engine.hpp"

#include "nkze/error.hpp"
#include "nkze/standard.hpp"
#include "nkze/stealthl.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace nkze {

namespace {

constexpr std::uint64_t kLandscapeStream = 0x4C414E44ULL; // "LAND"
constexpr std::uint64_t kDynamicsStream = 0x44594E41ULL;  // "DYNA"

void record_iteration(std::vector<FirmRecord>& out, const Population& pop, const GroupSet* groups,
                      std::uint32_t run, std::uint32_t iteration) {
    for (const auto& f : pop.firms) {
        FirmRecord r;
        r.run = run;
        r.iteration = iteration;
        r.firm_id = static_cast<std::uint32_t>(f.id);
        r.role = f.role;
        if (groups != nullptr) {
            const auto& g = groups->groups[groups->group_of[f.id]];
            r.group_id = static_cast<std::int32_t>(g.id);
            r.group_size = static_cast<std::uint16_t>(g.composition.size);
            r.group_shapers = static_cast<std::uint16_t>(g.composition.shapers);
        }
        r.fitness = f.fitness;
        out.push_back(r);
    }
}

bool role_matches(RoleFilter filter, Role role) {
    switch (filter) {
    case RoleFilter::All: return true;
    case RoleFilter::Searcher: return role == Role::Searcher;
    case RoleFilter::Shaper: return role == Role::Shaper;
    }
    return false;
}

} // namespace

std::string_view to_string(Model model) {
    switch (model) {
    case Model::Standard: return "standard";
    case Model::StealthL: return "stealthl";
    case Model::StructC: return "structc";
    }
    return "unknown";
}

Model parse_model(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "standard") return Model::Standard;
    if (lower == "stealthl") return Model::StealthL;
    if (lower == "structc") return Model::StructC;
    throw ConfigError("model must be one of standard, stealthl, structc (got '" + std::string(name) + "')");
}

void SimulationConfig::validate() const {
    landscape.validate();
    if (M < 1) throw ConfigError("M must be >= 1");
    if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0,1]");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0,1]");
    if (theta < 1) throw ConfigError("theta must be >= 1");
    if (!(epsilon0 >= 0.0 && epsilon0 <= 1.0)) throw ConfigError("epsilon0 must lie in [0,1]");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0,1)");
    if (omega_max < 1) throw ConfigError("omega_max must be >= 1");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (model == Model::StructC && !compositions.empty()) {
        Rng probe(0);
        (void)form_groups(M, omega_max, compositions, theta, probe);
    }
}

SeedPair derive_seeds(std::uint64_t master_seed, std::uint64_t run_index, Model model) {
    const std::uint64_t run_key = mix_seed(master_seed, run_index);
    return {mix_seed(run_key, kLandscapeStream),
            mix_seed(mix_seed(run_key, kDynamicsStream), static_cast<std::uint64_t>(model))};
}

std::vector<FirmRecord> run_replication(const SimulationConfig& config, std::size_t run_index,
                                        std::span<const GroupComposition> layout) {
    config.validate();
    const auto seeds = derive_seeds(config.master_seed, run_index, config.model);
    LandscapeConfig lc = config.landscape;
    lc.seed = seeds.landscape;
    const Landscape landscape(lc);
    Rng rng(seeds.dynamics);

    const auto run = static_cast<std::uint32_t>(run_index);
    std::vector<FirmRecord> records;
    records.reserve(config.iterations * config.M);

    switch (config.model) {
    case Model::Standard: {
        Population pop = init_population(config.M, config.beta, landscape, rng);
        for (std::size_t t = 1; t <= config.iterations; ++t) {
            run_iteration_standard(pop, landscape, rng);
            record_iteration(records, pop, nullptr, run, static_cast<std::uint32_t>(t));
        }
        break;
    }
    case Model::StealthL: {
        Population pop = init_population(config.M, config.beta, landscape, rng);
        init_guides(pop, rng);
        MemoryDB db(config.theta);
        EpsilonSchedule schedule(config.epsilon0, config.gamma);
        for (std::size_t t = 1; t <= config.iterations; ++t) {
            stealthl_iteration(pop, landscape, db, schedule, config.alpha, rng);
            record_iteration(records, pop, nullptr, run, static_cast<std::uint32_t>(t));
        }
        break;
    }
    case Model::StructC: {
        const auto comps = layout.empty() ? std::span<const GroupComposition>(config.compositions) : layout;
        GroupSet groups = form_groups(config.M, config.omega_max, comps, config.theta, rng);
        const auto roles = groups.roles();
        Population pop = init_population(roles, landscape, rng);
        init_guides(pop, rng);
        EpsilonSchedule schedule(config.epsilon0, config.gamma);
        for (std::size_t t = 1; t <= config.iterations; ++t) {
            structc_iteration(pop, groups, landscape, schedule, config.alpha, rng, {}, {}, config.mutation);
            record_iteration(records, pop, &groups, run, static_cast<std::uint32_t>(t));
        }
        break;
    }
    }
    return records;
}

std::vector<std::vector<GroupComposition>> replication_layouts(const SimulationConfig& config) {
    if (config.model != Model::StructC || !config.compositions.empty() || !config.balanced) return {};
    return balanced_schedule(config.M, config.omega_max, config.runs, config.master_seed);
}

std::size_t replication_count(const SimulationConfig& config) {
    const auto layouts = replication_layouts(config);
    return layouts.empty() ? config.runs : layouts.size();
}

// --- aggregation ----------------------------------------------------------

std::string Selector::name() const {
    std::string out;
    if (composition) out = composition->label() + "_";
    out += stat == Statistic::Best ? "best_" : "mean_";
    switch (role) {
    case RoleFilter::All: out += "all"; break;
    case RoleFilter::Searcher: out += "searcher"; break;
    case RoleFilter::Shaper: out += "shaper"; break;
    }
    return out;
}

std::vector<std::vector<double>> unit_series(std::span<const FirmRecord> records, const Selector& selector,
                                             std::size_t iterations) {
    struct Acc {
        double sum = 0.0;
        double best = 0.0;
        std::size_t count = 0;
    };
    std::map<std::pair<std::uint32_t, std::int32_t>, std::vector<Acc>> units;
    for (const auto& r : records) {
        if (!role_matches(selector.role, r.role)) continue;
        if (selector.composition) {
            if (r.group_id < 0 || r.group_size != selector.composition->size ||
                r.group_shapers != selector.composition->shapers)
                continue;
        }
        if (r.iteration < 1 || r.iteration > iterations) continue;
        const std::int32_t sub = selector.composition ? r.group_id : -1;
        auto& series = units[{r.run, sub}];
        if (series.empty()) series.resize(iterations);
        auto& acc = series[r.iteration - 1];
        acc.best = acc.count == 0 ? r.fitness : std::max(acc.best, r.fitness);
        acc.sum += r.fitness;
        ++acc.count;
    }
    std::vector<std::vector<double>> out;
    out.reserve(units.size());
    for (const auto& [key, series] : units) {
        std::vector<double> row(iterations);
        for (std::size_t t = 0; t < iterations; ++t) {
            const auto& acc = series[t];
            row[t] = acc.count == 0 ? std::numeric_limits<double>::quiet_NaN()
                     : selector.stat == Statistic::Best ? acc.best
                                                        : acc.sum / static_cast<double>(acc.count);
        }
        out.push_back(std::move(row));
    }
    return out;
}

AggregateSeries aggregate(std::span<const FirmRecord> records, const Selector& selector) {
    std::size_t iterations = 0;
    for (const auto& r : records) iterations = std::max<std::size_t>(iterations, r.iteration);
    const auto units = unit_series(records, selector, iterations);

    AggregateSeries out;
    out.selector = selector.name();
    std::vector<double> samples;
    for (std::size_t t = 0; t < iterations; ++t) {
        samples.clear();
        for (const auto& row : units)
            if (!std::isnan(row[t])) samples.push_back(row[t]);
        if (samples.empty()) continue;
        out.points.push_back({t + 1, stats::summarize(samples)});
    }
    return out;
}

std::vector<Selector> default_selectors(Model model, std::size_t omega_max) {
    std::vector<Selector> out;
    for (auto stat : {Statistic::Best, Statistic::Mean})
        for (auto role : {RoleFilter::All, RoleFilter::Searcher, RoleFilter::Shaper}) out.push_back({stat, role, {}});
    if (model == Model::StructC) {
        for (const auto& c : enumerate_compositions(omega_max)) {
            if (c.searchers() > 0) out.push_back({Statistic::Mean, RoleFilter::Searcher, c});
            if (c.shapers > 0) out.push_back({Statistic::Mean, RoleFilter::Shaper, c});
        }
    }
    return out;
}

// --- experiments ------------------------------------------------------------

std::vector<CellResult> run_experiment(std::span<const Cell> cells, std::size_t jobs) {
    struct Task {
        std::size_t cell;
        std::size_t run;
    };
    std::vector<CellResult> results(cells.size());
    std::vector<std::vector<std::vector<GroupComposition>>> layouts(cells.size());
    std::vector<std::vector<std::vector<FirmRecord>>> fragments(cells.size());
    std::vector<Task> tasks;

    for (std::size_t c = 0; c < cells.size(); ++c) {
        results[c].cell = cells[c];
        try {
            cells[c].config.validate();
            layouts[c] = replication_layouts(cells[c].config);
            results[c].replications = layouts[c].empty() ? cells[c].config.runs : layouts[c].size();
        } catch (const std::exception& ex) {
            results[c].error = ex.what();
            continue;
        }
        fragments[c].resize(results[c].replications);
        for (std::size_t r = 0; r < results[c].replications; ++r) tasks.push_back({c, r});
    }

    std::mutex error_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto [c, r] = tasks[i];
            {
                std::lock_guard lock(error_mutex);
                if (!results[c].error.empty()) continue;
            }
            try {
                const auto layout = layouts[c].empty() ? std::span<const GroupComposition>{}
                                                       : std::span<const GroupComposition>(layouts[c][r]);
                fragments[c][r] = run_replication(cells[c].config, r, layout);
            } catch (const std::exception& ex) {
                std::lock_guard lock(error_mutex);
                if (results[c].error.empty())
                    results[c].error = "run " + std::to_string(r) + ": " + ex.what();
            }
        }
    };

    if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min(jobs, std::max<std::size_t>(tasks.size(), 1));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    for (std::size_t c = 0; c < cells.size(); ++c) {
        auto& res = results[c];
        if (!res.error.empty()) continue;
        for (auto& frag : fragments[c]) {
            res.records.insert(res.records.end(), frag.begin(), frag.end());
            std::vector<FirmRecord>().swap(frag);
        }
        for (const auto& sel : default_selectors(res.cell.config.model, res.cell.config.omega_max)) {
            auto series = aggregate(res.records, sel);
            if (!series.points.empty()) res.aggregates.push_back(std::move(series));
        }
    }
    return results;
}

} // namespace nkze
