#include "nkze/structc.hpp"

#include "nkze/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nkze {

namespace {

// Two flip probabilities closer than this are treated as tied; clamped values
// reach 0.05/0.95 through different arithmetic paths.
constexpr double kTieTolerance = 1e-12;

// Depth-first search for a multiset of sizes (largest first) that sums to
// exactly `remaining`, drawing from `counts`. Chosen sizes are appended.
bool fill_bin(std::vector<std::size_t>& counts, std::size_t remaining, std::size_t max_size,
              std::vector<std::size_t>& chosen) {
    if (remaining == 0) return true;
    for (std::size_t s = std::min(max_size, remaining); s >= 1; --s) {
        if (counts[s] == 0) continue;
        --counts[s];
        chosen.push_back(s);
        if (fill_bin(counts, remaining - s, s, chosen)) return true;
        chosen.pop_back();
        ++counts[s];
    }
    return false;
}

} // namespace

std::string GroupComposition::label() const { return "g" + std::to_string(size) + "s" + std::to_string(shapers); }

std::vector<GroupComposition> enumerate_compositions(std::size_t omega_max) {
    std::vector<GroupComposition> out;
    for (std::size_t size = 1; size <= omega_max; ++size)
        for (std::size_t shapers = 0; shapers <= size; ++shapers) out.push_back({size, shapers});
    return out;
}

std::vector<GroupComposition> parse_compositions(const std::string& text) {
    std::vector<GroupComposition> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("group composition '" + item + "' must be size:shapers");
        try {
            std::size_t used = 0;
            const std::string lhs = item.substr(0, colon), rhs = item.substr(colon + 1);
            const auto size = std::stoul(lhs, &used);
            if (used != lhs.size()) throw std::invalid_argument(lhs);
            const auto shapers = std::stoul(rhs, &used);
            if (used != rhs.size()) throw std::invalid_argument(rhs);
            out.push_back({size, shapers});
        } catch (const std::logic_error&) {
            throw ConfigError("group composition '" + item + "' must be size:shapers with integer fields");
        }
    }
    return out;
}

std::string format_compositions(std::span<const GroupComposition> comps) {
    std::string out;
    for (const auto& c : comps) {
        if (!out.empty()) out += ',';
        out += std::to_string(c.size) + ":" + std::to_string(c.shapers);
    }
    return out;
}

std::vector<Role> GroupSet::roles() const {
    std::vector<Role> roles(group_of.size(), Role::Searcher);
    for (const auto& g : groups)
        for (std::size_t k = 0; k < g.composition.shapers; ++k) roles[g.members[k]] = Role::Shaper;
    return roles;
}

GroupSet form_groups(std::size_t M, std::size_t omega_max, std::span<const GroupComposition> compositions,
                     std::size_t theta, Rng& rng) {
    if (M < 1) throw ConfigError("M must be >= 1");
    if (omega_max < 1) throw ConfigError("omega_max must be >= 1");

    std::vector<GroupComposition> layout;
    if (!compositions.empty()) {
        std::size_t total = 0;
        for (const auto& c : compositions) {
            if (c.size < 1 || c.size > omega_max)
                throw ConfigError("group size must lie in [1, omega_max=" + std::to_string(omega_max) + "] (got " +
                                  std::to_string(c.size) + ")");
            if (c.shapers > c.size)
                throw ConfigError("group shaper count " + std::to_string(c.shapers) + " exceeds group size " +
                                  std::to_string(c.size));
            total += c.size;
        }
        if (total != M)
            throw ConfigError("group sizes must sum to M=" + std::to_string(M) + " (got " + std::to_string(total) +
                              ")");
        layout.assign(compositions.begin(), compositions.end());
    } else {
        std::size_t placed = 0;
        while (placed < M) {
            std::size_t size = 1 + static_cast<std::size_t>(rng.below(omega_max));
            size = std::min(size, M - placed);
            const auto shapers = static_cast<std::size_t>(rng.below(size + 1));
            layout.push_back({size, shapers});
            placed += size;
        }
    }

    std::vector<std::size_t> ids(M);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    rng.shuffle(std::span(ids));

    GroupSet out;
    out.group_of.assign(M, 0);
    std::size_t next = 0;
    for (std::size_t gi = 0; gi < layout.size(); ++gi) {
        Group g{gi, layout[gi], {}, MemoryDB(theta)};
        for (std::size_t k = 0; k < layout[gi].size; ++k) {
            const auto id = ids[next++];
            g.members.push_back(id);
            out.group_of[id] = gi;
        }
        out.groups.push_back(std::move(g));
    }
    return out;
}

std::string_view to_string(MutationRule rule) { return rule == MutationRule::Sample ? "sample" : "flip"; }

MutationRule parse_mutation_rule(std::string_view name) {
    if (name == "flip") return MutationRule::Flip;
    if (name == "sample") return MutationRule::Sample;
    throw ConfigError("mutation must be flip or sample (got '" + std::string(name) + "')");
}

SearchPolicy restricted_mutation(const GuidingVector& guide, const SearchPolicy& g, Rng& rng, MutationRule rule) {
    if (guide.size() != g.size() || g.empty()) throw std::logic_error("restricted_mutation: length mismatch");
    std::vector<double> q(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) q[i] = g[i] ? 1.0 - guide.p[i] : guide.p[i];
    const double top = *std::max_element(q.begin(), q.end());
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (top - q[i] <= kTieTolerance) tied.push_back(i);
    const auto pick = tied.size() == 1 ? tied.front() : tied[static_cast<std::size_t>(rng.below(tied.size()))];
    if (rule == MutationRule::Flip) return g.flipped(pick);
    SearchPolicy out = g;
    out.set(pick, rng.uniform01() < guide.p[pick]);
    return out;
}

std::size_t group_best(const Group& group, const Population& population) {
    std::size_t best = group.members.front();
    for (auto idx : group.members) {
        const auto& f = population.firms[idx];
        const auto& b = population.firms[best];
        if (f.fitness > b.fitness || (f.fitness == b.fitness && f.id < b.id)) best = idx;
    }
    return best;
}

Move structc_firm_turn(Population& population, std::size_t firm, const Group& group, const Landscape& landscape,
                       double epsilon, double alpha, Rng& rng, MutationRule rule) {
    if (exploit_decision(epsilon, rng) && adopt_from_memory(population, firm, group.memory, landscape))
        return Move::Memory;

    const SearchPolicy target = population.firms[group_best(group, population)].g;
    Firm& f = population.firms[firm];
    f.guide = learn_towards(std::move(f.guide), target, alpha);
    SearchPolicy candidate = restricted_mutation(f.guide, f.g, rng, rule);
    return explore_with_candidate(population, firm, landscape, std::move(candidate), rng);
}

void structc_iteration(Population& population, GroupSet& groups, const Landscape& landscape,
                       EpsilonSchedule& schedule, double alpha, Rng& rng, std::span<Rng> group_rngs,
                       const TurnObserver& observer, MutationRule rule) {
    if (!group_rngs.empty() && group_rngs.size() != groups.groups.size())
        throw std::logic_error("structc_iteration: one rng stream per group required");
    const double epsilon = schedule.epsilon();
    for (auto idx : turn_order(population.size(), rng)) {
        const auto gi = groups.group_of[idx];
        Rng& stream = group_rngs.empty() ? rng : group_rngs[gi];
        observed_turn(population, idx, observer, [&] {
            return structc_firm_turn(population, idx, groups.groups[gi], landscape, epsilon, alpha, stream, rule);
        });
    }
    for (auto& g : groups.groups) {
        const Firm& elite = population.firms[group_best(g, population)];
        g.memory.memorize({elite.g, population.shape, elite.fitness});
    }
    schedule.decay();
}

std::vector<std::vector<GroupComposition>> balanced_schedule(std::size_t M, std::size_t omega_max,
                                                             std::size_t appearances, std::uint64_t seed) {
    if (M < 1 || omega_max < 1 || appearances < 1)
        throw ConfigError("balanced schedule needs M, omega_max and appearances >= 1");
    if (omega_max > M) throw ConfigError("omega_max must be <= M for a balanced schedule");

    const auto comps = enumerate_compositions(omega_max);
    std::vector<std::size_t> counts(omega_max + 1, 0);
    std::size_t firms = 0;
    for (const auto& c : comps) {
        counts[c.size] += appearances;
        firms += c.size * appearances;
    }
    if (firms % M != 0)
        throw ConfigError("balanced schedule: " + std::to_string(firms) + " firm slots do not divide into populations of M=" +
                          std::to_string(M));

    std::vector<std::vector<std::size_t>> bins;
    for (std::size_t b = 0; b < firms / M; ++b) {
        std::vector<std::size_t> chosen;
        if (!fill_bin(counts, M, omega_max, chosen))
            throw ConfigError("balanced schedule: cannot pack group sizes into populations of M=" + std::to_string(M));
        bins.push_back(std::move(chosen));
    }

    Rng rng(mix_seed(seed, 0x42414C414E4345ULL)); // "BALANCE"
    std::vector<std::vector<GroupComposition>> by_size(omega_max + 1);
    for (const auto& c : comps)
        for (std::size_t k = 0; k < appearances; ++k) by_size[c.size].push_back(c);
    for (auto& pool : by_size) rng.shuffle(std::span(pool));

    std::vector<std::vector<GroupComposition>> schedule;
    schedule.reserve(bins.size());
    for (const auto& bin : bins) {
        std::vector<GroupComposition> layout;
        for (auto s : bin) {
            layout.push_back(by_size[s].back());
            by_size[s].pop_back();
        }
        rng.shuffle(std::span(layout));
        schedule.push_back(std::move(layout));
    }
    rng.shuffle(std::span(schedule));
    return schedule;
}

} // namespace nkze
