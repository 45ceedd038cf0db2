#pragma once

#include "nkze/guide.hpp"
#include "nkze/landscape.hpp"
#include "nkze/memory.hpp"
#include "nkze/population.hpp"
#include "nkze/rng.hpp"
#include "nkze/stealthl.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nkze {

struct GroupComposition {
    std::size_t size = 1;
    std::size_t shapers = 0;

    std::size_t searchers() const noexcept { return size - shapers; }
    double beta() const noexcept { return static_cast<double>(shapers) / static_cast<double>(size); }
    std::string label() const; ///< e.g. "g4s1"

    friend auto operator<=>(const GroupComposition&, const GroupComposition&) = default;
};

/// Every (size, shaper count) pair with 1 <= size <= omega_max, ordered by size
/// then shaper count. 14 entries for omega_max = 4.
std::vector<GroupComposition> enumerate_compositions(std::size_t omega_max);

/// Parses "4:3,3:1,2:0" into compositions; throws ConfigError.
std::vector<GroupComposition> parse_compositions(const std::string& text);
std::string format_compositions(std::span<const GroupComposition> comps);

struct Group {
    std::size_t id = 0;
    GroupComposition composition;
    std::vector<std::size_t> members; ///< firm indices; shapers first
    MemoryDB memory;
};

/// A partition of the population into collaboration groups.
struct GroupSet {
    std::vector<Group> groups;
    std::vector<std::size_t> group_of; ///< firm index -> group index

    /// Roles implied by the compositions.
    std::vector<Role> roles() const;
};

/// Explicit compositions (sizes must sum to M, each size <= omega_max) or,
/// when `compositions` is empty, random sizes in [1, omega_max] with the last
/// group truncated and a uniform shaper count per group. Firm ids are
/// assigned to groups through a shuffle.
GroupSet form_groups(std::size_t M, std::size_t omega_max, std::span<const GroupComposition> compositions,
                     std::size_t theta, Rng& rng);

/// How the selected bit changes under restricted mutation.
enum class MutationRule : std::uint8_t {
    Flip,   ///< the selected bit always flips
    Sample, ///< the selected bit is redrawn from p_i and may stay unchanged
};

std::string_view to_string(MutationRule rule);
MutationRule parse_mutation_rule(std::string_view name);

/// Select the bit with the highest chance of changing value (p_i for a 0 bit,
/// 1 - p_i for a 1 bit), ties broken uniformly at random, and mutate only that
/// bit according to `rule`.
SearchPolicy restricted_mutation(const GuidingVector& guide, const SearchPolicy& g, Rng& rng,
                                 MutationRule rule = MutationRule::Flip);

/// Fittest member, lowest id on ties.
std::size_t group_best(const Group& group, const Population& population);

/// One StructC turn for `firm`, scoped to its group.
Move structc_firm_turn(Population& population, std::size_t firm, const Group& group, const Landscape& landscape,
                       double epsilon, double alpha, Rng& rng, MutationRule rule = MutationRule::Flip);

/// StealthL iteration restricted to groups. Turn order always comes from
/// `rng`; when `group_rngs` is non-empty each firm's own draws come from its
/// group's stream instead.
void structc_iteration(Population& population, GroupSet& groups, const Landscape& landscape,
                       EpsilonSchedule& schedule, double alpha, Rng& rng, std::span<Rng> group_rngs = {},
                       const TurnObserver& observer = {}, MutationRule rule = MutationRule::Flip);

/// Packs `appearances` copies of every composition into populations of
/// exactly M firms. Each inner vector is one replication's group layout.
/// Throws ConfigError when the total firm count is not a multiple of M.
std::vector<std::vector<GroupComposition>> balanced_schedule(std::size_t M, std::size_t omega_max,
                                                             std::size_t appearances, std::uint64_t seed);

} // namespace nkze
