#pragma once

#include "nkze/landscape.hpp"
#include "nkze/population.hpp"
#include "nkze/stats.hpp"
#include "nkze/structc.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nkze {

enum class Model : std::uint8_t { Standard = 0, StealthL = 1, StructC = 2 };

std::string_view to_string(Model model);
/// Accepts "standard", "stealthl", "structc" (case-insensitive).
Model parse_model(std::string_view name);

/// One simulation cell. Defaults are the reference parameter settings.
struct SimulationConfig {
    Model model = Model::Standard;
    LandscapeConfig landscape{12, 0, 12, 0, 0}; ///< seed is replaced per run
    std::size_t M = 10;
    double beta = 0.5;
    double alpha = 0.2;
    std::size_t theta = 50;
    double epsilon0 = 1.0;
    double gamma = 0.999;
    std::size_t omega_max = 4;
    std::size_t iterations = 100;
    /// Replications; for balanced StructC cells, appearances per composition.
    std::size_t runs = 50;
    std::uint64_t master_seed = 0;
    /// Explicit StructC group layout used for every run.
    std::vector<GroupComposition> compositions;
    /// StructC without explicit compositions: schedule a balanced set of
    /// layouts so each composition appears `runs` times. Otherwise layouts are
    /// sampled at random per run.
    bool balanced = true;
    /// StructC restricted-mutation rule.
    MutationRule mutation = MutationRule::Flip;

    void validate() const;
};

struct SeedPair {
    std::uint64_t landscape;
    std::uint64_t dynamics;
};

/// The landscape seed depends only on (master_seed, run_index), so every model
/// sees the same landscape for the same run.
SeedPair derive_seeds(std::uint64_t master_seed, std::uint64_t run_index, Model model);

/// End-of-iteration fitness of one firm.
struct FirmRecord {
    std::uint32_t run = 0;
    std::uint32_t iteration = 0; ///< 1-based
    std::uint32_t firm_id = 0;
    Role role = Role::Searcher;
    std::int32_t group_id = -1; ///< -1 outside StructC
    std::uint16_t group_size = 0;
    std::uint16_t group_shapers = 0;
    double fitness = 0.0;
};

/// Runs one replication. `layout` overrides the StructC group layout for this
/// run only. Records are ordered by (iteration, firm_id).
std::vector<FirmRecord> run_replication(const SimulationConfig& config, std::size_t run_index,
                                        std::span<const GroupComposition> layout = {});

/// Group layouts per replication for a StructC cell; empty for other models or
/// when the layout comes from `compositions` or random sampling.
std::vector<std::vector<GroupComposition>> replication_layouts(const SimulationConfig& config);

/// Number of replications a cell will execute.
std::size_t replication_count(const SimulationConfig& config);

// --- aggregation ----------------------------------------------------------

enum class Statistic : std::uint8_t { Best, Mean };
enum class RoleFilter : std::uint8_t { All, Searcher, Shaper };

/// Which per-iteration statistic to average. Role selectors use one sample
/// per run; composition selectors use one sample per group appearance.
struct Selector {
    Statistic stat = Statistic::Best;
    RoleFilter role = RoleFilter::All;
    std::optional<GroupComposition> composition;

    std::string name() const;
};

struct AggregatePoint {
    std::size_t iteration = 0;
    stats::Summary summary;
};

struct AggregateSeries {
    std::string selector;
    std::vector<AggregatePoint> points; ///< iterations with at least one sample
};

AggregateSeries aggregate(std::span<const FirmRecord> records, const Selector& selector);

/// Per-unit statistic at every iteration: rows indexed by unit (run or group
/// appearance), columns by iteration-1. Units without matching firms are
/// dropped.
std::vector<std::vector<double>> unit_series(std::span<const FirmRecord> records, const Selector& selector,
                                             std::size_t iterations);

/// The selectors emitted for a cell of the given model.
std::vector<Selector> default_selectors(Model model, std::size_t omega_max);

// --- experiments ------------------------------------------------------------

struct Cell {
    std::string id;
    SimulationConfig config;
};

struct CellResult {
    Cell cell;
    std::size_t replications = 0;
    std::vector<FirmRecord> records; ///< ordered by (run, iteration, firm_id)
    std::vector<AggregateSeries> aggregates;
    std::string error; ///< non-empty when the cell aborted
};

/// Runs every cell, replications in parallel over up to `jobs` threads
/// (0 = hardware concurrency). Output does not depend on `jobs`.
std::vector<CellResult> run_experiment(std::span<const Cell> cells, std::size_t jobs = 1);

} // namespace nkze
