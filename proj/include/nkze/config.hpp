#pragma once

#include "nkze/engine.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nkze {

/// A resolved experiment: the grid of cells to run.
struct ExperimentSpec {
    std::vector<Cell> cells;
};

// Config grammar (plain text, one setting per line):
//
//   # comment            ; comment
//   key = value          top-level settings apply to every cell
//   [cell_name]          starts a cell; following keys override the top level
//
// Without any [section] the file describes a single cell named "default".
// Keys: model N K Z E M beta alpha theta epsilon0 gamma omega_max iterations
//       runs seed groups balanced mutation
// `groups` is a StructC layout such as "4:3,3:1,2:0,1:1".

/// Applies one `key = value` setting; throws ConfigError naming the key.
void apply_setting(SimulationConfig& config, std::string_view key, std::string_view value);

/// Parses config text, then applies `overrides` ("key=value") to every cell.
/// Every cell is validated before returning.
ExperimentSpec parse_config_text(std::string_view text, std::span<const std::string> overrides = {});

/// Reads and parses a config file. Throws ConfigError when unreadable.
ExperimentSpec parse_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

/// Cells reproducing one figure: fig1 ... fig5.
ExperimentSpec preset(std::string_view name, std::span<const std::string> overrides = {});

/// Learning rates swept by the fig2/fig3 presets.
std::vector<double> preset_alpha_sweep();

} // namespace nkze
