#pragma once

#include "nkze/engine.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace nkze::io {

inline constexpr const char* kRawHeader =
    "model,cell_id,run,iteration,firm_id,role,group_id,group_size,group_shapers,fitness";
inline constexpr const char* kAggregateHeader = "model,cell_id,selector,iteration,mean,std,ci95_half,runs";

/// Shortest round-trip decimal form; identical output on every platform.
std::string format_double(double v);

void write_raw_header(std::ostream& os);
void write_raw_rows(std::ostream& os, const CellResult& cell);

void write_aggregate_header(std::ostream& os);
void write_aggregate_rows(std::ostream& os, const CellResult& cell);

/// Final-iteration mean +- ci95 per cell for the headline selectors.
void write_summary(std::ostream& os, std::span<const CellResult> cells);

} // namespace nkze::io
