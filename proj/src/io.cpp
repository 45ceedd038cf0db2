#include "nkze/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <ostream>

namespace nkze::io {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

void write_raw_header(std::ostream& os) { os << kRawHeader << '\n'; }

void write_raw_rows(std::ostream& os, const CellResult& cell) {
    const auto model = to_string(cell.cell.config.model);
    for (const auto& r : cell.records) {
        os << model << ',' << cell.cell.id << ',' << r.run << ',' << r.iteration << ',' << r.firm_id << ','
           << to_string(r.role) << ',';
        if (r.group_id >= 0) os << r.group_id << ',' << r.group_size << ',' << r.group_shapers;
        else os << ",,";
        os << ',' << format_double(r.fitness) << '\n';
    }
}

void write_aggregate_header(std::ostream& os) { os << kAggregateHeader << '\n'; }

void write_aggregate_rows(std::ostream& os, const CellResult& cell) {
    const auto model = to_string(cell.cell.config.model);
    for (const auto& series : cell.aggregates) {
        for (const auto& p : series.points) {
            os << model << ',' << cell.cell.id << ',' << series.selector << ',' << p.iteration << ','
               << format_double(p.summary.mean) << ',' << format_double(p.summary.std) << ',';
            if (p.summary.ci95_half) os << format_double(*p.summary.ci95_half);
            os << ',' << p.summary.n << '\n';
        }
    }
}

void write_summary(std::ostream& os, std::span<const CellResult> cells) {
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %-9s %-14s %9s %9s %5s\n", "cell", "model", "selector", "mean", "ci95",
                  "n");
    os << line;
    for (const auto& cell : cells) {
        const auto model = to_string(cell.cell.config.model);
        if (!cell.error.empty()) {
            os << cell.cell.id << "  " << model << "  FAILED: " << cell.error << '\n';
            continue;
        }
        for (const auto& series : cell.aggregates) {
            if (series.selector != "best_all" && series.selector != "mean_searcher" &&
                series.selector != "mean_shaper")
                continue;
            const auto& p = series.points.back();
            std::snprintf(line, sizeof line, "%-28s %-9s %-14s %9.4f %9.4f %5zu\n", cell.cell.id.c_str(),
                          std::string(model).c_str(), series.selector.c_str(), p.summary.mean,
                          p.summary.ci95_half.value_or(0.0), p.summary.n);
            os << line;
        }
    }
}

} // namespace nkze::io
