#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wreathlab/common.hpp"

namespace wreathlab {

/// Line-oriented structured report.  The header carries the tool version,
/// seed and budgets; wall time sits on its own header line and is the one
/// field excluded when comparing runs byte for byte.
struct Report {
    std::string title;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }
    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

    /// format is "text" or "csv".
    void write(std::ostream& out, const std::string& format, double wall_ms) const;
};

/// Deterministic number formatting: integers print without a decimal
/// point, everything else with six significant digits.
std::string fmt(double value);

void add_config_meta(Report& report, const Budgets& budgets, std::uint64_t seed);

} // namespace wreathlab
