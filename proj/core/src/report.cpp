#include "wreathlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace wreathlab {

std::string fmt(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    if (value == std::floor(value) && std::fabs(value) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

void add_config_meta(Report& report, const Budgets& budgets, std::uint64_t seed) {
    report.add_meta("seed", std::to_string(seed));
    report.add_meta("budget-bfs", std::to_string(budgets.bfs_elements));
    report.add_meta("budget-tsp", std::to_string(budgets.tsp_support));
    report.add_meta("budget-sdp", std::to_string(budgets.sdp_points));
    report.add_meta("budget-coset", std::to_string(budgets.coset_elements));
}

void Report::write(std::ostream& out, const std::string& format, double wall_ms) const {
    if (format == "csv") {
        out << "# wreathlab " << kVersion << " report=" << title;
        for (const auto& [k, v] : meta) out << " " << k << "=" << v;
        out << "\n";
        out << "# wall-ms=" << fmt(wall_ms) << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
        return;
    }
    out << "# wreathlab " << kVersion << " report=" << title << "\n";
    for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
    out << "# wall-ms=" << fmt(wall_ms) << "\n";
    if (!columns.empty()) {
        out << "# columns:";
        for (const auto& c : columns) out << " " << c;
        out << "\n";
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << "\n";
    }
}

} // namespace wreathlab
