#ifndef TORUSISO_GOLDEN_TABLES_HPP
#define TORUSISO_GOLDEN_TABLES_HPP

// Published partition tables for Mira, JUQUEEN and the two hypothetical
// JUQUEEN-sized machines, used as regression data by `audit --check-paper`
// and `compare --check-paper`.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torusiso/policy_audit.hpp"

namespace torusiso::golden {

struct AuditLine {
    Count midplanes;
    std::string_view reference;  // current (explicit list) or worst-case geometry
    Count reference_bw;
    std::string_view proposed;  // empty where the table leaves the cell blank
    Count proposed_bw;
};

struct AuditTable {
    std::string_view title;
    std::string_view machine;
    std::string_view policy;
    std::vector<AuditLine> lines;
};

/// Mira, all current partitions and proposed replacements.
inline const AuditTable& mira_full()
{
    static const AuditTable t{
        "mira: current vs proposed partitions",
        "mira",
        "mira-2017",
        {
            {1, "1x1x1x1", 256, "", 0},
            {2, "2x1x1x1", 256, "", 0},
            {4, "4x1x1x1", 256, "2x2x1x1", 512},
            {8, "4x2x1x1", 512, "2x2x2x1", 1024},
            {16, "4x4x1x1", 1024, "2x2x2x2", 2048},
            {24, "4x3x2x1", 1536, "3x2x2x2", 2048},
            {32, "4x4x2x1", 2048, "", 0},
            {48, "4x4x3x1", 3072, "", 0},
            {64, "4x4x2x2", 4096, "", 0},
            {96, "4x4x3x2", 6144, "", 0},
        }};
    return t;
}

/// Mira, only the rows where the bisection increases.
inline const AuditTable& mira_summary()
{
    static const AuditTable t{
        "mira: improved partitions",
        "mira",
        "mira-2017",
        {
            {4, "4x1x1x1", 256, "2x2x1x1", 512},
            {8, "4x2x1x1", 512, "2x2x2x1", 1024},
            {16, "4x4x1x1", 1024, "2x2x2x2", 2048},
            {24, "4x3x2x1", 1536, "3x2x2x2", 2048},
        }};
    return t;
}

/// JUQUEEN, worst and best case for every realizable size.
inline const AuditTable& juqueen_full()
{
    static const AuditTable t{
        "juqueen: worst vs best partitions",
        "juqueen",
        "any",
        {
            {1, "1x1x1x1", 256, "", 0},
            {2, "2x1x1x1", 256, "", 0},
            {3, "3x1x1x1", 256, "", 0},
            {4, "4x1x1x1", 256, "2x2x1x1", 512},
            {5, "5x1x1x1", 256, "", 0},
            {6, "6x1x1x1", 256, "3x2x1x1", 512},
            {7, "7x1x1x1", 256, "", 0},
            {8, "4x2x1x1", 512, "2x2x2x1", 1024},
            {10, "5x2x1x1", 512, "", 0},
            {12, "6x2x1x1", 512, "3x2x2x1", 1024},
            {14, "7x2x1x1", 512, "", 0},
            {16, "4x2x2x1", 1024, "2x2x2x2", 2048},
            {20, "5x2x2x1", 1024, "", 0},
            {24, "6x2x2x1", 1024, "3x2x2x2", 2048},
            {28, "7x2x2x1", 1024, "", 0},
            {32, "4x2x2x2", 2048, "", 0},
            {40, "5x2x2x2", 2048, "", 0},
            {48, "6x2x2x2", 2048, "", 0},
            {56, "7x2x2x2", 2048, "", 0},
        }};
    return t;
}

/// JUQUEEN, only the rows where best and worst differ.
inline const AuditTable& juqueen_summary()
{
    static const AuditTable t{
        "juqueen: sizes with a sub-optimal geometry",
        "juqueen",
        "any",
        {
            {4, "4x1x1x1", 256, "2x2x1x1", 512},
            {6, "6x1x1x1", 256, "3x2x1x1", 512},
            {8, "4x2x1x1", 512, "2x2x2x1", 1024},
            {12, "6x2x1x1", 512, "3x2x2x1", 1024},
            {16, "4x2x2x1", 1024, "2x2x2x2", 2048},
            {24, "6x2x2x1", 1024, "3x2x2x2", 2048},
        }};
    return t;
}

struct ComparisonCellLine {
    std::string_view geometry;  // empty for a blank cell
    Count bw;
};

struct ComparisonLine {
    Count midplanes;
    ComparisonCellLine juqueen;
    ComparisonCellLine juqueen54;
    ComparisonCellLine juqueen48;
};

/// Best-case partitions of JUQUEEN, JUQUEEN-54 and JUQUEEN-48.
inline const std::vector<ComparisonLine>& machine_comparison()
{
    static const std::vector<ComparisonLine> t{
        {1, {"1x1x1x1", 256}, {"1x1x1x1", 256}, {"1x1x1x1", 256}},
        {2, {"2x1x1x1", 256}, {"2x1x1x1", 256}, {"2x1x1x1", 256}},
        {3, {"3x1x1x1", 256}, {"3x1x1x1", 256}, {"3x1x1x1", 256}},
        {4, {"2x2x1x1", 512}, {"2x2x1x1", 512}, {"2x2x1x1", 512}},
        {5, {"5x1x1x1", 256}, {"", 0}, {"", 0}},
        {6, {"3x2x1x1", 512}, {"3x2x1x1", 512}, {"3x2x1x1", 512}},
        {7, {"7x1x1x1", 256}, {"", 0}, {"", 0}},
        {8, {"2x2x2x1", 1024}, {"2x2x2x1", 1024}, {"2x2x2x1", 1024}},
        {9, {"", 0}, {"3x3x1x1", 768}, {"3x3x1x1", 768}},
        {10, {"5x2x1x1", 512}, {"", 0}, {"", 0}},
        {12, {"3x2x2x1", 1024}, {"3x2x2x1", 1024}, {"3x2x2x1", 1024}},
        {14, {"7x2x1x1", 512}, {"", 0}, {"", 0}},
        {16, {"2x2x2x2", 2048}, {"2x2x2x2", 2048}, {"2x2x2x2", 2048}},
        {18, {"", 0}, {"3x3x2x1", 1536}, {"3x3x2x1", 1536}},
        {20, {"5x2x2x1", 1024}, {"", 0}, {"", 0}},
        {24, {"3x2x2x2", 2048}, {"3x2x2x2", 2048}, {"3x2x2x2", 2048}},
        {27, {"", 0}, {"3x3x3x1", 2304}, {"", 0}},
        {28, {"7x2x2x1", 1024}, {"", 0}, {"", 0}},
        {32, {"4x2x2x2", 2048}, {"", 0}, {"4x2x2x2", 2048}},
        {36, {"", 0}, {"3x3x2x2", 3072}, {"3x3x2x2", 3072}},
        {40, {"5x2x2x2", 2048}, {"", 0}, {"", 0}},
        {48, {"6x2x2x2", 2048}, {"", 0}, {"4x3x2x2", 3072}},
        {54, {"", 0}, {"3x3x3x2", 4608}, {"", 0}},
        {56, {"7x2x2x2", 2048}, {"", 0}, {"", 0}},
    };
    return t;
}

inline const std::vector<std::string_view>& comparison_machines()
{
    static const std::vector<std::string_view> names{"juqueen", "juqueen-54", "juqueen-48"};
    return names;
}

namespace detail {

inline std::string geometry_or_blank(const std::optional<bgq::PartitionGeometry>& g)
{
    return g ? g->str() : std::string{};
}

}  // namespace detail

/// Differences between an audit report and a golden table; empty when every
/// golden row is reproduced. With `exact_rows` the report must not contain
/// any other rows either.
inline std::vector<std::string> check_audit(const audit::AuditReport& report, const AuditTable& table,
                                            bool exact_rows)
{
    std::vector<std::string> issues;
    auto find = [&](Count size) -> const audit::AuditRow* {
        for (const auto& r : report.rows) {
            if (r.midplanes == size) return &r;
        }
        return nullptr;
    };
    for (const auto& line : table.lines) {
        const auto* row = find(line.midplanes);
        const std::string where = std::string(table.title) + ", " + std::to_string(line.midplanes) + " midplanes: ";
        if (!row) {
            issues.push_back(where + "row missing");
            continue;
        }
        const bool explicit_list = report.mode == audit::PolicyMode::explicit_list;
        const auto ref_geom = detail::geometry_or_blank(explicit_list ? row->baseline_geometry : row->worst_geometry);
        const auto ref_bw = explicit_list ? row->baseline_bw : row->worst_bw;
        if (ref_geom != line.reference || !ref_bw || *ref_bw != line.reference_bw) {
            issues.push_back(where + "reference " + ref_geom + "/" + (ref_bw ? std::to_string(*ref_bw) : "-") +
                             ", expected " + std::string(line.reference) + "/" + std::to_string(line.reference_bw));
        }
        const std::string proposed = row->improves() ? detail::geometry_or_blank(row->best_geometry) : "";
        const Count proposed_bw = row->improves() ? *row->best_bw : 0;
        if (proposed != line.proposed || proposed_bw != line.proposed_bw) {
            issues.push_back(where + "proposed '" + proposed + "'/" + std::to_string(proposed_bw) + ", expected '" +
                             std::string(line.proposed) + "'/" + std::to_string(line.proposed_bw));
        }
    }
    if (exact_rows && report.rows.size() != table.lines.size()) {
        issues.push_back(std::string(table.title) + ": report has " + std::to_string(report.rows.size()) +
                         " rows, table has " + std::to_string(table.lines.size()));
    }
    return issues;
}

/// Differences between a comparison report over (juqueen, juqueen-54,
/// juqueen-48) and the golden comparison table.
inline std::vector<std::string> check_comparison(const audit::ComparisonReport& report)
{
    std::vector<std::string> issues;
    const auto& names = comparison_machines();
    if (report.machines.size() != names.size()) {
        issues.push_back("comparison must cover juqueen, juqueen-54, juqueen-48");
        return issues;
    }
    for (std::size_t m = 0; m < names.size(); ++m) {
        if (report.machines[m].name != names[m]) {
            issues.push_back("machine " + std::to_string(m) + " is " + report.machines[m].name + ", expected " +
                             std::string(names[m]));
        }
    }
    if (report.rows.size() != machine_comparison().size()) {
        issues.push_back("comparison has " + std::to_string(report.rows.size()) + " rows, table has " +
                         std::to_string(machine_comparison().size()));
    }
    for (const auto& line : machine_comparison()) {
        const audit::ComparisonRow* row = nullptr;
        for (const auto& r : report.rows) {
            if (r.midplanes == line.midplanes) row = &r;
        }
        if (!row) {
            issues.push_back("size " + std::to_string(line.midplanes) + ": row missing");
            continue;
        }
        const ComparisonCellLine expected[] = {line.juqueen, line.juqueen54, line.juqueen48};
        for (std::size_t m = 0; m < 3 && m < row->cells.size(); ++m) {
            const auto& cell = row->cells[m];
            const std::string got = cell ? cell->geometry.str() : "";
            const Count got_bw = cell ? cell->bw : 0;
            if (got != expected[m].geometry || got_bw != expected[m].bw) {
                issues.push_back("size " + std::to_string(line.midplanes) + ", " + std::string(names[m]) + ": got '" +
                                 got + "'/" + std::to_string(got_bw) + ", expected '" +
                                 std::string(expected[m].geometry) + "'/" + std::to_string(expected[m].bw));
            }
        }
    }
    return issues;
}

/// The golden table matching a (machine, policy) pair, if any.
inline const AuditTable* table_for(std::string_view machine, std::string_view policy)
{
    for (const AuditTable* t : {&mira_full(), &juqueen_full()}) {
        if (t->machine == machine && t->policy == policy) return t;
    }
    return nullptr;
}

}  // namespace torusiso::golden

#endif  // TORUSISO_GOLDEN_TABLES_HPP
