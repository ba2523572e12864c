#ifndef TORUSISO_POLICY_AUDIT_HPP
#define TORUSISO_POLICY_AUDIT_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "torusiso/bgq.hpp"
#include "torusiso/error.hpp"
#include "torusiso/rational.hpp"

namespace torusiso::audit {

using bgq::MachineSpec;
using bgq::PartitionGeometry;

enum class PolicyMode { explicit_list, any_fitting_cuboid };

inline std::string_view to_string(PolicyMode mode)
{
    return mode == PolicyMode::explicit_list ? "explicit-list" : "any-fitting-cuboid";
}

struct PolicyEntry {
    Count midplanes = 0;
    PartitionGeometry geometry;
};

struct PolicySpec {
    std::string name;
    PolicyMode mode = PolicyMode::any_fitting_cuboid;
    std::vector<PolicyEntry> allowed;  // explicit-list mode only

    std::optional<PartitionGeometry> listed(Count midplanes) const
    {
        for (const auto& e : allowed) {
            if (e.midplanes == midplanes) return e.geometry;
        }
        return std::nullopt;
    }
};

/// All canonical cuboids of `midplanes` midplanes that fit the machine,
/// best bisection first, ties in lexicographic order.
inline std::vector<PartitionGeometry> enumerate_geometries(const MachineSpec& machine, Count midplanes)
{
    std::set<PartitionGeometry> found;
    for (Count a = 1; a <= midplanes; ++a) {
        if (midplanes % a) continue;
        const Count r1 = midplanes / a;
        for (Count b = 1; b <= r1; ++b) {
            if (r1 % b) continue;
            const Count r2 = r1 / b;
            for (Count c = 1; c <= r2; ++c) {
                if (r2 % c) continue;
                const PartitionGeometry g(a, b, c, r2 / c);
                if (bgq::fits(machine, g)) found.insert(g);
            }
        }
    }
    std::vector<PartitionGeometry> out(found.begin(), found.end());
    std::ranges::stable_sort(out, std::greater<>{}, bgq::partition_bisection_bw);
    return out;
}

/// Geometry with the largest bisection; ties go to the lexicographically
/// least canonical form.
inline PartitionGeometry best_geometry(const MachineSpec& machine, Count midplanes)
{
    const auto all = enumerate_geometries(machine, midplanes);
    if (all.empty()) {
        throw NoGeometryError("no " + std::to_string(midplanes) + "-midplane cuboid fits " +
                              machine.name + " (" + machine.midplane_grid.str() + ")");
    }
    return all.front();
}

/// Geometry with the smallest bisection (longest a1); ties go to the
/// lexicographically greatest canonical form.
inline PartitionGeometry worst_geometry(const MachineSpec& machine, Count midplanes)
{
    const auto all = enumerate_geometries(machine, midplanes);
    if (all.empty()) {
        throw NoGeometryError("no " + std::to_string(midplanes) + "-midplane cuboid fits " +
                              machine.name + " (" + machine.midplane_grid.str() + ")");
    }
    return all.back();
}

/// Midplane counts for which at least one cuboid fits.
inline std::vector<Count> realizable_sizes(const MachineSpec& machine)
{
    std::vector<Count> out;
    for (Count v = 1; v <= machine.midplanes(); ++v) {
        if (!enumerate_geometries(machine, v).empty()) out.push_back(v);
    }
    return out;
}

inline PolicySpec any_cuboid_policy()
{
    return PolicySpec{"any", PolicyMode::any_fitting_cuboid, {}};
}

/// Mira's predefined partition list as of 2017.
inline PolicySpec mira_2017_policy()
{
    PolicySpec p{"mira-2017", PolicyMode::explicit_list, {}};
    const std::pair<Count, PartitionGeometry> list[] = {
        {1, {1, 1, 1, 1}},  {2, {2, 1, 1, 1}},  {4, {4, 1, 1, 1}},  {8, {4, 2, 1, 1}},
        {16, {4, 4, 1, 1}}, {24, {4, 3, 2, 1}}, {32, {4, 4, 2, 1}}, {48, {4, 4, 3, 1}},
        {64, {4, 4, 2, 2}}, {96, {4, 4, 3, 2}},
    };
    for (const auto& [size, g] : list) p.allowed.push_back({size, g});
    return p;
}

inline std::optional<PolicySpec> find_builtin_policy(std::string_view name)
{
    const auto key = bgq::lowercase(name);
    if (key == "any" || key == "any-fitting-cuboid") return any_cuboid_policy();
    if (key == "mira-2017" || key == "mira") return mira_2017_policy();
    return std::nullopt;
}

/// Policy file: '#' comments, a mode line, then "size geometry" lines.
///
///     mode explicit-list
///     4  4x1x1x1
///     8  4x2x1x1
inline PolicySpec parse_policy(std::istream& in, std::string name = "file")
{
    PolicySpec spec;
    spec.name = std::move(name);
    bool have_mode = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = bgq::trim(view);
        if (view.empty()) continue;
        std::istringstream fields{std::string(view)};
        std::string first, second, extra;
        fields >> first >> second;
        if (fields >> extra) {
            throw ParseError("policy file line " + std::to_string(lineno) + ": too many fields");
        }
        if (!have_mode) {
            if (bgq::lowercase(first) != "mode" || second.empty()) {
                throw ParseError("policy file must start with 'mode <explicit-list|any-fitting-cuboid>'");
            }
            const auto mode = bgq::lowercase(second);
            if (mode == "explicit-list") {
                spec.mode = PolicyMode::explicit_list;
            } else if (mode == "any-fitting-cuboid" || mode == "any") {
                spec.mode = PolicyMode::any_fitting_cuboid;
            } else {
                throw ParseError("unknown policy mode '" + second + "'");
            }
            have_mode = true;
            continue;
        }
        if (spec.mode != PolicyMode::explicit_list) {
            throw ParseError("policy file line " + std::to_string(lineno) +
                             ": entries are only allowed in explicit-list mode");
        }
        Count size = 0;
        try {
            std::size_t used = 0;
            size = std::stoull(first, &used);
            if (used != first.size() || size == 0) throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("policy file line " + std::to_string(lineno) + ": bad size '" + first + "'");
        }
        if (second.empty()) {
            throw ParseError("policy file line " + std::to_string(lineno) + ": missing geometry");
        }
        const auto g = bgq::parse_geometry(second);
        if (g.volume() != size) {
            throw ParseError("policy file line " + std::to_string(lineno) + ": geometry " + g.str() +
                             " has " + std::to_string(g.volume()) + " midplanes, not " + first);
        }
        if (spec.listed(size)) {
            throw ParseError("policy file line " + std::to_string(lineno) + ": duplicate size " + first);
        }
        spec.allowed.push_back({size, g});
    }
    if (!have_mode) {
        throw ParseError("policy file has no mode line");
    }
    return spec;
}

inline PolicySpec load_policy(std::string_view source)
{
    if (auto p = find_builtin_policy(source)) return *p;
    std::ifstream in{std::string(source)};
    if (!in) {
        throw ParseError("unknown policy '" + std::string(source) +
                         "' (not a builtin name or readable file)");
    }
    return parse_policy(in, std::string(source));
}

/// Every listed geometry must fit the machine it is applied to.
inline void validate_policy(const MachineSpec& machine, const PolicySpec& policy)
{
    for (const auto& e : policy.allowed) {
        if (!bgq::fits(machine, e.geometry)) {
            throw DomainError("policy geometry " + e.geometry.str() + " does not fit " + machine.name +
                              " (" + machine.midplane_grid.str() + ")");
        }
    }
}

struct AuditRow {
    Count node_count = 0;
    Count midplanes = 0;
    std::optional<PartitionGeometry> baseline_geometry;
    std::optional<Count> baseline_bw;
    std::optional<PartitionGeometry> best_geometry;  // absent only when nothing fits
    std::optional<Count> best_bw;
    std::optional<PartitionGeometry> worst_geometry;
    std::optional<Count> worst_bw;
    std::optional<Rational> improvement_factor;

    // The "proposed" column of the published tables: shown only where the
    // best geometry beats the policy's reference geometry.
    bool improves() const
    {
        const auto ref = baseline_bw ? baseline_bw : worst_bw;
        return ref && best_bw && *best_bw > *ref;
    }
};

struct AuditReport {
    MachineSpec machine;
    std::string policy_name;
    PolicyMode mode = PolicyMode::any_fitting_cuboid;
    std::vector<AuditRow> rows;  // ascending midplanes
};

inline std::vector<Count> default_audit_sizes(const MachineSpec& machine, const PolicySpec& policy)
{
    if (policy.mode == PolicyMode::explicit_list) {
        std::vector<Count> sizes;
        for (const auto& e : policy.allowed) sizes.push_back(e.midplanes);
        std::ranges::sort(sizes);
        return sizes;
    }
    return realizable_sizes(machine);
}

inline AuditReport audit(const MachineSpec& machine, const PolicySpec& policy, std::vector<Count> sizes)
{
    if (sizes.empty()) {
        throw DomainError("audit needs at least one size");
    }
    validate_policy(machine, policy);
    std::ranges::sort(sizes);
    const auto [dup_first, dup_last] = std::ranges::unique(sizes);
    sizes.erase(dup_first, dup_last);

    AuditReport report{machine, policy.name, policy.mode, {}};
    for (Count size : sizes) {
        if (size == 0) {
            throw DomainError("partition size must be at least one midplane");
        }
        AuditRow row;
        row.midplanes = size;
        row.node_count = size * bgq::nodes_per_midplane;
        const auto all = enumerate_geometries(machine, size);
        if (!all.empty()) {
            row.best_geometry = all.front();
            row.best_bw = bgq::partition_bisection_bw(all.front());
        }
        if (policy.mode == PolicyMode::explicit_list) {
            if (auto g = policy.listed(size)) {
                row.baseline_geometry = *g;
                row.baseline_bw = bgq::partition_bisection_bw(*g);
            }
        } else if (!all.empty()) {
            row.worst_geometry = all.back();
            row.worst_bw = bgq::partition_bisection_bw(all.back());
        }
        const auto ref = row.baseline_bw ? row.baseline_bw : row.worst_bw;
        if (ref && row.best_bw) {
            row.improvement_factor = Rational(*row.best_bw, *ref);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

struct ComparisonCell {
    PartitionGeometry geometry;
    Count bw = 0;
};

struct ComparisonRow {
    Count midplanes = 0;
    Count node_count = 0;
    std::vector<std::optional<ComparisonCell>> cells;  // one per machine, absent when nothing fits
};

struct ComparisonReport {
    std::vector<MachineSpec> machines;
    std::vector<ComparisonRow> rows;
};

/// Union of the realizable sizes of all machines.
inline std::vector<Count> default_comparison_sizes(const std::vector<MachineSpec>& machines)
{
    std::set<Count> sizes;
    for (const auto& m : machines) {
        for (Count v : realizable_sizes(m)) sizes.insert(v);
    }
    return {sizes.begin(), sizes.end()};
}

inline ComparisonReport compare_machines(const std::vector<MachineSpec>& machines, std::vector<Count> sizes)
{
    if (machines.empty() || sizes.empty()) {
        throw DomainError("comparison needs at least one machine and one size");
    }
    std::ranges::sort(sizes);
    const auto [dup_first, dup_last] = std::ranges::unique(sizes);
    sizes.erase(dup_first, dup_last);

    ComparisonReport report{machines, {}};
    for (Count size : sizes) {
        ComparisonRow row{size, size * bgq::nodes_per_midplane, {}};
        for (const auto& m : machines) {
            const auto all = enumerate_geometries(m, size);
            if (all.empty()) {
                row.cells.emplace_back();
            } else {
                row.cells.push_back(ComparisonCell{all.front(), bgq::partition_bisection_bw(all.front())});
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace torusiso::audit

#endif  // TORUSISO_POLICY_AUDIT_HPP
