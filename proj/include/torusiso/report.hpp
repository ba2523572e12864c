#ifndef TORUSISO_REPORT_HPP
#define TORUSISO_REPORT_HPP

// Text, CSV and JSON renderings of the library's results.
//
// CSV files have a header row, comma delimiters and no quoting; absent
// values are empty fields. Geometries render as "4x1x1x1". JSON documents
// always carry bandwidths in link units together with the machine's link
// capacity, and parse back into the same report types.

#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusiso/bgq.hpp"
#include "torusiso/contention.hpp"
#include "torusiso/isoperimetry.hpp"
#include "torusiso/oracle.hpp"
#include "torusiso/policy_audit.hpp"

namespace torusiso::report {

using Json = nlohmann::ordered_json;

enum class Format { text, csv, json };

inline Format parse_format(const std::string& s)
{
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ParseError("unknown format '" + s + "' (text, csv, json)");
}

/// Bandwidth presentation for text and CSV output.
struct BandwidthUnit {
    bool gbps = false;
    double link_capacity_gbps = 2.0;

    std::string operator()(Count links) const
    {
        if (!gbps) return std::to_string(links);
        std::ostringstream s;
        s << links * link_capacity_gbps;
        return s.str();
    }
    const char* name() const { return gbps ? "GB/s" : "links"; }
};

inline std::string fixed(double v, int digits)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Left-aligned columns separated by two spaces.
inline void write_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += i + 1 < r.size() ? pad(r[i], width[i] + 2) : r[i];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
}

inline void write_csv(std::ostream& out, const std::vector<std::vector<std::string>>& rows)
{
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out << ',';
            out << r[i];
        }
        out << '\n';
    }
}

template <class T, class F>
std::string opt_str(const std::optional<T>& v, F&& f)
{
    return v ? f(*v) : std::string{};
}

inline Json opt_geometry(const std::optional<bgq::PartitionGeometry>& g)
{
    return g ? Json(g->str()) : Json(nullptr);
}

inline Json opt_count(const std::optional<Count>& v) { return v ? Json(*v) : Json(nullptr); }

inline std::optional<bgq::PartitionGeometry> read_geometry(const Json& j)
{
    if (j.is_null()) return std::nullopt;
    return bgq::parse_geometry(j.get<std::string>());
}

inline std::optional<Count> read_count(const Json& j)
{
    if (j.is_null()) return std::nullopt;
    return j.get<Count>();
}

}  // namespace detail

// ---------------------------------------------------------------- machines

inline Json to_json(const bgq::MachineSpec& m)
{
    return Json{{"name", m.name},
                {"grid", m.midplane_grid.str()},
                {"nodes", m.total_nodes()},
                {"link_capacity_gbps", m.link_capacity_gbps}};
}

inline bgq::MachineSpec machine_from_json(const Json& j)
{
    return bgq::MachineSpec{j.at("name").get<std::string>(), bgq::parse_geometry(j.at("grid").get<std::string>()),
                            j.at("link_capacity_gbps").get<double>()};
}

// ------------------------------------------------------------------- audit

inline const std::vector<std::string>& audit_csv_columns()
{
    static const std::vector<std::string> cols{
        "midplanes",     "nodes",    "baseline_geometry", "baseline_bw",       "worst_geometry",
        "worst_bw",      "best_geometry", "best_bw",      "improvement_factor"};
    return cols;
}

inline Json to_json(const audit::AuditReport& r)
{
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back(Json{
            {"midplanes", row.midplanes},
            {"nodes", row.node_count},
            {"baseline_geometry", detail::opt_geometry(row.baseline_geometry)},
            {"baseline_bw", detail::opt_count(row.baseline_bw)},
            {"worst_geometry", detail::opt_geometry(row.worst_geometry)},
            {"worst_bw", detail::opt_count(row.worst_bw)},
            {"best_geometry", detail::opt_geometry(row.best_geometry)},
            {"best_bw", detail::opt_count(row.best_bw)},
            {"improvement_factor", row.improvement_factor
                                       ? Json{{"num", row.improvement_factor->num()},
                                              {"den", row.improvement_factor->den()},
                                              {"value", row.improvement_factor->value()}}
                                       : Json(nullptr)},
        });
    }
    return Json{{"kind", "audit"},
                {"bandwidth_unit", "links"},
                {"machine", to_json(r.machine)},
                {"policy", r.policy_name},
                {"mode", std::string(audit::to_string(r.mode))},
                {"rows", rows}};
}

inline audit::AuditReport audit_from_json(const Json& j)
{
    audit::AuditReport r;
    r.machine = machine_from_json(j.at("machine"));
    r.policy_name = j.at("policy").get<std::string>();
    const auto mode = j.at("mode").get<std::string>();
    r.mode = mode == "explicit-list" ? audit::PolicyMode::explicit_list : audit::PolicyMode::any_fitting_cuboid;
    for (const auto& row : j.at("rows")) {
        audit::AuditRow a;
        a.midplanes = row.at("midplanes").get<Count>();
        a.node_count = row.at("nodes").get<Count>();
        a.baseline_geometry = detail::read_geometry(row.at("baseline_geometry"));
        a.baseline_bw = detail::read_count(row.at("baseline_bw"));
        a.worst_geometry = detail::read_geometry(row.at("worst_geometry"));
        a.worst_bw = detail::read_count(row.at("worst_bw"));
        a.best_geometry = detail::read_geometry(row.at("best_geometry"));
        a.best_bw = detail::read_count(row.at("best_bw"));
        if (const auto& f = row.at("improvement_factor"); !f.is_null()) {
            a.improvement_factor = Rational(f.at("num").get<Count>(), f.at("den").get<Count>());
        }
        r.rows.push_back(std::move(a));
    }
    return r;
}

inline void render(std::ostream& out, const audit::AuditReport& r, Format format, const BandwidthUnit& unit = {})
{
    if (format == Format::json) {
        out << to_json(r).dump(2) << '\n';
        return;
    }
    auto geom = [](const bgq::PartitionGeometry& g) { return g.str(); };
    if (format == Format::csv) {
        std::vector<std::vector<std::string>> rows{audit_csv_columns()};
        for (const auto& row : r.rows) {
            rows.push_back({std::to_string(row.midplanes), std::to_string(row.node_count),
                            detail::opt_str(row.baseline_geometry, geom), detail::opt_str(row.baseline_bw, unit),
                            detail::opt_str(row.worst_geometry, geom), detail::opt_str(row.worst_bw, unit),
                            detail::opt_str(row.best_geometry, geom), detail::opt_str(row.best_bw, unit),
                            detail::opt_str(row.improvement_factor, [](const Rational& q) { return q.str(); })});
        }
        detail::write_csv(out, rows);
        return;
    }

    const bool listed = r.mode == audit::PolicyMode::explicit_list;
    out << "machine " << r.machine.name << " (" << r.machine.midplane_grid.str() << " midplanes, "
        << r.machine.total_nodes() << " nodes), policy " << r.policy_name << " (" << audit::to_string(r.mode)
        << "), bandwidth in " << unit.name() << "\n\n";
    std::vector<std::vector<std::string>> rows{{"P", "Midplanes", listed ? "Current" : "Worst", "BW",
                                                "Proposed", "BW", "Factor"}};
    for (const auto& row : r.rows) {
        const auto& ref_g = listed ? row.baseline_geometry : row.worst_geometry;
        const auto& ref_bw = listed ? row.baseline_bw : row.worst_bw;
        rows.push_back({std::to_string(row.node_count), std::to_string(row.midplanes),
                        ref_g ? ref_g->str() : "-", detail::opt_str(ref_bw, unit),
                        row.improves() ? row.best_geometry->str() : "", row.improves() ? unit(*row.best_bw) : "",
                        detail::opt_str(row.improvement_factor, [](const Rational& q) { return q.str(); })});
    }
    detail::write_table(out, rows);
}

// -------------------------------------------------------------- comparison

inline Json to_json(const audit::ComparisonReport& r)
{
    Json machines = Json::array();
    for (const auto& m : r.machines) machines.push_back(to_json(m));
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json cells = Json::array();
        for (const auto& c : row.cells) {
            cells.push_back(c ? Json{{"geometry", c->geometry.str()}, {"bw", c->bw}} : Json(nullptr));
        }
        rows.push_back(Json{{"midplanes", row.midplanes}, {"nodes", row.node_count}, {"cells", cells}});
    }
    return Json{{"kind", "comparison"}, {"bandwidth_unit", "links"}, {"machines", machines}, {"rows", rows}};
}

inline audit::ComparisonReport comparison_from_json(const Json& j)
{
    audit::ComparisonReport r;
    for (const auto& m : j.at("machines")) r.machines.push_back(machine_from_json(m));
    for (const auto& row : j.at("rows")) {
        audit::ComparisonRow c{row.at("midplanes").get<Count>(), row.at("nodes").get<Count>(), {}};
        for (const auto& cell : row.at("cells")) {
            if (cell.is_null()) {
                c.cells.emplace_back();
            } else {
                c.cells.push_back(audit::ComparisonCell{bgq::parse_geometry(cell.at("geometry").get<std::string>()),
                                                        cell.at("bw").get<Count>()});
            }
        }
        r.rows.push_back(std::move(c));
    }
    return r;
}

inline void render(std::ostream& out, const audit::ComparisonReport& r, Format format, bool gbps = false)
{
    if (format == Format::json) {
        out << to_json(r).dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"midplanes", "nodes"};
    if (format == Format::text) header = {"P", "Midplanes"};
    for (const auto& m : r.machines) {
        header.push_back(format == Format::csv ? m.name + "_geometry" : m.name);
        header.push_back(format == Format::csv ? m.name + "_bw" : "BW");
    }
    rows.push_back(header);
    for (const auto& row : r.rows) {
        std::vector<std::string> line{std::to_string(row.node_count), std::to_string(row.midplanes)};
        if (format == Format::csv) std::swap(line[0], line[1]);
        for (std::size_t m = 0; m < row.cells.size(); ++m) {
            const BandwidthUnit unit{gbps, r.machines[m].link_capacity_gbps};
            const auto& c = row.cells[m];
            line.push_back(c ? c->geometry.str() : "");
            line.push_back(c ? unit(c->bw) : "");
        }
        rows.push_back(std::move(line));
    }
    if (format == Format::csv) {
        detail::write_csv(out, rows);
    } else {
        out << "best-case partitions, bandwidth in " << (gbps ? "GB/s" : "links") << "\n\n";
        detail::write_table(out, rows);
    }
}

// ------------------------------------------------------------------- bound

struct BoundReport {
    std::vector<Count> dims;
    unsigned length2_links = 1;
    Count t = 0;
    BoundResult bound;
};

inline Json to_json(const BoundReport& r)
{
    Json cuboid = nullptr;
    Json cut = nullptr;
    if (r.bound.attaining_cuboid) {
        cuboid = Json(std::vector<Count>(r.bound.attaining_cuboid->sides().begin(),
                                         r.bound.attaining_cuboid->sides().end()));
        cut = cuboid_cut_size(*r.bound.attaining_cuboid);
    }
    return Json{{"kind", "bound"},
                {"dims", r.dims},
                {"length2_links", r.length2_links},
                {"t", r.t},
                {"value", r.bound.value},
                {"exact", r.bound.exact},
                {"argmin_r", r.bound.argmin_r},
                {"covered_product", r.bound.covered_product},
                {"attaining_cuboid", cuboid},
                {"attaining_cut", cut}};
}

inline BoundReport bound_from_json(const Json& j)
{
    BoundReport r;
    r.dims = j.at("dims").get<std::vector<Count>>();
    r.length2_links = j.at("length2_links").get<unsigned>();
    r.t = j.at("t").get<Count>();
    r.bound.value = j.at("value").get<double>();
    r.bound.exact = j.at("exact").get<bool>();
    r.bound.argmin_r = j.at("argmin_r").get<unsigned>();
    r.bound.covered_product = j.at("covered_product").get<Count>();
    if (const auto& c = j.at("attaining_cuboid"); !c.is_null()) {
        r.bound.attaining_cuboid = CuboidRegion(TorusShape(r.dims, static_cast<PairedLinks>(r.length2_links)),
                                                c.get<std::vector<Count>>());
    }
    return r;
}

inline std::string bound_value_str(const BoundResult& b)
{
    if (b.exact) return std::to_string(static_cast<Count>(b.value));
    return fixed(b.value, 6);
}

inline void render(std::ostream& out, const BoundReport& r, Format format)
{
    const auto& b = r.bound;
    const std::string cuboid = b.attaining_cuboid ? b.attaining_cuboid->str() : "";
    if (format == Format::json) {
        out << to_json(r).dump(2) << '\n';
    } else if (format == Format::csv) {
        detail::write_csv(out, {{"dims", "t", "value", "exact", "argmin_r", "covered_product", "attaining_cuboid"},
                                {torusiso::detail::join_dims(r.dims), std::to_string(r.t), bound_value_str(b),
                                 b.exact ? "true" : "false", std::to_string(b.argmin_r),
                                 std::to_string(b.covered_product), cuboid}});
    } else {
        out << "torus " << torusiso::detail::join_dims(r.dims) << ", t = " << r.t << "\n";
        out << "bound            " << bound_value_str(b) << (b.exact ? "" : " (real-valued)") << "\n";
        out << "argmin r         " << b.argmin_r << "\n";
        out << "covered product  " << b.covered_product << "\n";
        out << "attaining cuboid " << (cuboid.empty() ? "none" : cuboid) << "\n";
    }
}

// ------------------------------------------------------------------ oracle

enum class Verdict { attained, above_bound, below_bound };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::attained: return "attained";
    case Verdict::above_bound: return "above-bound";
    case Verdict::below_bound: return "counterexample";
    }
    return "";
}

inline Verdict verdict(Count min_perimeter, double bound)
{
    const double tol = bound_tolerance * std::max(1.0, bound);
    const auto m = static_cast<double>(min_perimeter);
    if (m < bound - tol) return Verdict::below_bound;
    if (m <= bound + tol) return Verdict::attained;
    return Verdict::above_bound;
}

struct OracleReport {
    std::vector<Count> dims;
    unsigned length2_links = 1;
    Count t = 0;
    OracleResult oracle;
    std::optional<double> bound;  // absent for t = 0
    bool complete = true;         // false when the budget ran out
};

inline Json to_json(const OracleReport& r)
{
    Json j{{"kind", "oracle"},
           {"dims", r.dims},
           {"length2_links", r.length2_links},
           {"t", r.t},
           {"complete", r.complete},
           {"min_perimeter", r.oracle.min_perimeter},
           {"witness", r.oracle.witness},
           {"subsets_examined", r.oracle.subsets_examined},
           {"bound", r.bound ? Json(*r.bound) : Json(nullptr)}};
    j["verdict"] = r.bound && r.complete ? Json(std::string(to_string(verdict(r.oracle.min_perimeter, *r.bound))))
                                         : Json(nullptr);
    return j;
}

inline OracleReport oracle_from_json(const Json& j)
{
    OracleReport r;
    r.dims = j.at("dims").get<std::vector<Count>>();
    r.length2_links = j.at("length2_links").get<unsigned>();
    r.t = j.at("t").get<Count>();
    r.complete = j.at("complete").get<bool>();
    r.oracle.min_perimeter = j.at("min_perimeter").get<Count>();
    r.oracle.witness = j.at("witness").get<std::vector<Count>>();
    r.oracle.subsets_examined = j.at("subsets_examined").get<Count>();
    if (!j.at("bound").is_null()) r.bound = j.at("bound").get<double>();
    return r;
}

inline void render(std::ostream& out, const OracleReport& r, Format format)
{
    const std::string bound = r.bound ? fixed(*r.bound, 6) : "";
    const std::string v =
        r.bound && r.complete ? std::string(to_string(verdict(r.oracle.min_perimeter, *r.bound))) : "";
    std::string witness;
    for (std::size_t i = 0; i < r.oracle.witness.size(); ++i) {
        witness += (i ? " " : "") + std::to_string(r.oracle.witness[i]);
    }
    if (format == Format::json) {
        out << to_json(r).dump(2) << '\n';
    } else if (format == Format::csv) {
        detail::write_csv(out, {{"dims", "t", "complete", "min_perimeter", "bound", "verdict", "subsets_examined",
                                 "witness"},
                                {torusiso::detail::join_dims(r.dims), std::to_string(r.t), r.complete ? "true" : "false",
                                 std::to_string(r.oracle.min_perimeter), bound, v,
                                 std::to_string(r.oracle.subsets_examined), witness}});
    } else {
        out << "torus " << torusiso::detail::join_dims(r.dims) << ", t = " << r.t << "\n";
        out << (r.complete ? "min perimeter    " : "best seen        ") << r.oracle.min_perimeter
            << (r.complete ? "" : " (budget exhausted, not a certified minimum)") << "\n";
        out << "bound            " << (bound.empty() ? "-" : bound) << "\n";
        out << "verdict          " << (v.empty() ? "-" : v) << "\n";
        out << "subsets examined " << r.oracle.subsets_examined << "\n";
        out << "witness          " << witness << "\n";
    }
}

// -------------------------------------------------------------- simulation

struct SimulationRun {
    std::string label;
    bgq::PartitionGeometry geometry;
    sim::FlowResult flow;
};

struct SimulationPair {
    Count midplanes = 0;
    std::size_t slow = 0;  // indices into runs
    std::size_t fast = 0;
    double ratio = 0.0;
    Rational bisection_ratio;
};

struct SimulationReport {
    sim::TrafficSpec traffic;
    std::vector<SimulationRun> runs;
    std::vector<SimulationPair> pairs;
};

inline Json to_json(const SimulationReport& r)
{
    Json runs = Json::array();
    for (const auto& run : r.runs) {
        runs.push_back(Json{{"label", run.label},
                            {"geometry", run.geometry.str()},
                            {"node_dims", run.flow.dims},
                            {"bisection_bw", bgq::partition_bisection_bw(run.geometry)},
                            {"dim_max_load_gb", run.flow.dim_max_load},
                            {"bottleneck_load_gb", run.flow.bottleneck_load},
                            {"round_time_s", run.flow.predicted_round_time_s},
                            {"total_time_s", run.flow.predicted_total_time_s}});
    }
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        pairs.push_back(Json{{"midplanes", p.midplanes},
                             {"slow", r.runs[p.slow].geometry.str()},
                             {"fast", r.runs[p.fast].geometry.str()},
                             {"time_ratio", p.ratio},
                             {"bisection_ratio", Json{{"num", p.bisection_ratio.num()},
                                                      {"den", p.bisection_ratio.den()},
                                                      {"value", p.bisection_ratio.value()}}}});
    }
    return Json{{"kind", "simulation"},
                {"traffic",
                 Json{{"pattern", "furthest-node"},
                      {"rounds_total", r.traffic.rounds_total},
                      {"warmup_rounds", r.traffic.warmup_rounds},
                      {"message_gb", r.traffic.message_gb},
                      {"link_gbps_per_direction", r.traffic.link_gbps_per_direction}}},
                {"model", "fluid dimension-ordered routing at full link utilization (upper-bound throughput)"},
                {"runs", runs},
                {"pairs", pairs}};
}

inline void render(std::ostream& out, const SimulationReport& r, Format format)
{
    if (format == Format::json) {
        out << to_json(r).dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> runs{
        {"label", "geometry", "node_dims", "bisection_bw", "bottleneck_load_gb", "round_time_s", "total_time_s",
         "dim_max_load_gb"}};
    for (const auto& run : r.runs) {
        std::string dims_load;
        for (std::size_t i = 0; i < run.flow.dim_max_load.size(); ++i) {
            dims_load += (i ? (format == Format::csv ? ";" : " ") : "") + fixed(run.flow.dim_max_load[i], 4);
        }
        runs.push_back({run.label, run.geometry.str(), torusiso::detail::join_dims(run.flow.dims),
                        std::to_string(bgq::partition_bisection_bw(run.geometry)), fixed(run.flow.bottleneck_load, 4),
                        fixed(run.flow.predicted_round_time_s, 4), fixed(run.flow.predicted_total_time_s, 4),
                        dims_load});
    }
    std::vector<std::vector<std::string>> pairs{{"midplanes", "slow", "fast", "time_ratio", "bisection_ratio"}};
    for (const auto& p : r.pairs) {
        pairs.push_back({std::to_string(p.midplanes), r.runs[p.slow].geometry.str(), r.runs[p.fast].geometry.str(),
                         fixed(p.ratio, 4), fixed(p.bisection_ratio.value(), 4)});
    }
    if (format == Format::csv) {
        detail::write_csv(out, r.pairs.empty() ? runs : pairs);
        return;
    }
    out << "furthest-node pairing, " << r.traffic.counted_rounds() << " counted rounds of "
        << r.traffic.message_gb << " GB at " << r.traffic.link_gbps_per_direction
        << " GB/s per direction (fluid model, full link utilization)\n\n";
    detail::write_table(out, runs);
    if (!r.pairs.empty()) {
        out << '\n';
        detail::write_table(out, pairs);
    }
}

}  // namespace torusiso::report

#endif  // TORUSISO_REPORT_HPP
