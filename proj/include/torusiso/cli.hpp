#ifndef TORUSISO_CLI_HPP
#define TORUSISO_CLI_HPP

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torusiso/bgq.hpp"
#include "torusiso/contention.hpp"
#include "torusiso/golden_tables.hpp"
#include "torusiso/isoperimetry.hpp"
#include "torusiso/oracle.hpp"
#include "torusiso/policy_audit.hpp"
#include "torusiso/report.hpp"

namespace torusiso::cli {

enum ExitCode : int {
    ok = 0,
    failure = 1,      // I/O and anything unexpected
    usage = 2,        // bad flags, unreadable or malformed input files
    domain = 3,       // arguments outside an operation's domain
    budget = 4,       // oracle budget exhausted
    check_failed = 5, // golden table or cross-check mismatch
};

namespace detail {

inline PairedLinks paired_links(unsigned v)
{
    if (v != 1 && v != 2) throw ParseError("--length2-links must be 1 or 2");
    return static_cast<PairedLinks>(v);
}

struct Common {
    std::string format = "text";
    std::string output;
};

// Writes to --output when given, standard output otherwise.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write " + path);
            out_ = file_.get();
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

inline void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("-o,--output", c.output, "Output file (default: standard output)");
}

// Randomized consistency checks: enumeration completeness against random
// 4-factorizations, and the torus bound against random cuboids.
inline int crosscheck(unsigned seed, unsigned trials, std::ostream& out)
{
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;

    const auto& machines = bgq::builtin_machines();
    for (unsigned i = 0; i < trials; ++i) {
        const auto& m = machines[rng() % machines.size()];
        std::uniform_int_distribution<Count> side(1, 8);
        const bgq::PartitionGeometry g(side(rng), side(rng), side(rng), side(rng));
        const auto all = audit::enumerate_geometries(m, g.volume());
        const bool listed = std::ranges::find(all, g) != all.end();
        if (listed != bgq::fits(m, g)) {
            ++failures;
            out << "enumeration mismatch: " << m.name << " " << g.str() << '\n';
        }
    }

    for (unsigned i = 0; i < trials; ++i) {
        std::uniform_int_distribution<unsigned> rank_dist(1, 4);
        std::uniform_int_distribution<Count> len(2, 12);
        std::vector<Count> dims(rank_dist(rng));
        for (auto& d : dims) d = len(rng);
        const TorusShape shape(dims, PairedLinks::doubled);
        std::vector<Count> sides;
        for (Count d : shape.dims()) sides.push_back(std::uniform_int_distribution<Count>(1, d)(rng));
        const CuboidRegion region(shape, sides);
        if (region.volume() > shape.vertex_count() / 2) continue;
        const auto b = bound_general_torus(shape, region.volume());
        const auto cut = static_cast<double>(cuboid_cut_size(region));
        if (cut < b.value * (1.0 - bound_tolerance)) {
            ++failures;
            out << "bound violated: torus " << shape.str() << " cuboid " << region.str() << " cut " << cut
                << " < " << b.value << '\n';
        }
    }
    out << "crosscheck seed " << seed << ", " << trials << " trials per check: "
        << (failures == 0 ? "ok" : std::to_string(failures) + " failures") << '\n';
    return failures == 0 ? ok : check_failed;
}

}  // namespace detail

/// Runs the command line `args` (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Edge-isoperimetric and bisection analysis of torus partitions", "torusiso"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "torusiso 1.0.0");

    detail::Common common;

    // bound
    auto* bound = app.add_subcommand("bound", "Isoperimetric lower bound for a t-vertex cuboid of a torus");
    std::vector<Count> bound_dims;
    Count bound_t = 0;
    unsigned bound_links = 1;
    bound->add_option("--dims", bound_dims, "Torus dimension lengths, e.g. 16,4,4,4,2")->required()->delimiter(',');
    bound->add_option("--t", bound_t, "Subset size")->required();
    bound->add_option("--length2-links", bound_links, "Links between the two vertices of a length-2 ring (1 or 2)");
    detail::add_common(bound, common);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum perimeter over all t-subsets (|V| <= 28)");
    std::vector<Count> oracle_dims;
    Count oracle_t = 0;
    unsigned oracle_links = 1;
    Count oracle_budget = 100'000'000;
    unsigned oracle_workers = 1;
    bool oracle_no_prune = false;
    oracle->add_option("--dims", oracle_dims, "Torus dimension lengths")->required()->delimiter(',');
    oracle->add_option("--t", oracle_t, "Subset size")->required();
    oracle->add_option("--length2-links", oracle_links, "Links between the two vertices of a length-2 ring (1 or 2)");
    oracle->add_option("--budget", oracle_budget, "Maximum subsets to examine");
    oracle->add_option("--workers", oracle_workers, "Parallel enumeration workers")->check(CLI::Range(1, 64));
    oracle->add_flag("--no-prune", oracle_no_prune, "Disable translation-symmetry pruning");
    detail::add_common(oracle, common);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "List the cuboid geometries of a size that fit a machine");
    std::string enum_machine;
    Count enum_midplanes = 0;
    enumerate->add_option("--machine", enum_machine, "Builtin machine name or machine file")->required();
    enumerate->add_option("--midplanes", enum_midplanes, "Partition size in midplanes")->required();
    detail::add_common(enumerate, common);

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "Compare policy geometries with the best-bisection geometry");
    std::string audit_machine, audit_policy = "any";
    std::vector<Count> audit_sizes;
    bool audit_all = false, audit_check = false, audit_gbps = false;
    audit_cmd->add_option("--machine", audit_machine, "Builtin machine name or machine file")->required();
    audit_cmd->add_option("--policy", audit_policy, "Builtin policy (mira-2017, any) or policy file");
    audit_cmd->add_option("--sizes", audit_sizes, "Midplane counts to audit")->delimiter(',');
    audit_cmd->add_flag("--all-sizes", audit_all, "Audit every size for which some cuboid fits");
    audit_cmd->add_flag("--check-paper", audit_check, "Verify the report against the embedded golden table");
    audit_cmd->add_flag("--gbps", audit_gbps, "Report bandwidth in GB/s instead of links");
    detail::add_common(audit_cmd, common);

    // compare
    auto* compare = app.add_subcommand("compare", "Best-case partitions of several machines side by side");
    std::vector<std::string> compare_machines{"juqueen", "juqueen-54", "juqueen-48"};
    std::vector<Count> compare_sizes;
    bool compare_check = false, compare_gbps = false;
    compare->add_option("--machines", compare_machines, "Machines (builtin names or files)")->delimiter(',');
    compare->add_option("--sizes", compare_sizes, "Midplane counts (default: every size fitting some machine)")
        ->delimiter(',');
    compare->add_flag("--check-paper", compare_check, "Verify against the embedded golden comparison table");
    compare->add_flag("--gbps", compare_gbps, "Report bandwidth in GB/s instead of links");
    detail::add_common(compare, common);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Flow simulation of the furthest-node pairing benchmark");
    std::string sim_machine, sim_policy, sim_geometry, sim_versus, sim_csv_table = "runs";
    std::vector<Count> sim_sizes;
    sim::TrafficSpec traffic;
    simulate->add_option("--machine", sim_machine, "Builtin machine name or machine file (policy mode)");
    simulate->add_option("--policy", sim_policy, "Simulate policy vs best geometry for each size");
    simulate->add_option("--sizes", sim_sizes, "Midplane counts in policy mode")->delimiter(',');
    simulate->add_option("--geometry", sim_geometry, "Single partition geometry, e.g. 4x1x1x1");
    simulate->add_option("--versus", sim_versus, "Second geometry to compare with --geometry");
    simulate->add_option("--rounds", traffic.rounds_total, "Total rounds");
    simulate->add_option("--warmup", traffic.warmup_rounds, "Warm-up rounds excluded from the total");
    simulate->add_option("--message-gb", traffic.message_gb, "Message size in GB");
    simulate->add_option("--link-gbps", traffic.link_gbps_per_direction, "Link bandwidth per direction in GB/s");
    simulate->add_option("--csv-table", sim_csv_table, "Table emitted in CSV format")
        ->check(CLI::IsMember({"runs", "pairs"}));
    detail::add_common(simulate, common);

    // crosscheck
    auto* cross = app.add_subcommand("crosscheck", "Randomized enumeration and bound consistency checks");
    unsigned cross_seed = 1, cross_trials = 1000;
    cross->add_option("--seed", cross_seed, "Random seed");
    cross->add_option("--trials", cross_trials, "Trials per check");

    try {
        std::ranges::reverse(args);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << "torusiso 1.0.0\n";
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        const auto format = report::parse_format(common.format);
        detail::Sink sink(common.output, out);
        auto& o = sink.stream();

        if (*bound) {
            const TorusShape shape(bound_dims, detail::paired_links(bound_links));
            report::BoundReport r{{shape.dims().begin(), shape.dims().end()}, bound_links, bound_t,
                                  bound_general_torus(shape, bound_t)};
            report::render(o, r, format);
            return ok;
        }

        if (*oracle) {
            const TorusShape shape(oracle_dims, detail::paired_links(oracle_links));
            report::OracleReport r{{shape.dims().begin(), shape.dims().end()}, oracle_links, oracle_t, {}, {}, true};
            if (oracle_t >= 1 && oracle_t <= shape.vertex_count() / 2) {
                r.bound = bound_general_torus(shape, oracle_t).value;
            }
            int code = ok;
            try {
                r.oracle = brute_force_min_perimeter(shape, oracle_t,
                                                     OracleOptions{oracle_budget, oracle_workers, !oracle_no_prune});
            } catch (const BudgetExceededError& e) {
                r.oracle = e.partial();
                r.complete = false;
                err << "error: " << e.what() << '\n';
                code = budget;
            }
            report::render(o, r, format);
            return code;
        }

        if (*enumerate) {
            const auto machine = bgq::load_machine(enum_machine);
            const auto all = audit::enumerate_geometries(machine, enum_midplanes);
            if (format == report::Format::json) {
                report::Json list = report::Json::array();
                for (const auto& g : all) {
                    list.push_back({{"geometry", g.str()}, {"bw", bgq::partition_bisection_bw(g)}});
                }
                o << report::Json{{"kind", "enumeration"},
                                  {"machine", report::to_json(machine)},
                                  {"midplanes", enum_midplanes},
                                  {"geometries", list}}
                         .dump(2)
                  << '\n';
            } else {
                o << (format == report::Format::csv ? "geometry,bw\n" : "");
                for (const auto& g : all) {
                    o << g.str() << (format == report::Format::csv ? "," : "  ") << bgq::partition_bisection_bw(g)
                      << '\n';
                }
            }
            return ok;
        }

        if (*audit_cmd) {
            const auto machine = bgq::load_machine(audit_machine);
            const auto policy = audit::load_policy(audit_policy);
            const bool default_sizes = audit_sizes.empty() && !audit_all;
            auto sizes = audit_all ? audit::realizable_sizes(machine)
                         : audit_sizes.empty() ? audit::default_audit_sizes(machine, policy)
                                               : audit_sizes;
            const auto r = audit::audit(machine, policy, sizes);
            report::render(o, r, format, report::BandwidthUnit{audit_gbps, machine.link_capacity_gbps});
            if (audit_check) {
                const auto* table = golden::table_for(machine.name, policy.name);
                if (!table) {
                    err << "error: no golden table for machine " << machine.name << " with policy " << policy.name
                        << '\n';
                    return check_failed;
                }
                auto issues = golden::check_audit(r, *table, default_sizes);
                const auto* summary = table == &golden::mira_full() ? &golden::mira_summary()
                                                                    : &golden::juqueen_summary();
                std::size_t improved = 0;
                for (const auto& row : r.rows) improved += row.improves() ? 1 : 0;
                for (auto& s : golden::check_audit(r, *summary, false)) issues.push_back(std::move(s));
                if (default_sizes && improved != summary->lines.size()) {
                    issues.push_back("report improves " + std::to_string(improved) + " sizes, summary lists " +
                                     std::to_string(summary->lines.size()));
                }
                for (const auto& s : issues) err << "mismatch: " << s << '\n';
                err << "check-paper: " << table->title << ": "
                    << (issues.empty() ? "all rows reproduced" : std::to_string(issues.size()) + " mismatches")
                    << '\n';
                return issues.empty() ? ok : check_failed;
            }
            return ok;
        }

        if (*compare) {
            std::vector<bgq::MachineSpec> machines;
            for (const auto& name : compare_machines) machines.push_back(bgq::load_machine(name));
            const bool default_sizes = compare_sizes.empty();
            const auto sizes = default_sizes ? audit::default_comparison_sizes(machines) : compare_sizes;
            const auto r = audit::compare_machines(machines, sizes);
            report::render(o, r, format, compare_gbps);
            if (compare_check) {
                const auto issues = golden::check_comparison(r);
                for (const auto& s : issues) err << "mismatch: " << s << '\n';
                err << "check-paper: machine comparison: "
                    << (issues.empty() ? "all rows reproduced" : std::to_string(issues.size()) + " mismatches")
                    << '\n';
                return issues.empty() ? ok : check_failed;
            }
            return ok;
        }

        if (*simulate) {
            traffic.validate();
            report::SimulationReport r{traffic, {}, {}};
            auto add_run = [&](std::string label, const bgq::PartitionGeometry& g) {
                r.runs.push_back({std::move(label), g, sim::simulate_pairing_benchmark(g, traffic)});
                return r.runs.size() - 1;
            };
            auto add_pair = [&](Count size, std::size_t slow, std::size_t fast) {
                const auto bw_slow = bgq::partition_bisection_bw(r.runs[slow].geometry);
                const auto bw_fast = bgq::partition_bisection_bw(r.runs[fast].geometry);
                r.pairs.push_back({size, slow, fast, sim::time_ratio(r.runs[slow].flow, r.runs[fast].flow),
                                   Rational(bw_fast, bw_slow)});
            };
            if (!sim_geometry.empty()) {
                const auto a = add_run("geometry", bgq::parse_geometry(sim_geometry));
                if (!sim_versus.empty()) {
                    const auto g2 = bgq::parse_geometry(sim_versus);
                    if (g2.volume() != r.runs[a].geometry.volume()) {
                        throw DomainError("--versus geometry has a different midplane count");
                    }
                    add_pair(g2.volume(), a, add_run("versus", g2));
                }
            } else if (!sim_machine.empty()) {
                const auto machine = bgq::load_machine(sim_machine);
                const auto policy = audit::load_policy(sim_policy.empty() ? "any" : sim_policy);
                const auto rep = audit::audit(machine, policy,
                                              sim_sizes.empty() ? audit::default_audit_sizes(machine, policy)
                                                                : sim_sizes);
                const bool listed = policy.mode == audit::PolicyMode::explicit_list;
                for (const auto& row : rep.rows) {
                    const auto& ref = listed ? row.baseline_geometry : row.worst_geometry;
                    if (!ref || !row.best_geometry || *ref == *row.best_geometry) continue;
                    const auto slow = add_run(listed ? "current" : "worst", *ref);
                    const auto fast = add_run(listed ? "proposed" : "best", *row.best_geometry);
                    add_pair(row.midplanes, slow, fast);
                }
            } else {
                throw ParseError("simulate needs --geometry or --machine");
            }
            if (format == report::Format::csv && sim_csv_table == "runs") r.pairs.clear();
            report::render(o, r, format);
            return ok;
        }

        if (*cross) {
            return detail::crosscheck(cross_seed, cross_trials, out);
        }
    } catch (const BudgetExceededError& e) {
        err << "error: " << e.what() << '\n';
        return budget;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return domain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}

}  // namespace torusiso::cli

#endif  // TORUSISO_CLI_HPP
