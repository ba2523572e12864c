#ifndef TORUSISO_BGQ_HPP
#define TORUSISO_BGQ_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "torusiso/error.hpp"
#include "torusiso/torus.hpp"

namespace torusiso::bgq {

inline constexpr Count nodes_per_midplane = 512;
inline constexpr std::array<Count, 5> midplane_node_shape{4, 4, 4, 4, 2};

/// A cuboid of midplanes, dimensions in non-increasing order.
class PartitionGeometry {
public:
    PartitionGeometry() = default;

    explicit PartitionGeometry(std::array<Count, 4> midplanes) : dims_(midplanes)
    {
        if (std::ranges::any_of(dims_, [](Count d) { return d == 0; })) {
            throw InvalidShapeError("partition dimension of length 0");
        }
        std::ranges::sort(dims_, std::greater<>{});
    }

    PartitionGeometry(Count a, Count b, Count c, Count d) : PartitionGeometry(std::array<Count, 4>{a, b, c, d}) {}

    const std::array<Count, 4>& dims() const noexcept { return dims_; }
    Count longest() const noexcept { return dims_[0]; }
    Count volume() const noexcept { return dims_[0] * dims_[1] * dims_[2] * dims_[3]; }

    std::string str() const { return detail::join_dims(dims_); }

    friend auto operator<=>(const PartitionGeometry&, const PartitionGeometry&) = default;

private:
    std::array<Count, 4> dims_{1, 1, 1, 1};
};

/// Parses "4x1x1x1" (also accepts ',' or spaces as separators, and fewer
/// than four entries, padding with 1).
inline PartitionGeometry parse_geometry(std::string_view text)
{
    std::array<Count, 4> dims{1, 1, 1, 1};
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == 'x' || c == 'X' || c == ',' || c == '*' || std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        Count value = 0;
        const auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{} || end == text.data() + pos) {
            throw ParseError("bad geometry '" + std::string(text) + "'");
        }
        if (n == 4) {
            throw ParseError("geometry '" + std::string(text) + "' has more than 4 dimensions");
        }
        dims[n++] = value;
        pos = static_cast<std::size_t>(end - text.data());
    }
    if (n == 0) {
        throw ParseError("empty geometry");
    }
    return PartitionGeometry(dims);
}

struct MachineSpec {
    std::string name;
    PartitionGeometry midplane_grid;
    double link_capacity_gbps = 2.0;

    Count midplanes() const noexcept { return midplane_grid.volume(); }
    Count total_nodes() const noexcept { return nodes_per_midplane * midplanes(); }
};

/// Normalized internal bisection 2 N / L of a partition (B = 1): with
/// N = 512 V nodes and longest node dimension L = 4 a1 this is 256 V / a1.
inline Count partition_bisection_bw(const PartitionGeometry& g)
{
    return 2 * (nodes_per_midplane * g.volume()) / (midplane_node_shape[0] * g.longest());
}

inline double bandwidth_gbps(Count links, const MachineSpec& machine)
{
    return static_cast<double>(links) * machine.link_capacity_gbps;
}

/// Node-level torus of a partition: (4a1, 4a2, 4a3, 4a4, 2). Blue Gene/Q
/// joins the paired nodes of the internal dimension with two links.
inline TorusShape node_shape(const PartitionGeometry& g, PairedLinks length2 = PairedLinks::doubled)
{
    std::vector<Count> dims;
    for (std::size_t i = 0; i < 4; ++i) {
        dims.push_back(midplane_node_shape[i] * g.dims()[i]);
    }
    dims.push_back(midplane_node_shape[4]);
    return TorusShape(std::move(dims), length2);
}

/// Sorted-sequence domination: equivalent to some axis assignment fitting.
inline bool fits(const MachineSpec& machine, const PartitionGeometry& g)
{
    for (std::size_t i = 0; i < 4; ++i) {
        if (g.dims()[i] > machine.midplane_grid.dims()[i]) return false;
    }
    return true;
}

/// Midplane count for a node count. Sub-midplane allocations are not modeled.
inline Count midplanes_for_nodes(Count nodes)
{
    if (nodes < nodes_per_midplane || nodes % nodes_per_midplane != 0) {
        throw DomainError(std::to_string(nodes) +
                          " nodes is not a whole number of midplanes; sub-midplane partitions "
                          "are not modeled");
    }
    return nodes / nodes_per_midplane;
}

inline const std::vector<MachineSpec>& builtin_machines()
{
    static const std::vector<MachineSpec> machines{
        {"mira", PartitionGeometry(4, 4, 3, 2), 2.0},
        {"juqueen", PartitionGeometry(7, 2, 2, 2), 2.0},
        {"sequoia", PartitionGeometry(4, 4, 4, 3), 2.0},
        {"juqueen-54", PartitionGeometry(3, 3, 3, 2), 2.0},
        {"juqueen-48", PartitionGeometry(4, 3, 2, 2), 2.0},
    };
    return machines;
}

inline std::string lowercase(std::string_view s)
{
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline std::optional<MachineSpec> find_builtin_machine(std::string_view name)
{
    const auto key = lowercase(name);
    for (const auto& m : builtin_machines()) {
        if (m.name == key) return m;
    }
    // Short aliases used in comparison tables.
    if (key == "j-54" || key == "juqueen54") return find_builtin_machine("juqueen-54");
    if (key == "j-48" || key == "juqueen48") return find_builtin_machine("juqueen-48");
    return std::nullopt;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Machine file: '#' comments, one "key = value" per line.
///
///     name = mira
///     grid = 4x4x3x2
///     link_capacity_gbps = 2      # optional, defaults to 2
inline MachineSpec parse_machine(std::istream& in)
{
    MachineSpec spec;
    bool have_name = false;
    bool have_grid = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("machine file line " + std::to_string(lineno) + ": expected key = value");
        }
        const auto key = lowercase(trim(view.substr(0, eq)));
        const auto value = trim(view.substr(eq + 1));
        if (key == "name") {
            spec.name = std::string(value);
            have_name = true;
        } else if (key == "grid") {
            spec.midplane_grid = parse_geometry(value);
            have_grid = true;
        } else if (key == "link_capacity_gbps" || key == "link_capacity") {
            try {
                std::size_t used = 0;
                spec.link_capacity_gbps = std::stod(std::string(value), &used);
                if (used != value.size() || spec.link_capacity_gbps <= 0) throw ParseError("");
            } catch (const std::exception&) {
                throw ParseError("machine file line " + std::to_string(lineno) +
                                 ": link capacity must be a positive number");
            }
        } else {
            throw ParseError("machine file line " + std::to_string(lineno) + ": unknown key '" +
                             key + "'");
        }
    }
    if (!have_name || !have_grid) {
        throw ParseError("machine file needs both 'name' and 'grid'");
    }
    return spec;
}

/// Builtin name, or a path to a machine file.
inline MachineSpec load_machine(std::string_view source)
{
    if (auto m = find_builtin_machine(source)) return *m;
    std::ifstream in{std::string(source)};
    if (!in) {
        throw ParseError("unknown machine '" + std::string(source) +
                         "' (not a builtin name or readable file)");
    }
    return parse_machine(in);
}

}  // namespace torusiso::bgq

#endif  // TORUSISO_BGQ_HPP
