#ifndef TORUSISO_CONTENTION_HPP
#define TORUSISO_CONTENTION_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "torusiso/bgq.hpp"
#include "torusiso/error.hpp"
#include "torusiso/torus.hpp"

namespace torusiso::sim {

/// Bisection-pairing benchmark parameters. Sizes in GB, rates in GB/s.
struct TrafficSpec {
    unsigned rounds_total = 30;
    unsigned warmup_rounds = 4;
    double message_gb = 0.1342;
    double link_gbps_per_direction = 2.0;

    unsigned counted_rounds() const { return rounds_total - warmup_rounds; }

    void validate() const
    {
        if (warmup_rounds >= rounds_total) {
            throw DomainError("warm-up rounds must be fewer than total rounds");
        }
        if (!(message_gb > 0)) {
            throw DomainError("message size must be positive");
        }
        if (!(link_gbps_per_direction > 0)) {
            throw DomainError("link bandwidth must be positive");
        }
    }
};

enum class Direction : unsigned { plus = 0, minus = 1 };

struct DirectedLink {
    Count source = 0;
    unsigned dim = 0;
    Direction dir = Direction::plus;
};

/// partner[v] is the vertex v exchanges messages with.
using Pairing = std::vector<Count>;

struct FlowResult {
    std::vector<Count> dims;
    PairedLinks length2 = PairedLinks::single;
    std::vector<double> link_load;    // GB per round, indexed by link_id
    std::vector<double> dim_max_load; // per dimension
    double bottleneck_load = 0.0;
    double predicted_round_time_s = 0.0;
    double predicted_total_time_s = 0.0;
    unsigned counted_rounds = 0;

    std::size_t link_id(const DirectedLink& link) const
    {
        Direction dir = link.dir;
        // A single link joins the two vertices of a length-2 ring; both
        // ring directions leaving a vertex use it.
        if (dims.at(link.dim) == 2 && length2 == PairedLinks::single) dir = Direction::plus;
        return (static_cast<std::size_t>(link.source) * dims.size() + link.dim) * 2 +
               static_cast<std::size_t>(dir);
    }

    double load(const DirectedLink& link) const { return link_load.at(link_id(link)); }

    double total_load() const
    {
        double sum = 0.0;
        for (double l : link_load) sum += l;
        return sum;
    }
};

/// Pairs every vertex with its antipode x + a_i/2 (mod a_i) in each
/// dimension. Requires all dimensions even.
inline Pairing furthest_pairing(const TorusShape& shape)
{
    for (Count d : shape.dims()) {
        if (d % 2 != 0) {
            throw UnsupportedPatternError("furthest-node pairing needs even dimensions, torus " +
                                          shape.str() + " has a dimension of length " + std::to_string(d));
        }
    }
    Pairing partner(shape.vertex_count());
    for (Count v = 0; v < shape.vertex_count(); ++v) {
        auto c = shape.coords(v);
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = (c[i] + shape.dim(i) / 2) % shape.dim(i);
        }
        partner[v] = shape.index(c);
    }
    return partner;
}

/// Hop distance between two vertices on the torus.
inline Count hop_distance(const TorusShape& shape, Count a, Count b)
{
    const auto ca = shape.coords(a);
    const auto cb = shape.coords(b);
    Count hops = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const Count len = shape.dim(i);
        const Count fwd = (cb[i] + len - ca[i]) % len;
        hops += std::min(fwd, len - fwd);
    }
    return hops;
}

/// Fluid model of one round: every vertex sends message_gb to its partner
/// along a dimension-ordered minimal route, longest dimension first. Where
/// both ring directions are equally short the flow splits evenly.
inline FlowResult route_flows(const TorusShape& shape, const Pairing& pairing, const TrafficSpec& traffic)
{
    traffic.validate();
    const Count n = shape.vertex_count();
    if (pairing.size() != n) {
        throw DomainError("pairing covers " + std::to_string(pairing.size()) + " vertices, torus has " +
                          std::to_string(n));
    }
    FlowResult out;
    out.dims.assign(shape.dims().begin(), shape.dims().end());
    out.length2 = shape.length2_links();
    out.link_load.assign(static_cast<std::size_t>(n) * shape.rank() * 2, 0.0);

    std::vector<Count> pos;
    for (Count src = 0; src < n; ++src) {
        const Count dst = pairing[src];
        if (dst >= n) {
            throw DomainError("pairing maps vertex " + std::to_string(src) + " outside the torus");
        }
        pos = shape.coords(src);
        const auto target = shape.coords(dst);
        for (unsigned i = 0; i < shape.rank(); ++i) {
            const Count len = shape.dim(i);
            const Count fwd = (target[i] + len - pos[i]) % len;
            if (fwd == 0) continue;
            const Count bwd = len - fwd;

            auto walk = [&](Direction dir, Count hops, double share) {
                auto at = pos;
                for (Count h = 0; h < hops; ++h) {
                    out.link_load[out.link_id({shape.index(at), i, dir})] += share * traffic.message_gb;
                    at[i] = dir == Direction::plus ? (at[i] + 1) % len : (at[i] + len - 1) % len;
                }
            };
            if (fwd < bwd) {
                walk(Direction::plus, fwd, 1.0);
            } else if (bwd < fwd) {
                walk(Direction::minus, bwd, 1.0);
            } else {
                walk(Direction::plus, fwd, 0.5);
                walk(Direction::minus, bwd, 0.5);
            }
            pos[i] = target[i];
        }
    }

    out.dim_max_load.assign(shape.rank(), 0.0);
    for (std::size_t id = 0; id < out.link_load.size(); ++id) {
        const auto dim = (id / 2) % shape.rank();
        out.dim_max_load[dim] = std::max(out.dim_max_load[dim], out.link_load[id]);
    }
    out.bottleneck_load = *std::ranges::max_element(out.dim_max_load);
    out.predicted_round_time_s = out.bottleneck_load / traffic.link_gbps_per_direction;
    out.counted_rounds = traffic.counted_rounds();
    out.predicted_total_time_s = out.counted_rounds * out.predicted_round_time_s;
    return out;
}

/// Furthest-node pairing benchmark on a Blue Gene/Q partition.
inline FlowResult simulate_pairing_benchmark(const bgq::PartitionGeometry& geometry, const TrafficSpec& traffic)
{
    const auto shape = bgq::node_shape(geometry);
    return route_flows(shape, furthest_pairing(shape), traffic);
}

/// Completion-time ratio slow/fast; > 1 when `fast` finishes first.
inline double time_ratio(const FlowResult& slow, const FlowResult& fast)
{
    return slow.predicted_total_time_s / fast.predicted_total_time_s;
}

}  // namespace torusiso::sim

#endif  // TORUSISO_CONTENTION_HPP
