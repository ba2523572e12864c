#include <gtest/gtest.h>

#include "torusiso/contention.hpp"
#include "torusiso/policy_audit.hpp"

namespace bgq = torusiso::bgq;
namespace sim = torusiso::sim;
using bgq::PartitionGeometry;
using torusiso::Count;
using torusiso::PairedLinks;
using torusiso::TorusShape;

namespace {

// Load on each directed link of an isolated ring of length `len` whose
// vertices all send one message to the antipode, counted hop by hop.
std::vector<double> ring_loads(Count len, bool doubled)
{
    std::vector<double> plus(len, 0.0), minus(len, 0.0);
    for (Count s = 0; s < len; ++s) {
        for (Count h = 0; h < len / 2; ++h) {
            plus[(s + h) % len] += 0.5;
            minus[(s + len - h) % len] += 0.5;
        }
    }
    if (len == 2 && !doubled) {
        for (Count v = 0; v < len; ++v) plus[v] += minus[v];
        return plus;
    }
    plus.insert(plus.end(), minus.begin(), minus.end());
    return plus;
}

double ratio(const PartitionGeometry& slow, const PartitionGeometry& fast)
{
    const sim::TrafficSpec traffic;
    return sim::time_ratio(sim::simulate_pairing_benchmark(slow, traffic),
                           sim::simulate_pairing_benchmark(fast, traffic));
}

}  // namespace

TEST(FurthestPairing, Examples)
{
    const TorusShape ring({4});
    EXPECT_EQ(sim::furthest_pairing(ring), (sim::Pairing{2, 3, 0, 1}));
    const TorusShape square({4, 2});
    // vertex (0,0) -> (2,1)
    EXPECT_EQ(sim::furthest_pairing(square)[0], square.index(std::vector<Count>{2, 1}));
}

TEST(FurthestPairing, IsAFixedPointFreeInvolution)
{
    const auto shape = bgq::node_shape(PartitionGeometry(2, 1, 1, 1));
    const auto p = sim::furthest_pairing(shape);
    for (Count v = 0; v < p.size(); ++v) {
        EXPECT_NE(p[v], v);
        EXPECT_EQ(p[p[v]], v);
        Count expected = 0;
        for (Count d : shape.dims()) expected += d / 2;
        EXPECT_EQ(sim::hop_distance(shape, v, p[v]), expected);
    }
}

TEST(FurthestPairing, RejectsOddDimensions)
{
    EXPECT_THROW(sim::furthest_pairing(TorusShape({4, 3})), torusiso::UnsupportedPatternError);
    EXPECT_THROW(sim::furthest_pairing(TorusShape({4, 1})), torusiso::UnsupportedPatternError);
}

TEST(RouteFlows, PerLinkLoadsMatchRingCount)
{
    const sim::TrafficSpec traffic;
    for (const auto& g : {PartitionGeometry(4, 1, 1, 1), PartitionGeometry(2, 2, 1, 1), PartitionGeometry(3, 2, 1, 1)}) {
        const auto flow = sim::simulate_pairing_benchmark(g, traffic);
        const auto shape = bgq::node_shape(g);
        for (unsigned i = 0; i < shape.rank(); ++i) {
            const auto ring = ring_loads(shape.dim(i), true);
            // every ring link carries the same load, so compare against its first entry
            for (double l : ring) ASSERT_EQ(l, ring[0]);
            for (Count v = 0; v < shape.vertex_count(); ++v) {
                for (auto dir : {sim::Direction::plus, sim::Direction::minus}) {
                    ASSERT_NEAR(flow.load({v, i, dir}), ring[0] * traffic.message_gb, 1e-12)
                        << g.str() << " dim " << i;
                }
            }
        }
    }
}

TEST(RouteFlows, DimensionMaxima)
{
    const sim::TrafficSpec traffic;
    const double msg = traffic.message_gb;
    const auto ring = sim::simulate_pairing_benchmark(PartitionGeometry(4, 1, 1, 1), traffic);
    EXPECT_NEAR(ring.bottleneck_load, 4 * msg, 1e-12);
    EXPECT_NEAR(ring.dim_max_load[1], msg, 1e-12);
    EXPECT_NEAR(ring.dim_max_load[4], 0.5 * msg, 1e-12);
    EXPECT_NEAR(sim::simulate_pairing_benchmark(PartitionGeometry(2, 2, 1, 1), traffic).bottleneck_load, 2 * msg,
                1e-12);
    const TorusShape four({4});
    EXPECT_NEAR(sim::route_flows(four, sim::furthest_pairing(four), traffic).bottleneck_load, msg, 1e-12);
}

TEST(RouteFlows, SingleLengthTwoLinkCarriesBothDirections)
{
    const sim::TrafficSpec traffic;
    const TorusShape single({4, 2}, PairedLinks::single);
    const auto flow = sim::route_flows(single, sim::furthest_pairing(single), traffic);
    EXPECT_NEAR(flow.dim_max_load[1], ring_loads(2, false)[0] * traffic.message_gb, 1e-12);
    EXPECT_EQ(flow.link_id({0, 1, sim::Direction::minus}), flow.link_id({0, 1, sim::Direction::plus}));

    const TorusShape doubled({4, 2}, PairedLinks::doubled);
    const auto flow2 = sim::route_flows(doubled, sim::furthest_pairing(doubled), traffic);
    EXPECT_NEAR(flow2.dim_max_load[1], ring_loads(2, true)[0] * traffic.message_gb, 1e-12);
}

TEST(RouteFlows, ConservesFlow)
{
    const sim::TrafficSpec traffic;
    for (const auto& dims : std::vector<std::vector<Count>>{{4}, {6, 4}, {8, 4, 2}, {6, 6, 2, 2}}) {
        for (auto links : {PairedLinks::single, PairedLinks::doubled}) {
            const TorusShape shape(dims, links);
            const auto p = sim::furthest_pairing(shape);
            const auto flow = sim::route_flows(shape, p, traffic);
            double hops = 0;
            for (Count v = 0; v < shape.vertex_count(); ++v) hops += static_cast<double>(sim::hop_distance(shape, v, p[v]));
            EXPECT_NEAR(flow.total_load(), hops * traffic.message_gb, 1e-9) << shape.str();
        }
    }
}

TEST(RouteFlows, ArbitraryPairingAndErrors)
{
    const sim::TrafficSpec traffic;
    const TorusShape ring({5});
    // 0 -> 2 goes plus twice, 2 -> 0 goes minus twice; the rest stay put.
    const auto flow = sim::route_flows(ring, {2, 1, 0, 3, 4}, traffic);
    EXPECT_NEAR(flow.load({0, 0, sim::Direction::plus}), traffic.message_gb, 1e-12);
    EXPECT_NEAR(flow.load({1, 0, sim::Direction::plus}), traffic.message_gb, 1e-12);
    EXPECT_NEAR(flow.load({2, 0, sim::Direction::minus}), traffic.message_gb, 1e-12);
    EXPECT_NEAR(flow.total_load(), 4 * traffic.message_gb, 1e-12);
    EXPECT_THROW(sim::route_flows(ring, {0, 1}, traffic), torusiso::DomainError);
    EXPECT_THROW(sim::route_flows(ring, {0, 1, 2, 3, 9}, traffic), torusiso::DomainError);
}

TEST(RouteFlows, Deterministic)
{
    const sim::TrafficSpec traffic;
    const auto a = sim::simulate_pairing_benchmark(PartitionGeometry(3, 2, 2, 1), traffic);
    const auto b = sim::simulate_pairing_benchmark(PartitionGeometry(3, 2, 2, 1), traffic);
    EXPECT_EQ(a.link_load, b.link_load);
}

TEST(TrafficSpec, Validation)
{
    sim::TrafficSpec t;
    EXPECT_EQ(t.counted_rounds(), 26u);
    t.warmup_rounds = 30;
    EXPECT_THROW(t.validate(), torusiso::DomainError);
    t = {};
    t.message_gb = 0;
    EXPECT_THROW(t.validate(), torusiso::DomainError);
    t = {};
    t.link_gbps_per_direction = -1;
    EXPECT_THROW(t.validate(), torusiso::DomainError);
}

TEST(PredictedTime, FourMidplaneRing)
{
    const sim::TrafficSpec traffic;
    const auto flow = sim::simulate_pairing_benchmark(PartitionGeometry(4, 1, 1, 1), traffic);
    EXPECT_NEAR(flow.predicted_round_time_s, 4 * 0.1342 / 2.0, 1e-12);
    EXPECT_NEAR(flow.predicted_total_time_s, 26 * 4 * 0.1342 / 2.0, 1e-9);
}

TEST(TimeRatio, CurrentVersusProposed)
{
    EXPECT_NEAR(ratio(PartitionGeometry(4, 1, 1, 1), PartitionGeometry(2, 2, 1, 1)), 2.0, 1e-12);
    EXPECT_NEAR(ratio(PartitionGeometry(4, 2, 1, 1), PartitionGeometry(2, 2, 2, 1)), 2.0, 1e-12);
    EXPECT_NEAR(ratio(PartitionGeometry(4, 4, 1, 1), PartitionGeometry(2, 2, 2, 2)), 2.0, 1e-12);
    EXPECT_NEAR(ratio(PartitionGeometry(6, 1, 1, 1), PartitionGeometry(3, 2, 1, 1)), 2.0, 1e-12);
    EXPECT_NEAR(ratio(PartitionGeometry(6, 2, 1, 1), PartitionGeometry(3, 2, 2, 1)), 2.0, 1e-12);
    EXPECT_NEAR(ratio(PartitionGeometry(4, 3, 2, 1), PartitionGeometry(3, 2, 2, 2)), 4.0 / 3.0, 1e-12);
}

// The bottleneck sits on the longest ring, so the time ratio equals the
// inverse ratio of bisection bandwidths whenever the partitions have equal size.
TEST(TimeRatio, EqualsBisectionRatioForEqualSizes)
{
    const auto mira = *bgq::find_builtin_machine("mira");
    for (Count v : {2u, 4u, 6u, 8u, 12u}) {
        const auto all = torusiso::audit::enumerate_geometries(mira, v);
        for (const auto& slow : all) {
            for (const auto& fast : all) {
                const double expected = static_cast<double>(bgq::partition_bisection_bw(fast)) /
                                        static_cast<double>(bgq::partition_bisection_bw(slow));
                EXPECT_NEAR(ratio(slow, fast), expected, 1e-12) << slow.str() << " vs " << fast.str();
            }
        }
    }
}
