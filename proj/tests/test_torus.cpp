#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "torusiso/torus.hpp"

namespace ts = torusiso::testing;
using torusiso::Count;
using torusiso::CuboidRegion;
using torusiso::PairedLinks;
using torusiso::Rational;
using torusiso::TorusShape;

namespace {

std::vector<std::size_t> to_size(std::span<const Count> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Canonicalize, SortsNonIncreasing)
{
    EXPECT_EQ(to_size(torusiso::canonicalize({2, 4, 1, 4}).dims()), (std::vector<std::size_t>{4, 4, 2, 1}));
    EXPECT_EQ(to_size(torusiso::canonicalize({16, 16, 12, 8, 2}).dims()),
              (std::vector<std::size_t>{16, 16, 12, 8, 2}));
    EXPECT_EQ(to_size(torusiso::canonicalize({1}).dims()), (std::vector<std::size_t>{1}));
}

TEST(Canonicalize, Idempotent)
{
    const auto once = torusiso::canonicalize({3, 7, 2, 5});
    const auto twice = torusiso::canonicalize({once.dims().begin(), once.dims().end()});
    EXPECT_EQ(once, twice);
}

TEST(Canonicalize, RejectsEmptyAndZero)
{
    EXPECT_THROW(torusiso::canonicalize({}), torusiso::InvalidShapeError);
    EXPECT_THROW(torusiso::canonicalize({4, 0, 2}), torusiso::InvalidShapeError);
}

TEST(Canonicalize, RejectsOverflowingVertexCount)
{
    EXPECT_THROW(torusiso::canonicalize({1ULL << 40, 1ULL << 40}), torusiso::InvalidShapeError);
}

TEST(TorusShape, DegreeCountsLinksPerDimension)
{
    EXPECT_EQ(TorusShape({5, 5, 5}).degree(), 6u);
    EXPECT_EQ(TorusShape({4, 4, 4, 4, 2}, PairedLinks::single).degree(), 9u);
    EXPECT_EQ(TorusShape({4, 4, 4, 4, 2}, PairedLinks::doubled).degree(), 10u);
    EXPECT_EQ(TorusShape({4, 1, 1, 1}).degree(), 2u);
}

TEST(CuboidRegion, RejectsSidesThatDoNotFit)
{
    const TorusShape host({4, 4});
    EXPECT_THROW(CuboidRegion(host, {5, 1}), torusiso::InvalidShapeError);
    EXPECT_THROW(CuboidRegion(host, {0, 1}), torusiso::InvalidShapeError);
    EXPECT_THROW(CuboidRegion(host, {2}), torusiso::InvalidShapeError);
}

TEST(CuboidCutSize, BlueGeneQHalfPartitions)
{
    // 3x2x1x1 midplanes: best half vs. a half with 1.5-midplane side.
    const TorusShape a({12, 4, 4, 4, 2}, PairedLinks::doubled);
    EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion(a, {6, 4, 4, 4, 2})), 256u);
    const TorusShape b({8, 6, 4, 4, 2}, PairedLinks::doubled);
    EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion(b, {4, 6, 4, 4, 2})), 384u);
}

TEST(CuboidCutSize, WholeHostHasNoBoundary)
{
    const TorusShape host({7, 3, 2});
    EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion(host, {7, 3, 2})), 0u);
}

TEST(CuboidCutSize, SquareInFourByFour)
{
    const TorusShape host({4, 4});
    EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion(host, {2, 2})), 8u);
    // 8 is also the minimum over all 4-subsets.
    EXPECT_EQ(ts::min_perimeter_all_subsets(ts::torus_edges({4, 4}, 1), 4), 8u);
}

TEST(CuboidCutSize, LengthTwoConvention)
{
    EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion(TorusShape({4, 2}, PairedLinks::single), {4, 1})), 4u);
    EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion(TorusShape({4, 2}, PairedLinks::doubled), {4, 1})), 8u);
}

TEST(CutAccount, Examples)
{
    const auto square = torusiso::cut_account(CuboidRegion(TorusShape({4, 4}), {2, 2}));
    EXPECT_EQ(square, (torusiso::CutAccount{4, 8, 4}));
    const auto c = ts::count_edges(ts::torus_edges({4, 4}, 1), ts::corner_cuboid({4, 4}, {2, 2}));
    EXPECT_EQ(c.interior, 4u);
    EXPECT_EQ(c.perimeter, 8u);

    EXPECT_EQ(torusiso::cut_account(CuboidRegion(TorusShape({5, 5, 5}), {1, 1, 1})),
              (torusiso::CutAccount{0, 6, 6}));
    EXPECT_EQ(torusiso::cut_account(CuboidRegion(TorusShape({4, 4}), {4, 4})), (torusiso::CutAccount{32, 0, 4}));
}

TEST(SmallSetExpansion, Examples)
{
    EXPECT_EQ(torusiso::small_set_expansion_of(CuboidRegion(TorusShape({5, 5}), {1, 1})), Rational(1, 1));
    EXPECT_EQ(torusiso::small_set_expansion_of(CuboidRegion(TorusShape({4, 4}), {2, 2})), Rational(8, 12));
}

TEST(SmallSetExpansion, HalfMidplaneUnderBothConventions)
{
    // Reference counts by direct edge enumeration on the 512-vertex midplane:
    // single links: interior 1024, perimeter 256; doubled: 1024 and 512.
    for (unsigned links : {1u, 2u}) {
        const auto g = ts::torus_edges({4, 4, 4, 4, 2}, links);
        const auto c = ts::count_edges(g, ts::corner_cuboid({4, 4, 4, 4, 2}, {4, 4, 4, 4, 1}));
        const CuboidRegion region(TorusShape({4, 4, 4, 4, 2}, static_cast<PairedLinks>(links)), {4, 4, 4, 4, 1});
        EXPECT_EQ(torusiso::small_set_expansion_of(region), Rational(c.perimeter, c.interior + c.perimeter));
    }
    EXPECT_EQ(torusiso::small_set_expansion_of(
                  CuboidRegion(TorusShape({4, 4, 4, 4, 2}, PairedLinks::single), {4, 4, 4, 4, 1})),
              Rational(1, 5));
    EXPECT_EQ(torusiso::small_set_expansion_of(
                  CuboidRegion(TorusShape({4, 4, 4, 4, 2}, PairedLinks::doubled), {4, 4, 4, 4, 1})),
              Rational(1, 3));
}

// k|A| = 2 interior + perimeter, with both sides checked against direct
// edge enumeration, for every cuboid of a set of hosts up to 4096 vertices.
TEST(CutAccountProperty, RegularityIdentityMatchesEdgeEnumeration)
{
    const std::vector<std::vector<std::size_t>> hosts{
        {3}, {4}, {2}, {5, 3}, {4, 4}, {6, 2}, {2, 2}, {3, 3, 3}, {4, 2, 2}, {2, 2, 2, 2},
        {5, 4, 1}, {8, 8, 4}, {4, 4, 4, 4, 2}, {16, 4, 4, 4}, {6, 5, 4, 3}, {7, 1, 1},
    };
    std::size_t checked = 0;
    for (const auto& dims : hosts) {
        for (unsigned links : {1u, 2u}) {
            const TorusShape host(std::vector<Count>(dims.begin(), dims.end()), static_cast<PairedLinks>(links));
            ASSERT_LE(host.vertex_count(), 4096u);
            const auto g = ts::torus_edges(dims, links);
            ts::for_each_cuboid(dims, [&](const std::vector<std::size_t>& sides) {
                const CuboidRegion region(host, std::vector<Count>(sides.begin(), sides.end()));
                const auto acc = torusiso::cut_account(region);
                const auto ref = ts::count_edges(g, ts::corner_cuboid(dims, sides));
                ASSERT_EQ(acc.perimeter_edges, ref.perimeter) << host.str() << " / " << region.str();
                ASSERT_EQ(acc.interior_edges, ref.interior) << host.str() << " / " << region.str();
                ASSERT_EQ(static_cast<Count>(acc.degree) * region.volume(),
                          2 * acc.interior_edges + acc.perimeter_edges);
                ++checked;
            });
        }
    }
    EXPECT_GT(checked, 1000u);
}

TEST(CuboidCutSizeProperty, RotationInvariant)
{
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t rank = 1 + rng() % 5;
        std::vector<Count> dims(rank), sides(rank);
        for (std::size_t i = 0; i < rank; ++i) {
            dims[i] = 1 + rng() % 9;
            sides[i] = 1 + rng() % dims[i];
        }
        const auto links = (rng() & 1) ? PairedLinks::doubled : PairedLinks::single;
        const auto base = torusiso::cuboid_cut_size(CuboidRegion::from_pairs(dims, sides, links));

        std::vector<std::size_t> perm(rank);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Count> pd, ps;
        for (auto p : perm) {
            pd.push_back(dims[p]);
            ps.push_back(sides[p]);
        }
        EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion::from_pairs(pd, ps, links)), base);
    }
}

TEST(CuboidCutSizeProperty, ComplementAlongOneDimension)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t rank = 1 + rng() % 4;
        std::vector<Count> dims(rank), sides(rank);
        for (std::size_t i = 0; i < rank; ++i) {
            dims[i] = 2 + rng() % 8;
            sides[i] = 1 + rng() % dims[i];
        }
        const TorusShape host(dims, PairedLinks::doubled);
        std::vector<Count> s(host.dims().size());
        for (std::size_t i = 0; i < rank; ++i) s[i] = 1 + rng() % host.dim(i);
        // Complement is a cuboid when all other dimensions are covered.
        const std::size_t free = rng() % rank;
        for (std::size_t i = 0; i < rank; ++i) {
            if (i != free) s[i] = host.dim(i);
        }
        if (s[free] == host.dim(free)) continue;
        auto c = s;
        c[free] = host.dim(free) - s[free];
        EXPECT_EQ(torusiso::cuboid_cut_size(CuboidRegion(host, s)), torusiso::cuboid_cut_size(CuboidRegion(host, c)));
    }
}

// Growing one side while another dimension stays uncovered never raises
// the perimeter per vertex.
TEST(CuboidCutSizeProperty, GrowingASideLowersPerimeterShare)
{
    const TorusShape host({9, 7, 5, 2}, PairedLinks::doubled);
    std::size_t checked = 0;
    ts::for_each_cuboid({9, 7, 5, 2}, [&](const std::vector<std::size_t>& sides) {
        const CuboidRegion r(host, {sides.begin(), sides.end()});
        for (std::size_t i = 0; i < 4; ++i) {
            if (r.covers(i)) continue;
            auto grown = std::vector<Count>(sides.begin(), sides.end());
            ++grown[i];
            const CuboidRegion g(host, grown);
            bool other_uncovered = false;
            for (std::size_t j = 0; j < 4; ++j) other_uncovered = other_uncovered || (j != i && !g.covers(j));
            if (!other_uncovered) continue;
            // cut(g)/|g| <= cut(r)/|r|, cross-multiplied
            EXPECT_LE(torusiso::cuboid_cut_size(g) * r.volume(), torusiso::cuboid_cut_size(r) * g.volume());
            ++checked;
        }
    });
    EXPECT_GT(checked, 100u);
}
