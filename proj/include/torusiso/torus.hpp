#ifndef TORUSISO_TORUS_HPP
#define TORUSISO_TORUS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torusiso/error.hpp"
#include "torusiso/rational.hpp"

namespace torusiso {

using Count = std::uint64_t;

/// How many parallel links join the two vertices of a length-2 ring.
///
/// A ring of length 2 is a single edge in the hypercube treatment, but Blue
/// Gene/Q wires both ring directions, giving two physical links per pair.
enum class PairedLinks : unsigned { single = 1, doubled = 2 };

namespace detail {

inline Count checked_mul(Count a, Count b)
{
    Count out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw InvalidShapeError("vertex count overflows 64 bits");
    }
    return out;
}

inline std::string join_dims(std::span<const Count> dims)
{
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += 'x';
        out += std::to_string(dims[i]);
    }
    return out;
}

}  // namespace detail

/// D-dimensional torus with dimension lengths kept in non-increasing order.
class TorusShape {
public:
    explicit TorusShape(std::vector<Count> dims, PairedLinks length2 = PairedLinks::single)
        : dims_(std::move(dims)), length2_(length2)
    {
        if (dims_.empty()) {
            throw InvalidShapeError("torus needs at least one dimension");
        }
        if (std::ranges::any_of(dims_, [](Count d) { return d == 0; })) {
            throw InvalidShapeError("torus dimension of length 0");
        }
        std::ranges::sort(dims_, std::greater<>{});
        vertices_ = 1;
        for (Count d : dims_) {
            vertices_ = detail::checked_mul(vertices_, d);
        }
    }

    std::span<const Count> dims() const noexcept { return dims_; }
    Count dim(std::size_t i) const { return dims_.at(i); }
    std::size_t rank() const noexcept { return dims_.size(); }
    Count vertex_count() const noexcept { return vertices_; }
    PairedLinks length2_links() const noexcept { return length2_; }

    /// Links each vertex has along dimension i: 2 on rings of length >= 3,
    /// the configured multiplicity on length-2 rings, none on length 1.
    unsigned links_in_dim(std::size_t i) const
    {
        const Count len = dims_.at(i);
        if (len == 1) return 0;
        if (len == 2) return static_cast<unsigned>(length2_);
        return 2;
    }

    unsigned degree() const
    {
        unsigned k = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            k += links_in_dim(i);
        }
        return k;
    }

    bool is_cubic() const noexcept
    {
        return std::ranges::all_of(dims_, [&](Count d) { return d == dims_.front(); });
    }

    /// Row-major coordinates (last dimension fastest).
    std::vector<Count> coords(Count index) const
    {
        std::vector<Count> c(dims_.size());
        for (std::size_t i = dims_.size(); i-- > 0;) {
            c[i] = index % dims_[i];
            index /= dims_[i];
        }
        return c;
    }

    Count index(std::span<const Count> coords) const
    {
        Count idx = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            idx = idx * dims_[i] + coords[i];
        }
        return idx;
    }

    std::string str() const { return detail::join_dims(dims_); }

    friend bool operator==(const TorusShape&, const TorusShape&) = default;

private:
    std::vector<Count> dims_;
    PairedLinks length2_;
    Count vertices_ = 1;
};

inline TorusShape canonicalize(std::vector<Count> dims, PairedLinks length2 = PairedLinks::single)
{
    return TorusShape(std::move(dims), length2);
}

/// Axis-aligned sub-cuboid of a torus. sides[i] pairs with host.dim(i).
class CuboidRegion {
public:
    CuboidRegion(TorusShape host, std::vector<Count> sides)
        : host_(std::move(host)), sides_(std::move(sides))
    {
        if (sides_.size() != host_.rank()) {
            throw InvalidShapeError("cuboid has " + std::to_string(sides_.size()) +
                                    " sides for a " + std::to_string(host_.rank()) +
                                    "-dimensional host");
        }
        volume_ = 1;
        for (std::size_t i = 0; i < sides_.size(); ++i) {
            if (sides_[i] == 0 || sides_[i] > host_.dim(i)) {
                throw InvalidShapeError("cuboid side " + std::to_string(sides_[i]) +
                                        " does not fit host dimension " +
                                        std::to_string(host_.dim(i)));
            }
            volume_ *= sides_[i];
        }
    }

    /// Builds a region from (dimension, side) pairs in any order; the pairs
    /// are sorted jointly so the host comes out canonical.
    static CuboidRegion from_pairs(std::span<const Count> dims, std::span<const Count> sides,
                                   PairedLinks length2 = PairedLinks::single)
    {
        if (dims.size() != sides.size()) {
            throw InvalidShapeError("dimension and side lists differ in length");
        }
        std::vector<std::pair<Count, Count>> pairs;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            pairs.emplace_back(dims[i], sides[i]);
        }
        std::ranges::stable_sort(pairs, std::greater<>{}, &std::pair<Count, Count>::first);
        std::vector<Count> d, s;
        for (auto [len, side] : pairs) {
            d.push_back(len);
            s.push_back(side);
        }
        return CuboidRegion(TorusShape(std::move(d), length2), std::move(s));
    }

    const TorusShape& host() const noexcept { return host_; }
    std::span<const Count> sides() const noexcept { return sides_; }
    Count side(std::size_t i) const { return sides_.at(i); }
    Count volume() const noexcept { return volume_; }

    bool covers(std::size_t i) const { return sides_.at(i) == host_.dim(i); }

    std::string str() const { return detail::join_dims(sides_); }

    friend bool operator==(const CuboidRegion&, const CuboidRegion&) = default;

private:
    TorusShape host_;
    std::vector<Count> sides_;
    Count volume_ = 1;
};

/// |E(S, S-bar)| for a cuboid S, counted face by face: every uncovered
/// dimension contributes (links per vertex in that dimension) times the size
/// of the face orthogonal to it.
inline Count cuboid_cut_size(const CuboidRegion& region)
{
    const auto& host = region.host();
    Count cut = 0;
    for (std::size_t i = 0; i < host.rank(); ++i) {
        if (region.covers(i)) continue;
        cut += host.links_in_dim(i) * (region.volume() / region.side(i));
    }
    return cut;
}

struct CutAccount {
    Count interior_edges = 0;
    Count perimeter_edges = 0;
    unsigned degree = 0;

    friend bool operator==(const CutAccount&, const CutAccount&) = default;
};

/// Interior and perimeter of a cuboid, tied together by k|A| = 2|E(A,A)| + |E(A,A-bar)|.
inline CutAccount cut_account(const CuboidRegion& region)
{
    const unsigned k = region.host().degree();
    const Count perimeter = cuboid_cut_size(region);
    const Count incident = static_cast<Count>(k) * region.volume();
    if (perimeter > incident || (incident - perimeter) % 2 != 0) {
        // Only reachable if degree and face counts disagree about the host.
        throw UnsupportedShapeError("host " + region.host().str() +
                                    " is not regular under its link convention");
    }
    return CutAccount{(incident - perimeter) / 2, perimeter, k};
}

/// perimeter / (interior + perimeter) evaluated at one region.
inline Rational small_set_expansion_of(const CuboidRegion& region)
{
    const auto acc = cut_account(region);
    const Count total = acc.interior_edges + acc.perimeter_edges;
    if (total == 0) {
        throw UnsupportedShapeError("region has no incident edges");
    }
    return Rational(acc.perimeter_edges, total);
}

}  // namespace torusiso

#endif  // TORUSISO_TORUS_HPP
