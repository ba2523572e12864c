#ifndef TORUSISO_ISOPERIMETRY_HPP
#define TORUSISO_ISOPERIMETRY_HPP

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "torusiso/error.hpp"
#include "torusiso/torus.hpp"

namespace torusiso {

/// Relative tolerance for comparing real-valued bounds with each other and
/// with integer cut sizes.
inline constexpr double bound_tolerance = 1e-9;

namespace detail {

// base^exp, or nullopt on overflow.
inline std::optional<Count> checked_pow(Count base, unsigned exp)
{
    Count out = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(out, base, &out)) return std::nullopt;
    }
    return out;
}

// Exact integer n-th root of q, if there is one.
inline std::optional<Count> exact_root(Count q, unsigned n)
{
    if (n == 1) return q;
    if (q <= 1) return q;
    const auto guess = static_cast<Count>(std::llround(std::pow(static_cast<double>(q), 1.0 / n)));
    for (Count m = guess > 0 ? guess - 1 : 0; m <= guess + 1; ++m) {
        if (auto p = checked_pow(m, n); p && *p == q) return m;
    }
    return std::nullopt;
}

}  // namespace detail

/// One term of the torus bound, 2(D-r) k^(1/(D-r)) t^((D-r-1)/(D-r)), where
/// k is the product of the covered (smallest) dimensions and D-r the number
/// of free dimensions.
struct BoundTerm {
    double value = 0.0;
    // Side length (t/k)^(1/(D-r)) when it is an integer; the term is then
    // evaluated exactly as 2(D-r) t / side.
    std::optional<Count> side;
};

inline BoundTerm bound_term(Count covered_product, unsigned free_dims, Count t)
{
    BoundTerm term;
    if (t % covered_product == 0) {
        term.side = detail::exact_root(t / covered_product, free_dims);
    }
    if (term.side && *term.side > 0 && t % *term.side == 0) {
        term.value = static_cast<double>(2 * free_dims * (t / *term.side));
        return term;
    }
    term.side.reset();
    const double inv = 1.0 / static_cast<double>(free_dims);
    term.value = 2.0 * free_dims * std::pow(static_cast<double>(covered_product), inv) *
                 std::pow(static_cast<double>(t), (free_dims - 1) * inv);
    return term;
}

struct BoundResult {
    double value = 0.0;                        // lower bound on |E(S, S-bar)|
    unsigned argmin_r = 0;                     // number of covered dimensions
    Count covered_product = 1;                 // product of the argmin_r smallest dims
    bool exact = false;                        // value computed in integers
    std::optional<CuboidRegion> attaining_cuboid;
};

namespace detail {

// Minimizes over r; near-equal terms (within bound_tolerance) go to the larger r.
template <class CoveredProduct>
BoundResult minimize_terms(unsigned rank, Count t, CoveredProduct covered_product)
{
    BoundResult best;
    bool have = false;
    for (unsigned r = 0; r < rank; ++r) {
        const Count k = covered_product(r);
        const auto term = bound_term(k, rank - r, t);
        if (!have || term.value <= best.value * (1.0 + bound_tolerance)) {
            best.value = term.value;
            best.argmin_r = r;
            best.covered_product = k;
            best.exact = term.side.has_value();
            have = true;
        }
    }
    return best;
}

}  // namespace detail

/// Cuboid meeting the r-th bound term: the r smallest dimensions fully covered, every
/// other side equal to (t/k)^(1/(D-r)). Absent when that side is not an
/// integer or does not fit.
///
/// With single links on length-2 rings an uncovered length-2 dimension only
/// contributes half of what the bound charges, so those dimensions must be
/// among the covered ones.
inline std::optional<CuboidRegion> attaining_cuboid(const TorusShape& shape, Count t, unsigned r)
{
    const unsigned rank = static_cast<unsigned>(shape.rank());
    if (r >= rank || t == 0) return std::nullopt;

    if (shape.length2_links() == PairedLinks::single) {
        const auto twos = static_cast<unsigned>(std::ranges::count(shape.dims(), Count{2}));
        if (r < twos) return std::nullopt;
    }

    Count k = 1;
    for (unsigned i = 0; i < r; ++i) {
        k *= shape.dim(rank - 1 - i);
    }
    if (t % k != 0) return std::nullopt;
    const auto side = detail::exact_root(t / k, rank - r);
    if (!side) return std::nullopt;

    std::vector<Count> sides(rank);
    for (unsigned i = 0; i < rank; ++i) {
        if (i >= rank - r) {
            sides[i] = shape.dim(i);
        } else {
            if (*side > shape.dim(i)) return std::nullopt;
            sides[i] = *side;
        }
    }
    return CuboidRegion(shape, std::move(sides));
}

/// Lower bound on the perimeter of any t-vertex cuboid of an arbitrary torus.
inline BoundResult bound_general_torus(const TorusShape& shape, Count t)
{
    if (t < 1 || t > shape.vertex_count() / 2) {
        throw DomainError("t = " + std::to_string(t) + " outside [1, " +
                          std::to_string(shape.vertex_count() / 2) + "] for torus " +
                          shape.str());
    }
    const unsigned rank = static_cast<unsigned>(shape.rank());
    auto result = detail::minimize_terms(rank, t, [&](unsigned r) {
        Count k = 1;
        for (unsigned i = 0; i < r; ++i) {
            k *= shape.dim(rank - 1 - i);
        }
        return k;
    });
    if (auto cuboid = attaining_cuboid(shape, t, result.argmin_r)) {
        if (result.exact && static_cast<double>(cuboid_cut_size(*cuboid)) == result.value) {
            result.attaining_cuboid = std::move(cuboid);
        }
    }
    return result;
}

/// Bound for the cubic torus [n]^D.
inline BoundResult bound_cubic_torus(Count n, unsigned dims, Count t)
{
    if (n == 0 || dims == 0) {
        throw InvalidShapeError("cubic torus needs n >= 1 and D >= 1");
    }
    const auto vertices = detail::checked_pow(n, dims);
    if (!vertices) {
        throw InvalidShapeError("vertex count overflows 64 bits");
    }
    if (t < 1 || t > *vertices / 2) {
        throw DomainError("t = " + std::to_string(t) + " outside [1, " +
                          std::to_string(*vertices / 2) + "]");
    }
    auto result = detail::minimize_terms(dims, t, [&](unsigned r) { return *detail::checked_pow(n, r); });
    const TorusShape shape(std::vector<Count>(dims, n), PairedLinks::doubled);
    if (auto cuboid = attaining_cuboid(shape, t, result.argmin_r)) {
        if (result.exact && static_cast<double>(cuboid_cut_size(*cuboid)) == result.value) {
            result.attaining_cuboid = std::move(cuboid);
        }
    }
    return result;
}

/// Orders two same-host, same-volume cuboids by perimeter.
inline std::strong_ordering compare_cuboids(const CuboidRegion& a, const CuboidRegion& b)
{
    if (!(a.host() == b.host())) {
        throw DomainError("cuboids live on different hosts (" + a.host().str() + " vs " +
                          b.host().str() + ")");
    }
    if (a.volume() != b.volume()) {
        throw DomainError("cuboids have different volumes (" + std::to_string(a.volume()) +
                          " vs " + std::to_string(b.volume()) + ")");
    }
    return cuboid_cut_size(a) <=> cuboid_cut_size(b);
}

/// Exact edge-isoperimetric minimum of the d-cube (Harper): the first t
/// vertices in binary order are optimal.
inline Count hypercube_min_perimeter(unsigned d, Count t)
{
    if (d == 0 || d > 62) {
        throw DomainError("hypercube dimension must be in [1, 62]");
    }
    const Count vertices = Count{1} << d;
    if (t < 1 || t > vertices) {
        throw DomainError("t = " + std::to_string(t) + " outside [1, " + std::to_string(vertices) +
                          "]");
    }
    Count ones = 0;
    for (Count i = 0; i < t; ++i) {
        ones += static_cast<Count>(std::popcount(i));
    }
    return d * t - 2 * ones;
}

}  // namespace torusiso

#endif  // TORUSISO_ISOPERIMETRY_HPP
