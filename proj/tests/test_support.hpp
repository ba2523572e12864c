#ifndef TORUSISO_TEST_SUPPORT_HPP
#define TORUSISO_TEST_SUPPORT_HPP

// Independent reference computations for the tests. Nothing here calls into
// the library's cut, bound or oracle code: graphs are built as explicit
// edge lists and subsets are enumerated with std::next_permutation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace torusiso::testing {

struct EdgeList {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // parallel links appear twice
};

inline std::vector<std::size_t> unflatten(std::size_t v, const std::vector<std::size_t>& dims)
{
    std::vector<std::size_t> c(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        c[i] = v % dims[i];
        v /= dims[i];
    }
    return c;
}

inline std::size_t flatten(const std::vector<std::size_t>& c, const std::vector<std::size_t>& dims)
{
    std::size_t v = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) v = v * dims[i] + c[i];
    return v;
}

/// Torus as an explicit edge list; `length2_links` parallel edges join the
/// two vertices of each length-2 ring.
inline EdgeList torus_edges(const std::vector<std::size_t>& dims, unsigned length2_links)
{
    EdgeList g;
    g.vertices = 1;
    for (auto d : dims) g.vertices *= d;
    for (std::size_t v = 0; v < g.vertices; ++v) {
        const auto c = unflatten(v, dims);
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (dims[i] == 1) continue;
            auto n = c;
            n[i] = (c[i] + 1) % dims[i];
            const auto u = flatten(n, dims);
            if (dims[i] == 2) {
                if (c[i] == 0) {
                    for (unsigned k = 0; k < length2_links; ++k) g.edges.emplace_back(v, u);
                }
            } else {
                g.edges.emplace_back(v, u);
            }
        }
    }
    return g;
}

struct EdgeCounts {
    std::size_t interior = 0;
    std::size_t perimeter = 0;
};

inline EdgeCounts count_edges(const EdgeList& g, const std::vector<bool>& in_set)
{
    EdgeCounts out;
    for (auto [a, b] : g.edges) {
        const int inside = static_cast<int>(in_set[a]) + static_cast<int>(in_set[b]);
        if (inside == 2) ++out.interior;
        if (inside == 1) ++out.perimeter;
    }
    return out;
}

/// Membership mask of the corner cuboid [0, sides[0]) x ... x [0, sides[D-1]).
inline std::vector<bool> corner_cuboid(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sides)
{
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    std::vector<bool> in(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        const auto c = unflatten(v, dims);
        bool inside = true;
        for (std::size_t i = 0; i < dims.size(); ++i) inside = inside && c[i] < sides[i];
        in[v] = inside;
    }
    return in;
}

/// Minimum perimeter over every t-subset, by plain permutation enumeration.
inline std::size_t min_perimeter_all_subsets(const EdgeList& g, std::size_t t)
{
    std::vector<bool> sel(g.vertices, false);
    std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(t), true);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    // prev_permutation walks every arrangement of t trues exactly once
    do {
        best = std::min(best, count_edges(g, sel).perimeter);
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return best;
}

/// Every side vector s with 1 <= s[i] <= dims[i].
inline void for_each_cuboid(const std::vector<std::size_t>& dims,
                            const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> s(dims.size(), 1);
    while (true) {
        fn(s);
        std::size_t i = 0;
        while (i < dims.size() && s[i] == dims[i]) s[i++] = 1;
        if (i == dims.size()) return;
        ++s[i];
    }
}

}  // namespace torusiso::testing

#endif  // TORUSISO_TEST_SUPPORT_HPP
