#ifndef TORUSISO_ORACLE_HPP
#define TORUSISO_ORACLE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "torusiso/error.hpp"
#include "torusiso/torus.hpp"

namespace torusiso {

/// Largest torus the exhaustive oracle accepts.
inline constexpr Count oracle_max_vertices = 28;

struct OracleOptions {
    Count budget = std::numeric_limits<Count>::max();  // subsets to examine at most
    unsigned workers = 1;
    bool prune_translations = true;
};

struct OracleResult {
    Count min_perimeter = 0;
    std::vector<Count> witness;  // sorted vertex indices
    Count subsets_examined = 0;
};

/// Raised when the enumeration would exceed its budget. Carries the best
/// subset seen over the part that was examined, which is NOT a certified
/// minimum.
class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& what, OracleResult partial, Count required)
        : Error(what), partial_(std::move(partial)), required_(required)
    {
    }

    const OracleResult& partial() const noexcept { return partial_; }
    Count required() const noexcept { return required_; }

private:
    OracleResult partial_;
    Count required_;
};

namespace detail {

inline Count binomial(Count n, Count k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    Count out = 1;
    for (Count i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;  // exact at every step
    }
    return out;
}

// Combination of `ones` bits among `bits` positions with the given rank in
// colexicographic order, i.e. the rank-th mask Gosper's hack would produce.
inline std::uint64_t unrank_colex(Count rank, unsigned bits, unsigned ones)
{
    std::uint64_t mask = 0;
    for (unsigned k = ones; k > 0; --k) {
        unsigned c = k - 1;
        while (c + 1 < bits && binomial(c + 1, k) <= rank) ++c;
        rank -= binomial(c, k);
        mask |= std::uint64_t{1} << c;
        bits = c;
    }
    return mask;
}

inline std::uint64_t next_combination(std::uint64_t v)
{
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

// True if the sorted index list of a precedes that of b (equal popcounts).
inline bool lex_less(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t diff = a ^ b;
    return diff != 0 && (a & (diff & -diff)) != 0;
}

struct Adjacency {
    std::vector<std::uint64_t> single;  // neighbours joined by one link
    std::vector<std::uint64_t> paired;  // neighbours joined by two parallel links
};

inline Adjacency build_adjacency(const TorusShape& shape)
{
    const Count n = shape.vertex_count();
    Adjacency adj{std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, 0)};
    for (Count v = 0; v < n; ++v) {
        auto c = shape.coords(v);
        for (std::size_t i = 0; i < shape.rank(); ++i) {
            const Count len = shape.dim(i);
            if (len == 1) continue;
            const Count orig = c[i];
            for (Count next : {(orig + 1) % len, (orig + len - 1) % len}) {
                c[i] = next;
                const auto bit = std::uint64_t{1} << shape.index(c);
                if (len == 2 && shape.length2_links() == PairedLinks::doubled) {
                    adj.paired[v] |= bit;
                } else {
                    adj.single[v] |= bit;
                }
            }
            c[i] = orig;
        }
    }
    return adj;
}

inline Count perimeter_of(const Adjacency& adj, std::uint64_t set)
{
    Count cut = 0;
    for (std::uint64_t rest = set; rest != 0; rest &= rest - 1) {
        const auto v = static_cast<unsigned>(std::countr_zero(rest));
        cut += static_cast<Count>(std::popcount(adj.single[v] & ~set));
        cut += 2 * static_cast<Count>(std::popcount(adj.paired[v] & ~set));
    }
    return cut;
}

struct ChunkBest {
    Count perimeter = std::numeric_limits<Count>::max();
    std::uint64_t set = 0;
    Count examined = 0;
};

// Scans combinations [first, first + count) of the free positions.
inline ChunkBest scan_chunk(const Adjacency& adj, unsigned free_bits, unsigned free_ones,
                            bool pin_origin, Count first, Count count)
{
    ChunkBest best;
    if (count == 0) return best;
    std::uint64_t comb = unrank_colex(first, free_bits, free_ones);
    for (Count i = 0; i < count; ++i) {
        const std::uint64_t set = pin_origin ? ((comb << 1) | 1) : comb;
        const Count cut = perimeter_of(adj, set);
        if (cut < best.perimeter || (cut == best.perimeter && lex_less(set, best.set))) {
            best.perimeter = cut;
            best.set = set;
        }
        ++best.examined;
        if (i + 1 < count) comb = next_combination(comb);
    }
    return best;
}

inline std::vector<Count> mask_to_indices(std::uint64_t set)
{
    std::vector<Count> out;
    for (; set != 0; set &= set - 1) {
        out.push_back(static_cast<Count>(std::countr_zero(set)));
    }
    return out;
}

}  // namespace detail

/// Exact minimum perimeter over every t-subset of the torus, by exhaustive
/// enumeration. The witness is the lexicographically least minimizer.
///
/// Translation pruning only looks at subsets containing vertex 0: every
/// subset has a translate through the origin with the same perimeter, and
/// the lexicographically least minimizer always contains vertex 0.
inline OracleResult brute_force_min_perimeter(const TorusShape& shape, Count t,
                                              const OracleOptions& options = {})
{
    const Count n = shape.vertex_count();
    if (n > oracle_max_vertices) {
        throw DomainError("oracle supports at most " + std::to_string(oracle_max_vertices) +
                          " vertices, torus " + shape.str() + " has " + std::to_string(n));
    }
    if (t > n / 2) {
        throw DomainError("t = " + std::to_string(t) + " exceeds |V|/2 = " + std::to_string(n / 2));
    }
    if (t == 0) {
        return OracleResult{};
    }

    const auto adj = detail::build_adjacency(shape);
    const bool pin = options.prune_translations;
    const auto free_bits = static_cast<unsigned>(pin ? n - 1 : n);
    const auto free_ones = static_cast<unsigned>(pin ? t - 1 : t);
    const Count total = detail::binomial(free_bits, free_ones);
    const Count to_scan = std::min(total, options.budget);

    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, 64));
    std::vector<detail::ChunkBest> parts(workers);
    const Count per = to_scan / workers;
    const Count extra = to_scan % workers;
    auto chunk_start = [&](unsigned w) { return w * per + std::min<Count>(w, extra); };

    if (workers == 1) {
        parts[0] = detail::scan_chunk(adj, free_bits, free_ones, pin, 0, to_scan);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                parts[w] = detail::scan_chunk(adj, free_bits, free_ones, pin, chunk_start(w),
                                              chunk_start(w + 1) - chunk_start(w));
            });
        }
    }

    detail::ChunkBest best;
    for (const auto& p : parts) {
        best.examined += p.examined;
        if (p.examined == 0) continue;
        if (p.perimeter < best.perimeter ||
            (p.perimeter == best.perimeter && detail::lex_less(p.set, best.set))) {
            best.perimeter = p.perimeter;
            best.set = p.set;
        }
    }

    OracleResult result;
    result.subsets_examined = best.examined;
    if (best.examined > 0) {
        result.min_perimeter = best.perimeter;
        result.witness = detail::mask_to_indices(best.set);
    }
    if (to_scan < total) {
        throw BudgetExceededError("oracle budget of " + std::to_string(options.budget) +
                                      " subsets exhausted; " + std::to_string(total) +
                                      " required for " + shape.str() + ", t = " +
                                      std::to_string(t),
                                  std::move(result), total);
    }
    return result;
}

}  // namespace torusiso

#endif  // TORUSISO_ORACLE_HPP
