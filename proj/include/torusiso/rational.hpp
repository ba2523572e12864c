#ifndef TORUSISO_RATIONAL_HPP
#define TORUSISO_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "torusiso/error.hpp"

namespace torusiso {

/// Non-negative fraction kept in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den)
    {
        if (den == 0) {
            throw DomainError("rational with zero denominator");
        }
        const auto g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    constexpr std::uint64_t num() const noexcept { return num_; }
    constexpr std::uint64_t den() const noexcept { return den_; }
    constexpr double value() const noexcept
    {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const
    {
        if (den_ == 1) {
            return std::to_string(num_);
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend constexpr bool operator==(const Rational&, const Rational&) = default;

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        // Cross multiplication; operands stay far below 2^32 in practice.
        const unsigned __int128 lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
        const unsigned __int128 rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

}  // namespace torusiso

#endif  // TORUSISO_RATIONAL_HPP
