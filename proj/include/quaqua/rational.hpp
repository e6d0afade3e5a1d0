#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace quaqua {

/// Exact rational coefficient. The group-ring elements in this library only
/// carry small dyadic coefficients, so a 64-bit numerator/denominator pair
/// is plenty; overflow is not guarded.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}
    constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    constexpr void reduce() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend constexpr Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend constexpr Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend constexpr Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend constexpr bool operator==(Rational a, Rational b) {
        return a.num == b.num && a.den == b.den;
    }

    constexpr bool is_zero() const { return num == 0; }
    constexpr double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

}  // namespace quaqua
