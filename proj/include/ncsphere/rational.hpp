#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>

#include "ncsphere/errors.hpp"

namespace ncsphere {

/// Arbitrary-precision rational, the ground ring for all exact arithmetic.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// A reduced fraction p/q taken modulo 1, i.e. an element of Q/Z.
///
/// Used for angles: the unimodular scalar e^{2*pi*i*(p/q)}. Denominators stay
/// small (they divide the conductor of the ambient cyclotomic field), so plain
/// 64-bit arithmetic suffices.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t p, std::int64_t q) : num(p), den(q) { normalize(); }

    void normalize() {
        detail::require(den != 0, "Fraction: zero denominator");
        if (den < 0) { den = -den; num = -num; }
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    bool is_zero() const { return num == 0; }

    Fraction operator+(const Fraction& o) const {
        return Fraction(num * o.den + o.num * den, den * o.den);
    }
    Fraction operator-(const Fraction& o) const {
        return Fraction(num * o.den - o.num * den, den * o.den);
    }
    Fraction operator-() const { return Fraction(-num, den); }

    /// Integer multiple m*(p/q) mod 1.
    Fraction times(std::int64_t m) const { return Fraction(num * m, den); }

    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Fraction& o) const { return !(*this == o); }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    /// Parses "p/q" or a bare integer; result is reduced mod 1.
    static Fraction parse(const std::string& s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Fraction(std::stoll(s), 1);
            return Fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw error("Fraction: cannot parse '" + s + "'");
        }
    }
};

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace ncsphere
