#pragma once

#include <cstdint>
#include <vector>

#include "ncsphere/errors.hpp"

namespace ncsphere {

/// A normal-form *-monomial: z_1^{a_1} z_1*^{b_1} ... z_n^{a_n} z_n*^{b_n} x^c.
///
/// The normal form fixes ascending generator indices with plain powers before
/// starred powers within each index (legitimate since z_j and z_j* commute),
/// and the central self-adjoint x last. It is unique, so monomials are usable
/// as map keys.
struct Monomial {
    std::vector<std::uint32_t> a;  // z_j exponents
    std::vector<std::uint32_t> b;  // z_j* exponents
    std::uint32_t c = 0;           // x exponent (0 unless the context is an even sphere)

    explicit Monomial(int n)
        : a(static_cast<std::size_t>(n), 0), b(static_cast<std::size_t>(n), 0) {}

    static Monomial one(int n) { return Monomial(n); }

    static Monomial generator(int n, int j, bool starred) {
        detail::require(j >= 0 && j < n, "Monomial: generator index out of range");
        Monomial m(n);
        if (starred)
            m.b[static_cast<std::size_t>(j)] = 1;
        else
            m.a[static_cast<std::size_t>(j)] = 1;
        return m;
    }

    static Monomial x_power(int n, std::uint32_t c) {
        Monomial m(n);
        m.c = c;
        return m;
    }

    int n() const { return static_cast<int>(a.size()); }

    std::uint32_t degree() const {
        std::uint32_t d = c;
        for (std::size_t j = 0; j < a.size(); ++j) d += a[j] + b[j];
        return d;
    }

    bool is_one() const { return degree() == 0; }

    /// Net charge a_j - b_j of generator j; the phase a monomial picks up
    /// under z_j -> alpha z_j is alpha^charge.
    std::int64_t charge(int j) const {
        return static_cast<std::int64_t>(a[static_cast<std::size_t>(j)]) -
               static_cast<std::int64_t>(b[static_cast<std::size_t>(j)]);
    }

    /// Componentwise exponent sum (the monomial part of a product).
    Monomial merged_with(const Monomial& o) const {
        Monomial m(*this);
        for (std::size_t j = 0; j < a.size(); ++j) {
            m.a[j] += o.a[j];
            m.b[j] += o.b[j];
        }
        m.c += o.c;
        return m;
    }

    /// The monomial part of the adjoint: a and b swapped, c kept.
    Monomial star_exponents() const {
        Monomial m(*this);
        m.a.swap(m.b);
        return m;
    }

    bool operator==(const Monomial& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    bool operator<(const Monomial& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

}  // namespace ncsphere
