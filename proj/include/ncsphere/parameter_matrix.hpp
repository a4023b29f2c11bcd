#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ncsphere/errors.hpp"
#include "ncsphere/rational.hpp"

namespace ncsphere {

/// A phase angle: the unimodular scalar e^{2*pi*i*theta} with theta either an
/// exact rational in [0,1) or a floating value in [0,1).
class Angle {
public:
    Angle() : exact_(true), frac_() {}
    explicit Angle(const Fraction& f) : exact_(true), frac_(f) {}
    explicit Angle(double v) : exact_(false) {
        v = std::fmod(v, 1.0);
        if (v < 0) v += 1.0;
        val_ = v;
    }

    bool exact() const { return exact_; }
    const Fraction& frac() const {
        detail::require(exact_, "Angle: exact value requested in float mode");
        return frac_;
    }
    double value() const { return exact_ ? frac_.value() : val_; }
    bool is_zero() const { return exact_ ? frac_.is_zero() : val_ == 0.0; }

    Angle operator-() const { return exact_ ? Angle(-frac_) : Angle(-val_); }

    bool operator==(const Angle& o) const {
        if (exact_ != o.exact_) return false;
        return exact_ ? frac_ == o.frac_ : val_ == o.val_;
    }
    bool operator!=(const Angle& o) const { return !(*this == o); }

private:
    bool exact_;
    Fraction frac_;
    double val_ = 0.0;
};

/// The parameter matrix rho: self-adjoint with unimodular entries and unit
/// diagonal, stored as the angle matrix theta with rho_jk = e^{2*pi*i*theta_jk}.
/// Self-adjointness reads theta_kj = -theta_jk mod 1, and theta_jj = 0.
class ParameterMatrix {
public:
    explicit ParameterMatrix(int n) : n_(n), angles_(static_cast<std::size_t>(n) * n) {
        detail::require(n >= 1, "ParameterMatrix: need n >= 1");
    }

    /// The commutative parameter matrix (all entries 1).
    static ParameterMatrix commutative(int n) { return ParameterMatrix(n); }

    /// Builds from the strict upper triangle, filling the rest by symmetry.
    static ParameterMatrix from_upper(int n, const std::vector<Angle>& upper) {
        ParameterMatrix rho(n);
        detail::require(static_cast<int>(upper.size()) == n * (n - 1) / 2,
                        "ParameterMatrix: wrong upper-triangle length");
        std::size_t idx = 0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) rho.set_angle(j, k, upper[idx++]);
        return rho;
    }

    int n() const { return n_; }

    bool exact() const {
        for (const auto& a : angles_)
            if (!a.exact()) return false;
        return true;
    }

    const Angle& angle(int j, int k) const {
        check_index(j);
        check_index(k);
        return angles_[static_cast<std::size_t>(j) * n_ + k];
    }

    /// Sets theta_jk (j != k) and the conjugate entry theta_kj = -theta_jk.
    void set_angle(int j, int k, const Angle& a) {
        check_index(j);
        check_index(k);
        detail::require(j != k, "ParameterMatrix: diagonal is fixed at 1");
        angles_[static_cast<std::size_t>(j) * n_ + k] = a;
        angles_[static_cast<std::size_t>(k) * n_ + j] = -a;
    }

    /// lcm of the denominators of all (exact) angles.
    std::int64_t denominator_lcm() const {
        std::int64_t l = 1;
        for (const auto& a : angles_)
            if (a.exact()) l = lcm64(l, a.frac().den);
        return l;
    }

    /// The leading k x k submatrix.
    ParameterMatrix leading(int k) const {
        detail::require(k >= 1 && k <= n_, "ParameterMatrix: bad leading size");
        ParameterMatrix sub(k);
        for (int j = 0; j < k; ++j)
            for (int m = j + 1; m < k; ++m) sub.set_angle(j, m, angle(j, m));
        return sub;
    }

    /// The minor from removing row and column `i` (0-based).
    ParameterMatrix minor_without(int i) const {
        check_index(i);
        detail::require(n_ >= 2, "ParameterMatrix: minor of 1x1");
        ParameterMatrix sub(n_ - 1);
        auto old_index = [&](int r) { return r < i ? r : r + 1; };
        for (int j = 0; j < n_ - 1; ++j)
            for (int m = j + 1; m < n_ - 1; ++m)
                sub.set_angle(j, m, angle(old_index(j), old_index(m)));
        return sub;
    }

    /// Embeds this matrix as the upper-left block of an m x m matrix whose
    /// remaining entries are all 1.
    ParameterMatrix pad_to(int m) const {
        detail::require(m >= n_, "ParameterMatrix: pad size too small");
        ParameterMatrix big(m);
        for (int j = 0; j < n_; ++j)
            for (int k = j + 1; k < n_; ++k) big.set_angle(j, k, angle(j, k));
        return big;
    }

    bool operator==(const ParameterMatrix& o) const {
        return n_ == o.n_ && angles_ == o.angles_;
    }
    bool operator!=(const ParameterMatrix& o) const { return !(*this == o); }

    /// True when the leading k x k blocks agree.
    bool agrees_on_leading(const ParameterMatrix& o, int k) const {
        if (k > n_ || k > o.n_) return false;
        for (int j = 0; j < k; ++j)
            for (int m = j + 1; m < k; ++m)
                if (angle(j, m) != o.angle(j, m)) return false;
        return true;
    }

private:
    void check_index(int j) const {
        detail::require(j >= 0 && j < n_, "ParameterMatrix: index out of range");
    }

    int n_;
    std::vector<Angle> angles_;  // row-major, diagonal fixed at angle 0
};

}  // namespace ncsphere
