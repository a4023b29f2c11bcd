#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "ncsphere/cyclotomic.hpp"
#include "ncsphere/errors.hpp"
#include "ncsphere/rational.hpp"

namespace ncsphere {

/// A coefficient: an element of Q(zeta_N) in exact mode, a complex double in
/// float mode.
///
/// Exact scalars keep a fast "pure" representation q * zeta^m whenever they
/// are a rational multiple of a root of unity (the overwhelmingly common case:
/// parameter-matrix phases, rotation scalars, zgen coefficients). Mixed sums
/// fall back to dense power-basis coordinates. Equality always compares the
/// canonical form, so `a == b` iff the reduced coordinate vectors agree.
class Scalar {
public:
    Scalar() = delete;

    static Scalar exact_zero(FieldPtr f) { return exact_rational(Rational(0), std::move(f)); }

    static Scalar exact_rational(Rational q, FieldPtr f) {
        Scalar s(std::move(f));
        s.scale_ = std::move(q);
        s.exp_ = 0;
        s.canonicalize_pure();
        return s;
    }

    /// q * e^{2*pi*i*angle}; the angle's denominator must divide the conductor.
    static Scalar exact_phase(const Fraction& angle, FieldPtr f, Rational q = Rational(1)) {
        detail::require(f->conductor() % angle.den == 0,
                        "Scalar: phase denominator " + std::to_string(angle.den) +
                            " does not divide conductor " + std::to_string(f->conductor()));
        Scalar s(std::move(f));
        s.scale_ = std::move(q);
        s.exp_ = angle.num * (s.field_->conductor() / angle.den);
        s.canonicalize_pure();
        return s;
    }

    static Scalar exact_coords(CycloField::Coords c, FieldPtr f) {
        Scalar s(std::move(f));
        s.pure_ = false;
        s.coords_ = std::move(c);
        detail::require(static_cast<std::int64_t>(s.coords_.size()) == s.field_->degree(),
                        "Scalar: coordinate vector has wrong length");
        return s;
    }

    static Scalar complex_value(std::complex<double> z) {
        Scalar s(nullptr);
        s.exact_ = false;
        s.fz_ = z;
        return s;
    }

    bool exact() const { return exact_; }
    const FieldPtr& field() const { return field_; }

    bool is_zero(double eps = 0.0) const {
        if (!exact_) return std::abs(fz_) <= eps;
        if (pure_) return scale_ == 0;
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    /// True when the scalar is a rational multiple of a single root of unity.
    bool is_pure_phase() const { return exact_ && pure_; }
    const Rational& pure_scale() const { return scale_; }
    std::int64_t pure_exponent() const { return exp_; }

    /// Canonical power-basis coordinates (exact mode only).
    CycloField::Coords coords() const {
        detail::require(exact_, "Scalar: coords() requires exact mode");
        if (!pure_) return coords_;
        if (scale_ == 0) return field_->zero();
        return field_->scale(field_->zeta_pow(exp_), scale_);
    }

    Scalar operator+(const Scalar& o) const {
        check_compatible(o);
        if (!exact_) return complex_value(fz_ + o.fz_);
        if (pure_ && o.pure_) {
            if (scale_ == 0) return o;
            if (o.scale_ == 0) return *this;
            if (exp_ == o.exp_) {
                Scalar s(field_);
                s.scale_ = scale_ + o.scale_;
                s.exp_ = exp_;
                s.canonicalize_pure();
                return s;
            }
        }
        return exact_coords(field_->add(coords(), o.coords()), field_);
    }

    Scalar operator-(const Scalar& o) const { return *this + (-o); }

    Scalar operator-() const {
        Scalar s(*this);
        if (!exact_) {
            s.fz_ = -s.fz_;
        } else if (pure_) {
            s.scale_ = -s.scale_;
        } else {
            for (auto& c : s.coords_) c = -c;
        }
        return s;
    }

    Scalar operator*(const Scalar& o) const {
        check_compatible(o);
        if (!exact_) return complex_value(fz_ * o.fz_);
        if (pure_ && o.pure_) {
            Scalar s(field_);
            s.scale_ = scale_ * o.scale_;
            s.exp_ = exp_ + o.exp_;
            s.canonicalize_pure();
            return s;
        }
        if (is_zero() || o.is_zero()) return exact_zero(field_);
        return exact_coords(field_->mul(coords(), o.coords()), field_);
    }

    Scalar times_rational(const Rational& q) const {
        if (!exact_) return complex_value(fz_ * to_double(q));
        if (pure_) {
            Scalar s(field_);
            s.scale_ = scale_ * q;
            s.exp_ = exp_;
            s.canonicalize_pure();
            return s;
        }
        return exact_coords(field_->scale(coords_, q), field_);
    }

    /// Multiplication by e^{2*pi*i*angle}.
    Scalar times_phase(const Fraction& angle) const {
        if (angle.is_zero()) return *this;
        if (!exact_) {
            const double th = 2.0 * std::numbers::pi * angle.value();
            return complex_value(fz_ * std::complex<double>(std::cos(th), std::sin(th)));
        }
        return *this * exact_phase(angle, field_);
    }

    Scalar conj() const {
        if (!exact_) return complex_value(std::conj(fz_));
        if (pure_) {
            Scalar s(field_);
            s.scale_ = scale_;
            s.exp_ = -exp_;
            s.canonicalize_pure();
            return s;
        }
        return exact_coords(field_->conj(coords_), field_);
    }

    bool operator==(const Scalar& o) const {
        if (exact_ != o.exact_) return false;
        if (!exact_) return fz_ == o.fz_;
        check_compatible(o);
        if (pure_ && o.pure_) return scale_ == o.scale_ && exp_ == o.exp_;
        return coords() == o.coords();
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        if (!exact_) return fz_;
        const double twopi = 2.0 * std::numbers::pi;
        const auto n = static_cast<double>(field_->conductor());
        if (pure_) {
            const double th = twopi * static_cast<double>(exp_) / n;
            return to_double(scale_) * std::complex<double>(std::cos(th), std::sin(th));
        }
        std::complex<double> z = 0;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] == 0) continue;
            const double th = twopi * static_cast<double>(i) / n;
            z += to_double(coords_[i]) * std::complex<double>(std::cos(th), std::sin(th));
        }
        return z;
    }

    /// Re-expresses an exact scalar in a larger field (divisible conductors).
    Scalar convert_to(const FieldPtr& big) const {
        detail::require(exact_, "Scalar: convert_to requires exact mode");
        if (big->conductor() == field_->conductor()) return *this;
        if (pure_) {
            detail::require(big->conductor() % field_->conductor() == 0,
                            "Scalar: conductor " + std::to_string(field_->conductor()) +
                                " does not divide " + std::to_string(big->conductor()));
            Scalar s(big);
            s.scale_ = scale_;
            s.exp_ = exp_ * (big->conductor() / field_->conductor());
            s.canonicalize_pure();
            return s;
        }
        return exact_coords(field_->embed_into(*big, coords_), big);
    }

private:
    explicit Scalar(FieldPtr f) : field_(std::move(f)) {}

    void check_compatible(const Scalar& o) const {
        detail::require(exact_ == o.exact_, "Scalar: mixing exact and float modes");
        if (exact_)
            detail::require(field_->conductor() == o.field_->conductor(),
                            "Scalar: mixing conductors " + std::to_string(field_->conductor()) +
                                " and " + std::to_string(o.field_->conductor()));
    }

    // Canonical pure form: exponent in [0, N), and in [0, N/2) for even N by
    // folding zeta^{N/2} = -1 into the sign. Zero fixes the exponent at 0.
    void canonicalize_pure() {
        pure_ = true;
        const std::int64_t n = field_->conductor();
        exp_ %= n;
        if (exp_ < 0) exp_ += n;
        if (scale_ == 0) {
            exp_ = 0;
            return;
        }
        if (n % 2 == 0 && exp_ >= n / 2) {
            exp_ -= n / 2;
            scale_ = -scale_;
        }
    }

    FieldPtr field_;
    bool exact_ = true;
    bool pure_ = true;
    Rational scale_{0};
    std::int64_t exp_ = 0;
    CycloField::Coords coords_;
    std::complex<double> fz_{0.0, 0.0};
};

}  // namespace ncsphere
