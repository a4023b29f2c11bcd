#pragma once

#include <optional>
#include <vector>

#include "ncsphere/poly_matrix.hpp"

namespace ncsphere {

/// The finite-order rotation automorphism z_i -> alpha_i z_i with every
/// alpha_i = e^{2*pi*i*p_i/k} a primitive k-th root of unity. The antipodal
/// map T is the special case k = 2, all alpha_i = -1; on an even sphere T also
/// negates x, recorded by x_sign = -1.
struct RotationAction {
    std::int64_t k = 2;
    std::vector<Fraction> alphas;  // p_i / k, gcd(p_i, k) = 1
    int x_sign = +1;               // even spheres: x -> x_sign * x

    RotationAction(std::int64_t order, std::vector<Fraction> roots, int xs = +1)
        : k(order), alphas(std::move(roots)), x_sign(xs) {
        detail::require(k >= 2, "RotationAction: order must be >= 2");
        detail::require(xs == 1 || xs == -1, "RotationAction: x_sign must be +-1");
        detail::require(xs == 1 || k % 2 == 0,
                        "RotationAction: x_sign = -1 needs even order");
        for (const auto& a : alphas)
            detail::require(a.den == k,
                            "RotationAction: alpha " + a.str() + " is not a primitive root of order " +
                                std::to_string(k));
    }

    /// The antipodal action T on n generators (x flips sign when present).
    static RotationAction antipodal(int n) {
        return RotationAction(2, std::vector<Fraction>(static_cast<std::size_t>(n),
                                                       Fraction(1, 2)), -1);
    }

    int n() const { return static_cast<int>(alphas.size()); }

    /// Homogeneity class of a single monomial in Z_k.
    std::int64_t monomial_class(const Monomial& m) const {
        std::int64_t cls = 0;
        for (int j = 0; j < n(); ++j)
            cls += alphas[static_cast<std::size_t>(j)].num * m.charge(j);
        if (x_sign == -1) cls += static_cast<std::int64_t>(m.c) * (k / 2);
        cls %= k;
        if (cls < 0) cls += k;
        return cls;
    }

    /// The rotation angle of a single monomial (the phase it is scaled by).
    Fraction monomial_angle(const Monomial& m) const {
        Fraction total;
        for (int j = 0; j < n(); ++j)
            total = total + alphas[static_cast<std::size_t>(j)].times(m.charge(j));
        if (x_sign == -1 && m.c % 2 == 1) total = total + Fraction(1, 2);
        return total;
    }
};

/// Applies the rotation: each monomial is scaled by prod alpha_i^{a_i - b_i}
/// (times (-1)^c for the antipodal action on an even sphere).
inline StarPolynomial apply_rotation(const RotationAction& r, const StarPolynomial& p) {
    detail::require(r.n() == p.context()->n(), "apply_rotation: context mismatch");
    StarPolynomial out(p.context());
    for (const auto& [m, s] : p.terms()) out.add_term(m, s.times_phase(r.monomial_angle(m)));
    return out;
}

inline PolyMatrix apply_rotation(const RotationAction& r, const PolyMatrix& m) {
    PolyMatrix out(m.context(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = apply_rotation(r, m.at(i, j));
    return out;
}

/// Class in Z_k when every monomial transforms by the same omega^j; nullopt
/// when classes mix. The zero polynomial has no class and is an error.
inline std::optional<std::int64_t> homogeneity_class(const StarPolynomial& p,
                                                     const RotationAction& r) {
    detail::require(!p.is_zero(), "homogeneity_class: undefined for the zero polynomial");
    detail::require(r.n() == p.context()->n(), "homogeneity_class: context mismatch");
    std::optional<std::int64_t> cls;
    for (const auto& [m, s] : p.terms()) {
        const std::int64_t c = r.monomial_class(m);
        if (!cls)
            cls = c;
        else if (*cls != c)
            return std::nullopt;
    }
    return cls;
}

/// Graded projection pi_j. Two routes are computed and asserted equal:
/// monomial filtering by class, and the averaging formula
/// (1/k) sum_m omega^{-jm} R^m(p).
inline StarPolynomial graded_project(const StarPolynomial& p, const RotationAction& r,
                                     std::int64_t j) {
    detail::require(j >= 0 && j < r.k, "graded_project: class out of range");
    detail::require(r.n() == p.context()->n(), "graded_project: context mismatch");
    const Context& ctx = p.context();

    StarPolynomial filtered(ctx);
    for (const auto& [m, s] : p.terms())
        if (r.monomial_class(m) == j) filtered.add_term(m, s);

    StarPolynomial fourier(ctx);
    StarPolynomial rotated = p;
    for (std::int64_t m = 0; m < r.k; ++m) {
        if (m > 0) rotated = apply_rotation(r, rotated);
        fourier = fourier + rotated.scaled(scalar_phase(ctx, Angle(Fraction(-j * m, r.k))));
    }
    fourier = fourier.scaled(Rational(1, r.k));

    detail::require(fourier == filtered,
                    "graded_project: averaging and filtering disagree");
    return filtered;
}

/// A d x d unitary matrix of scalars; unitarity U U* = I is checked exactly on
/// construction (to eps_eq in float mode).
class ScalarUnitary {
public:
    ScalarUnitary(Context ctx, int d, std::vector<Scalar> entries)
        : ctx_(std::move(ctx)), d_(d), e_(std::move(entries)) {
        detail::require(d >= 1, "ScalarUnitary: bad dimension");
        detail::require(e_.size() == static_cast<std::size_t>(d) * d,
                        "ScalarUnitary: wrong entry count");
        detail::require(is_unitary(), "ScalarUnitary: U U* != I");
    }

    static ScalarUnitary identity(const Context& ctx, int d) {
        std::vector<Scalar> e(static_cast<std::size_t>(d) * d, scalar_zero(ctx));
        for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i) * d + i] = scalar_one(ctx);
        return ScalarUnitary(ctx, d, std::move(e));
    }

    static ScalarUnitary diagonal(const Context& ctx, const std::vector<Scalar>& diag) {
        const int d = static_cast<int>(diag.size());
        std::vector<Scalar> e(static_cast<std::size_t>(d) * d, scalar_zero(ctx));
        for (int i = 0; i < d; ++i)
            e[static_cast<std::size_t>(i) * d + i] = diag[static_cast<std::size_t>(i)];
        return ScalarUnitary(ctx, d, std::move(e));
    }

    const Context& context() const { return ctx_; }
    int dim() const { return d_; }
    const Scalar& at(int i, int j) const {
        detail::require(i >= 0 && i < d_ && j >= 0 && j < d_, "ScalarUnitary: bad index");
        return e_[static_cast<std::size_t>(i) * d_ + j];
    }

    ScalarUnitary operator*(const ScalarUnitary& o) const {
        detail::require(d_ == o.d_, "ScalarUnitary: dimension mismatch");
        std::vector<Scalar> e(static_cast<std::size_t>(d_) * d_, scalar_zero(ctx_));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                Scalar acc = scalar_zero(ctx_);
                for (int k = 0; k < d_; ++k) acc = acc + at(i, k) * o.at(k, j);
                e[static_cast<std::size_t>(i) * d_ + j] = acc;
            }
        return ScalarUnitary(ctx_, d_, std::move(e));
    }

    ScalarUnitary adjoint() const {
        std::vector<Scalar> e(static_cast<std::size_t>(d_) * d_, scalar_zero(ctx_));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                e[static_cast<std::size_t>(j) * d_ + i] = at(i, j).conj();
        return ScalarUnitary(ctx_, d_, std::move(e));
    }

    bool is_identity() const {
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                const Scalar want = i == j ? scalar_one(ctx_) : scalar_zero(ctx_);
                const Scalar diff = at(i, j) - want;
                if (!diff.is_zero(ctx_->eps_eq)) return false;
            }
        return true;
    }

    /// U^m = I?
    bool power_is_identity(std::int64_t m) const {
        ScalarUnitary acc = identity(ctx_, d_);
        for (std::int64_t i = 0; i < m; ++i) acc = acc * (*this);
        return acc.is_identity();
    }

    PolyMatrix as_poly_matrix() const {
        PolyMatrix m(ctx_, d_, d_);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                m.at(i, j) = StarPolynomial::constant(ctx_, at(i, j));
        return m;
    }

    /// diag(U, ..., U) with `copies` blocks.
    PolyMatrix block_diagonal(int copies) const {
        PolyMatrix m = as_poly_matrix();
        PolyMatrix out = m;
        for (int i = 1; i < copies; ++i) out = out.direct_sum(m);
        return out;
    }

private:
    bool is_unitary() const {
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                Scalar acc = scalar_zero(ctx_);
                for (int k = 0; k < d_; ++k) acc = acc + at(i, k) * at(j, k).conj();
                const Scalar want = i == j ? scalar_one(ctx_) : scalar_zero(ctx_);
                if (!(acc - want).is_zero(ctx_->eps_eq)) return false;
            }
        return true;
    }

    Context ctx_;
    int d_;
    std::vector<Scalar> e_;
};

/// The conjugated action R_U : M -> U* R(M) U, applied blockwise when M is
/// (q*d) x (q*d); requires U^k = I for the rotation order k.
inline PolyMatrix apply_RU(const ScalarUnitary& u, const RotationAction& r,
                           const PolyMatrix& m) {
    detail::require(m.rows() == m.cols(), "apply_RU: matrix must be square");
    detail::require(m.rows() % u.dim() == 0, "apply_RU: U dimension must divide matrix dimension");
    detail::require(u.power_is_identity(r.k), "apply_RU: U^k != I");
    const int copies = m.rows() / u.dim();
    const PolyMatrix ub = u.block_diagonal(copies);
    const PolyMatrix ubs = u.adjoint().block_diagonal(copies);
    return ubs * apply_rotation(r, m) * ub;
}

inline bool is_RU_fixed(const ScalarUnitary& u, const RotationAction& r, const PolyMatrix& m) {
    return apply_RU(u, r, m) == m;
}

/// Diagonal factorization of a rotation: R(M) = A M B with A^k = B^k = I.
struct RotationFactorization {
    ScalarUnitary a, b;
    std::vector<std::int64_t> a_exponents;  // A_ii = omega^{a_i}, omega = e^{2*pi*i/k}
    std::vector<std::int64_t> b_exponents;
};

/// Solves the rank-1 phase system A_i B_j = chi_ij over the entrywise
/// homogeneity phases chi_ij = omega^{class of M_ij}, normalized by B_11 = 1
/// (free components of the zero-pattern graph get a consistent completion).
/// Errors on an inhomogeneous entry or an inconsistent phase system.
inline RotationFactorization factor_rotation(const PolyMatrix& m, const RotationAction& r) {
    const Context& ctx = m.context();
    const std::int64_t k = r.k;
    const int rows = m.rows(), cols = m.cols();
    // classes of nonzero entries
    std::vector<std::vector<std::optional<std::int64_t>>> cls(
        static_cast<std::size_t>(rows),
        std::vector<std::optional<std::int64_t>>(static_cast<std::size_t>(cols)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (m.at(i, j).is_zero()) continue;
            auto c = homogeneity_class(m.at(i, j), r);
            detail::require(c.has_value(), "factor_rotation: entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") is inhomogeneous");
            cls[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
        }

    // additive solve: a_i + b_j = cls_ij (mod k), b_0 = 0 first
    std::vector<std::optional<std::int64_t>> a(static_cast<std::size_t>(rows));
    std::vector<std::optional<std::int64_t>> b(static_cast<std::size_t>(cols));
    auto propagate = [&]() {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) {
                    const auto& c = cls[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    if (!c) continue;
                    auto& ai = a[static_cast<std::size_t>(i)];
                    auto& bj = b[static_cast<std::size_t>(j)];
                    if (ai && bj) {
                        detail::require(((*ai + *bj) % k + k) % k == *c,
                                        "factor_rotation: inconsistent phase system");
                    } else if (ai && !bj) {
                        bj = ((*c - *ai) % k + k) % k;
                        progress = true;
                    } else if (!ai && bj) {
                        ai = ((*c - *bj) % k + k) % k;
                        progress = true;
                    }
                }
        }
    };
    b[0] = 0;
    propagate();
    // consistent completion of any disconnected component, seeded at 0
    for (int j = 0; j < cols; ++j)
        if (!b[static_cast<std::size_t>(j)]) {
            b[static_cast<std::size_t>(j)] = 0;
            propagate();
        }
    for (int i = 0; i < rows; ++i)
        if (!a[static_cast<std::size_t>(i)]) {
            a[static_cast<std::size_t>(i)] = 0;
            propagate();
        }

    std::vector<Scalar> adiag, bdiag;
    std::vector<std::int64_t> aexp, bexp;
    for (int i = 0; i < rows; ++i) {
        aexp.push_back(*a[static_cast<std::size_t>(i)]);
        adiag.push_back(scalar_phase(ctx, Angle(Fraction(aexp.back(), k))));
    }
    for (int j = 0; j < cols; ++j) {
        bexp.push_back(*b[static_cast<std::size_t>(j)]);
        bdiag.push_back(scalar_phase(ctx, Angle(Fraction(bexp.back(), k))));
    }
    RotationFactorization f{ScalarUnitary::diagonal(ctx, adiag),
                            ScalarUnitary::diagonal(ctx, bdiag), aexp, bexp};
    // verify R(M) = A M B by expansion
    const PolyMatrix lhs = apply_rotation(r, m);
    const PolyMatrix rhs = f.a.as_poly_matrix() * m * f.b.as_poly_matrix();
    detail::require(lhs == rhs, "factor_rotation: verification R(M) = A M B failed");
    detail::require(f.a.power_is_identity(k) && f.b.power_is_identity(k),
                    "factor_rotation: A^k = B^k = I failed");
    return f;
}

}  // namespace ncsphere
