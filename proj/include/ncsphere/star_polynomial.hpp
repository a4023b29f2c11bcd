#pragma once

#include <map>
#include <utility>

#include "ncsphere/context.hpp"
#include "ncsphere/monomial.hpp"

namespace ncsphere {

/// The phase picked up when a generator-k factor of star-parity eps_k moves
/// left past a generator-j factor of star-parity eps_j (j < k), as an angle:
///
///   z_k z_j   = rho_jk z_j z_k          (eps_j = eps_k = +1)
///   z_k* z_j  = rho_kj z_j z_k*         (adjoint relation)
///
/// and in general the phase is rho_jk^{eps_j * eps_k}.
inline Fraction swap_phase_angle(const Context& ctx, int j, int eps_j, int k, int eps_k) {
    detail::require(j >= 0 && k >= 0 && j < ctx->n() && k < ctx->n(),
                    "swap_phase: generator index out of range");
    detail::require(j != k, "swap_phase: equal indices never swap");
    detail::require(j < k, "swap_phase: expects j < k");
    detail::require((eps_j == 1 || eps_j == -1) && (eps_k == 1 || eps_k == -1),
                    "swap_phase: star parity must be +1 or -1");
    detail::require(ctx->rho.angle(j, k).exact(), "swap_phase: exact angles required");
    return ctx->rho.angle(j, k).frac().times(eps_j * eps_k);
}

inline Scalar swap_phase(const Context& ctx, int j, int eps_j, int k, int eps_k) {
    detail::require(ctx->exact, "swap_phase: exact context required");
    return Scalar::exact_phase(swap_phase_angle(ctx, j, eps_j, k, eps_k), ctx->field);
}

/// Normal-ordering phase of the product m1 * m2 in closed form:
///
///   prod_{j<k} rho_jk ^ { (c_j - d_j)(a_k - b_k) }
///
/// where (a,b) are m1's exponents and (c,d) are m2's. Each generator-j factor
/// of m2 crosses each generator-k factor of m1 (k > j); signs collapse the
/// crossings to the product of net charges.
inline Scalar mono_mul_phase(const Context& ctx, const Monomial& m1, const Monomial& m2) {
    const int n = ctx->n();
    if (ctx->exact) {
        Fraction total;
        for (int j = 0; j < n; ++j) {
            const std::int64_t qj = m2.charge(j);
            if (qj == 0) continue;
            for (int k = j + 1; k < n; ++k) {
                const std::int64_t qk = m1.charge(k);
                if (qk == 0) continue;
                total = total + ctx->rho.angle(j, k).frac().times(qj * qk);
            }
        }
        return Scalar::exact_phase(total, ctx->field);
    }
    double angle = 0.0;
    for (int j = 0; j < n; ++j) {
        const std::int64_t qj = m2.charge(j);
        if (qj == 0) continue;
        for (int k = j + 1; k < n; ++k)
            angle += static_cast<double>(qj * m1.charge(k)) * ctx->rho.angle(j, k).value();
    }
    const double th = 2.0 * std::numbers::pi * angle;
    return Scalar::complex_value({std::cos(th), std::sin(th)});
}

/// Normal-form product of two monomials: the accumulated phase and the
/// exponent-summed monomial. Agrees with iterated adjacent-transposition
/// rewriting.
inline std::pair<Scalar, Monomial> mono_mul(const Context& ctx, const Monomial& m1,
                                            const Monomial& m2) {
    detail::require(m1.n() == ctx->n() && m2.n() == ctx->n(),
                    "mono_mul: dimension mismatch");
    return {mono_mul_phase(ctx, m1, m2), m1.merged_with(m2)};
}

/// Phase of the adjoint: reversing the factor order of a normal-form monomial
/// and re-ordering costs prod_{j<k} rho_jk^{(a_j-b_j)(a_k-b_k)}.
inline Scalar mono_adjoint_phase(const Context& ctx, const Monomial& m) {
    if (ctx->exact) {
        Fraction total;
        for (int j = 0; j < ctx->n(); ++j) {
            const std::int64_t qj = m.charge(j);
            if (qj == 0) continue;
            for (int k = j + 1; k < ctx->n(); ++k)
                total = total + ctx->rho.angle(j, k).frac().times(qj * m.charge(k));
        }
        return Scalar::exact_phase(total, ctx->field);
    }
    double angle = 0.0;
    for (int j = 0; j < ctx->n(); ++j) {
        const std::int64_t qj = m.charge(j);
        if (qj == 0) continue;
        for (int k = j + 1; k < ctx->n(); ++k)
            angle += static_cast<double>(qj * m.charge(k)) * ctx->rho.angle(j, k).value();
    }
    const double th = 2.0 * std::numbers::pi * angle;
    return Scalar::complex_value({std::cos(th), std::sin(th)});
}

/// A finite sum of normal-form *-monomials with Scalar coefficients; the
/// working representation of elements of the dense *-subalgebra of a quantum
/// torus or theta-deformed sphere. Zero coefficients are never stored, so the
/// zero polynomial is exactly the empty term map (exact mode) and equality is
/// canonical.
class StarPolynomial {
public:
    using TermMap = std::map<Monomial, Scalar>;

    explicit StarPolynomial(Context ctx) : ctx_(std::move(ctx)) {}

    static StarPolynomial zero(const Context& ctx) { return StarPolynomial(ctx); }

    static StarPolynomial constant(const Context& ctx, Scalar s) {
        StarPolynomial p(ctx);
        p.add_term(Monomial::one(ctx->n()), std::move(s));
        return p;
    }

    static StarPolynomial one(const Context& ctx) {
        return constant(ctx, scalar_one(ctx));
    }

    /// The generator z_j (or z_j* when starred); 0-based index.
    static StarPolynomial generator(const Context& ctx, int j, bool starred = false) {
        StarPolynomial p(ctx);
        p.add_term(Monomial::generator(ctx->n(), j, starred), scalar_one(ctx));
        return p;
    }

    /// The central self-adjoint generator x (even spheres only).
    static StarPolynomial x(const Context& ctx) {
        detail::require(ctx->has_x, "StarPolynomial: x not present in this context");
        StarPolynomial p(ctx);
        p.add_term(Monomial::x_power(ctx->n(), 1), scalar_one(ctx));
        return p;
    }

    /// The sphere-relation polynomial: sum_j z_j z_j* (+ x^2 when present).
    static StarPolynomial sphere_sum(const Context& ctx) {
        StarPolynomial p(ctx);
        for (int j = 0; j < ctx->n(); ++j) {
            Monomial m(ctx->n());
            m.a[static_cast<std::size_t>(j)] = 1;
            m.b[static_cast<std::size_t>(j)] = 1;
            p.add_term(m, scalar_one(ctx));
        }
        if (ctx->has_x) p.add_term(Monomial::x_power(ctx->n(), 2), scalar_one(ctx));
        return p;
    }

    const Context& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Coefficient of a monomial (zero scalar if absent).
    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? scalar_zero(ctx_) : it->second;
    }

    void add_term(const Monomial& m, const Scalar& s) {
        detail::require(m.n() == ctx_->n(), "StarPolynomial: monomial dimension mismatch");
        detail::require(ctx_->has_x || m.c == 0,
                        "StarPolynomial: x exponent in an odd-sphere context");
        if (s.is_zero(ctx_->eps_eq)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, s);
            return;
        }
        it->second = it->second + s;
        if (it->second.is_zero(ctx_->eps_eq)) terms_.erase(it);
    }

    StarPolynomial operator+(const StarPolynomial& o) const {
        check_context(o);
        StarPolynomial r(*this);
        for (const auto& [m, s] : o.terms_) r.add_term(m, s);
        return r;
    }

    StarPolynomial operator-(const StarPolynomial& o) const {
        check_context(o);
        StarPolynomial r(*this);
        for (const auto& [m, s] : o.terms_) r.add_term(m, -s);
        return r;
    }

    StarPolynomial operator-() const {
        StarPolynomial r(ctx_);
        for (const auto& [m, s] : terms_) r.terms_.emplace(m, -s);
        return r;
    }

    StarPolynomial operator*(const StarPolynomial& o) const {
        check_context(o);
        StarPolynomial r(ctx_);
        for (const auto& [m1, s1] : terms_)
            for (const auto& [m2, s2] : o.terms_) {
                auto [phase, m] = mono_mul(ctx_, m1, m2);
                r.add_term(m, s1 * s2 * phase);
            }
        return r;
    }

    StarPolynomial scaled(const Scalar& s) const {
        StarPolynomial r(ctx_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }

    StarPolynomial scaled(const Rational& q) const {
        StarPolynomial r(ctx_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.times_rational(q));
        return r;
    }

    /// Term-by-term adjoint: conjugate coefficients, swap plain and starred
    /// exponents, apply the cross-index re-ordering phase.
    StarPolynomial adjoint() const {
        StarPolynomial r(ctx_);
        for (const auto& [m, s] : terms_)
            r.add_term(m.star_exponents(), s.conj() * mono_adjoint_phase(ctx_, m));
        return r;
    }

    bool operator==(const StarPolynomial& o) const {
        check_context(o);
        if (ctx_->exact) return terms_ == o.terms_;
        return (*this - o).is_zero();
    }
    bool operator!=(const StarPolynomial& o) const { return !(*this == o); }

    /// True iff p equals the constant 1.
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_one() &&
               terms_.begin()->second == scalar_one(ctx_);
    }

    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (const auto& [m, s] : terms_) d = std::max(d, m.degree());
        return d;
    }

    /// Re-expresses this polynomial in a structurally identical context with a
    /// larger conductor.
    StarPolynomial convert_to(const Context& ctx2) const {
        detail::require(ctx_->exact && ctx2->exact, "convert_to: exact contexts only");
        detail::require(ctx_->rho == ctx2->rho && ctx_->has_x == ctx2->has_x,
                        "convert_to: algebras differ");
        StarPolynomial r(ctx2);
        for (const auto& [m, s] : terms_) r.add_term(m, s.convert_to(ctx2->field));
        return r;
    }

private:
    void check_context(const StarPolynomial& o) const {
        detail::require(same_context(ctx_, o.ctx_), "StarPolynomial: context mismatch");
    }

    Context ctx_;
    TermMap terms_;
};

inline StarPolynomial poly_mul(const StarPolynomial& p, const StarPolynomial& q) { return p * q; }
inline StarPolynomial poly_add(const StarPolynomial& p, const StarPolynomial& q) { return p + q; }
inline StarPolynomial poly_sub(const StarPolynomial& p, const StarPolynomial& q) { return p - q; }
inline StarPolynomial poly_scale(const StarPolynomial& p, const Scalar& s) { return p.scaled(s); }
inline StarPolynomial adjoint(const StarPolynomial& p) { return p.adjoint(); }

}  // namespace ncsphere
