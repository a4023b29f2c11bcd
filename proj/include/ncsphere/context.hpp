#pragma once

#include <complex>
#include <cstdint>
#include <memory>

#include "ncsphere/cyclotomic.hpp"
#include "ncsphere/parameter_matrix.hpp"
#include "ncsphere/scalar.hpp"

namespace ncsphere {

/// Everything a *-polynomial needs to know about its ambient algebra: the
/// generator count and parameter matrix, whether the central self-adjoint x is
/// present (even sphere), the coefficient mode, and in exact mode the
/// cyclotomic field.
///
/// Shared immutably; polynomials hold a Context (shared_ptr) and require
/// matching contexts for binary operations.
struct ContextData {
    ParameterMatrix rho;
    bool has_x = false;
    bool exact = true;
    FieldPtr field;        // exact mode only
    double eps_eq = 1e-9;  // float-mode zero/equality tolerance

    int n() const { return rho.n(); }
};

using Context = std::shared_ptr<const ContextData>;

/// Exact context. The conductor is lcm(4, angle denominators, extra): the
/// factor 4 keeps i representable, `extra` admits rotation orders and w(p/q)
/// coefficient denominators beyond the parameter matrix's own phases.
inline Context make_context(const ParameterMatrix& rho, bool has_x = false,
                            std::int64_t extra_conductor = 1) {
    detail::require(rho.exact(), "make_context: parameter matrix must be exact");
    detail::require(extra_conductor >= 1, "make_context: bad extra conductor");
    auto data = std::make_shared<ContextData>(ContextData{rho, has_x, true, nullptr});
    const std::int64_t conductor = lcm64(lcm64(4, rho.denominator_lcm()), extra_conductor);
    data->field = CycloField::get(conductor);
    return data;
}

/// Float-mode context (tolerance-based zero tests).
inline Context make_float_context(const ParameterMatrix& rho, bool has_x = false,
                                  double eps_eq = 1e-9) {
    auto data = std::make_shared<ContextData>(ContextData{rho, has_x, false, nullptr, eps_eq});
    return data;
}

/// Same algebra, conductor enlarged by `extra` (exact mode).
inline Context upgrade_context(const Context& ctx, std::int64_t extra) {
    detail::require(ctx->exact, "upgrade_context: exact mode only");
    return make_context(ctx->rho, ctx->has_x,
                        lcm64(ctx->field->conductor(), extra));
}

/// Structural equality: same algebra, same mode, same field.
inline bool same_context(const Context& a, const Context& b) {
    if (a == b) return true;
    if (a->exact != b->exact || a->has_x != b->has_x) return false;
    if (a->rho != b->rho) return false;
    if (a->exact) return a->field->conductor() == b->field->conductor();
    return true;
}

/// Scalar constructors dispatching on the context mode.
inline Scalar scalar_zero(const Context& ctx) {
    return ctx->exact ? Scalar::exact_zero(ctx->field) : Scalar::complex_value(0.0);
}

inline Scalar scalar_rational(const Context& ctx, const Rational& q) {
    return ctx->exact ? Scalar::exact_rational(q, ctx->field)
                      : Scalar::complex_value(to_double(q));
}

inline Scalar scalar_one(const Context& ctx) { return scalar_rational(ctx, Rational(1)); }

/// e^{2*pi*i*angle} in this context.
inline Scalar scalar_phase(const Context& ctx, const Angle& a) {
    if (ctx->exact) {
        detail::require(a.exact(), "scalar_phase: float angle in exact context");
        return Scalar::exact_phase(a.frac(), ctx->field);
    }
    const double th = 2.0 * std::numbers::pi * a.value();
    return Scalar::complex_value({std::cos(th), std::sin(th)});
}

/// The phase rho_jk of the context's parameter matrix.
inline Scalar rho_phase(const Context& ctx, int j, int k) {
    return scalar_phase(ctx, ctx->rho.angle(j, k));
}

}  // namespace ncsphere
