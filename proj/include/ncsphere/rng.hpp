#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ncsphere/context.hpp"
#include "ncsphere/monomial.hpp"
#include "ncsphere/rep_eval.hpp"

namespace ncsphere {

/// Seeded pseudo-random source for suites and property tests. All draws go
/// through explicit arithmetic on the raw 64-bit stream (never through
/// distribution objects), so a seed reproduces identical values everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double uniform() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::complex<double> unit_complex() {
        return std::polar(1.0, 2.0 * std::numbers::pi * uniform());
    }

    /// A random reduced angle p/q with q drawn from `dens`.
    Fraction fraction(const std::vector<std::int64_t>& dens) {
        const std::int64_t q = dens[static_cast<std::size_t>(
            uniform_int(0, static_cast<std::int64_t>(dens.size()) - 1))];
        return Fraction(uniform_int(0, q - 1), q);
    }

    /// Random exact parameter matrix with angle denominators from `dens`.
    ParameterMatrix parameter_matrix(int n, const std::vector<std::int64_t>& dens) {
        ParameterMatrix rho(n);
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) rho.set_angle(j, k, Angle(fraction(dens)));
        return rho;
    }

    /// Random primitive k-th roots: exponents coprime to k.
    std::vector<Fraction> primitive_roots(int n, std::int64_t k) {
        std::vector<Fraction> roots;
        for (int i = 0; i < n; ++i) {
            std::int64_t p = uniform_int(1, k - 1);
            while (std::gcd(p, k) != 1) p = uniform_int(1, k - 1);
            roots.emplace_back(p, k);
        }
        return roots;
    }

    Monomial monomial(const Context& ctx, std::uint32_t max_degree) {
        Monomial m(ctx->n());
        const auto deg = static_cast<std::uint32_t>(uniform_int(0, max_degree));
        for (std::uint32_t i = 0; i < deg; ++i) {
            const int slot = static_cast<int>(uniform_int(0, 2 * ctx->n() - (ctx->has_x ? 0 : 1)));
            if (slot == 2 * ctx->n())
                ++m.c;
            else if (slot % 2 == 0)
                ++m.a[static_cast<std::size_t>(slot / 2)];
            else
                ++m.b[static_cast<std::size_t>(slot / 2)];
        }
        return m;
    }

    /// Random polynomial: small rational coefficients times context phases.
    StarPolynomial polynomial(const Context& ctx, int max_terms, std::uint32_t max_degree) {
        StarPolynomial p(ctx);
        const auto terms = uniform_int(1, max_terms);
        for (std::int64_t i = 0; i < terms; ++i) {
            Scalar c = scalar_rational(ctx, Rational(uniform_int(-4, 4), uniform_int(1, 3)));
            if (ctx->exact) {
                const std::int64_t n = ctx->field->conductor();
                c = c * Scalar::exact_phase(Fraction(uniform_int(0, n - 1), n), ctx->field);
            } else {
                c = c * Scalar::complex_value(unit_complex());
            }
            p.add_term(monomial(ctx, max_degree), c);
        }
        return p;
    }

    SpherePoint sphere_point(int n, bool with_s) {
        SpherePoint pt;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = uniform(0.05, 1.0);
            pt.t.push_back(t);
            sum += t * t;
            pt.w.push_back(unit_complex());
        }
        double s = 0.0;
        if (with_s) {
            s = uniform(-1.0, 1.0);
            sum += s * s;
        }
        const double scale = 1.0 / std::sqrt(sum);
        for (auto& t : pt.t) t *= scale;
        if (with_s) pt.s = s * scale;
        return pt;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ncsphere
