#pragma once

#include <json.hpp>

#include <chrono>
#include <string>

#include "ncsphere/homs.hpp"
#include "ncsphere/parser.hpp"
#include "ncsphere/rng.hpp"
#include "ncsphere/winding.hpp"

namespace ncsphere {

/// Outcome of one named end-to-end scenario. Deterministic given the seed; a
/// failing suite always records a minimal witness (check name, indices,
/// residual).
struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    bool pass = true;
    nlohmann::json witnesses = nlohmann::json::array();
    double elapsed_ms = 0.0;

    void check(bool ok, nlohmann::json witness) {
        if (ok) return;
        pass = false;
        witnesses.push_back(std::move(witness));
    }

    void guarded(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            pass = false;
            witnesses.push_back({{"check", name}, {"error", e.what()}});
        }
    }
};

namespace detail {

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::vector<std::int64_t> small_denominators() { return {2, 3, 4, 5}; }

/// Hand-built golden matrices: Z(2) and the explicit 4x4 Z(3) with relation
/// phases alpha = rho_12, beta = rho_13, gamma = rho_23.
inline PolyMatrix golden_z2(const Context& ctx) {
    PolyMatrix z(ctx, 2, 2);
    const Scalar alpha_bar = scalar_phase(ctx, ctx->rho.angle(1, 0));
    z.at(0, 0) = StarPolynomial::generator(ctx, 0);
    z.at(0, 1) = StarPolynomial::generator(ctx, 1);
    z.at(1, 0) = -StarPolynomial::generator(ctx, 1, true).scaled(alpha_bar);
    z.at(1, 1) = StarPolynomial::generator(ctx, 0, true);
    return z;
}

inline PolyMatrix golden_z3(const Context& ctx) {
    const Scalar alpha = scalar_phase(ctx, ctx->rho.angle(0, 1));
    const Scalar beta = scalar_phase(ctx, ctx->rho.angle(0, 2));
    const Scalar gamma = scalar_phase(ctx, ctx->rho.angle(1, 2));
    auto z = [&](int j) { return StarPolynomial::generator(ctx, j); };
    auto zs = [&](int j) { return StarPolynomial::generator(ctx, j, true); };
    PolyMatrix m(ctx, 4, 4);
    m.at(0, 0) = z(0);
    m.at(0, 1) = z(1);
    m.at(0, 2) = z(2);
    m.at(1, 0) = -zs(1).scaled(alpha.conj());
    m.at(1, 1) = zs(0);
    m.at(1, 3) = z(2).scaled(gamma * beta);
    m.at(2, 0) = -zs(2).scaled(beta.conj());
    m.at(2, 2) = zs(0);
    m.at(2, 3) = -z(1).scaled(alpha);
    m.at(3, 1) = -zs(2).scaled(gamma.conj());
    m.at(3, 2) = zs(1);
    m.at(3, 3) = z(0);
    return m;
}

/// Equality of polynomials over different contexts "as formal *-monomial"
/// sums: same exponent data (zero-padded to a common generator count) and the
/// same coefficients (fields must share one conductor).
inline bool formal_terms_equal(const StarPolynomial& a, const StarPolynomial& b) {
    if (a.terms().size() != b.terms().size()) return false;
    const int n = std::max(a.context()->n(), b.context()->n());
    auto padded = [n](const StarPolynomial& p) {
        std::vector<std::tuple<std::vector<std::uint32_t>, std::vector<std::uint32_t>,
                               std::uint32_t>>
            keys;
        std::vector<Scalar> vals;
        for (const auto& [m, s] : p.terms()) {
            std::vector<std::uint32_t> ap(m.a), bp(m.b);
            ap.resize(static_cast<std::size_t>(n), 0);
            bp.resize(static_cast<std::size_t>(n), 0);
            keys.emplace_back(std::move(ap), std::move(bp), m.c);
            vals.push_back(s);
        }
        return std::make_pair(keys, vals);
    };
    const auto [ka, va] = padded(a);
    const auto [kb, vb] = padded(b);
    for (std::size_t i = 0; i < ka.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < kb.size(); ++j)
            if (ka[i] == kb[j] && va[i] == vb[j]) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace detail

/// Recursive K1 generator checks: golden Z(2)/Z(3), sphere-unitarity for
/// random exact parameter matrices up to level nmax, the commutative collapse,
/// and leading-submatrix consistency.
inline SuiteReport suite_zgen(int nmax = 5, int trials = 10, std::uint64_t seed = 1) {
    detail::Stopwatch timer;
    SuiteReport report{"zgen", seed};
    Rng rng(seed);

    report.guarded("golden", [&] {
        ParameterMatrix rho(3);
        rho.set_angle(0, 1, Angle(Fraction(1, 3)));
        rho.set_angle(0, 2, Angle(Fraction(1, 5)));
        rho.set_angle(1, 2, Angle(Fraction(1, 7)));
        const Context ctx = make_context(rho);
        report.check(zgen(ctx, 1).at(0, 0) == StarPolynomial::generator(ctx, 0),
                     {{"check", "golden"}, {"level", 1}});
        report.check(zgen(ctx, 2) == detail::golden_z2(ctx), {{"check", "golden"}, {"level", 2}});
        report.check(zgen(ctx, 3) == detail::golden_z3(ctx), {{"check", "golden"}, {"level", 3}});
    });

    for (int k = 1; k <= nmax; ++k) {
        report.guarded("unitarity", [&] {
            for (int t = 0; t < trials; ++t) {
                const Context ctx =
                    make_context(rng.parameter_matrix(k, detail::small_denominators()));
                const auto rep = is_sphere_unitary(zgen(ctx, k));
                report.check(rep.unitary, {{"check", "unitarity"}, {"level", k}, {"trial", t}});
            }
        });
    }

    report.guarded("commutative", [&] {
        const Context ctx = make_context(ParameterMatrix::commutative(nmax));
        for (int k = 1; k <= nmax; ++k) {
            report.check(is_sphere_unitary(zgen(ctx, k), k).unitary,
                         {{"check", "commutative"}, {"level", k}});
            if (k >= 2) {
                std::vector<int> gens;
                for (int i = 0; i < k - 1; ++i) gens.push_back(i);
                const auto d = attach_diagonals_scalars(ctx, gens, k - 1);
                for (const auto& s : d.d1)
                    report.check(s == scalar_one(ctx), {{"check", "commutative-D1"}, {"level", k}});
                for (const auto& s : d.d2)
                    report.check(s == scalar_one(ctx), {{"check", "commutative-D2"}, {"level", k}});
            }
        }
    });

    report.guarded("submatrix", [&] {
        for (int t = 0; t < trials; ++t) {
            const int small = static_cast<int>(rng.uniform_int(2, std::max(2, nmax - 1)));
            const int big = small + static_cast<int>(rng.uniform_int(1, 2));
            ParameterMatrix omega = rng.parameter_matrix(big, detail::small_denominators());
            ParameterMatrix rho(small);
            for (int j = 0; j < small; ++j)
                for (int k = j + 1; k < small; ++k) rho.set_angle(j, k, omega.angle(j, k));
            const std::int64_t conductor = lcm64(rho.denominator_lcm(), omega.denominator_lcm());
            const Context cr = make_context(rho, false, conductor);
            const Context co = make_context(omega, false, conductor);
            for (int k = 1; k <= small; ++k) {
                const PolyMatrix a = zgen(cr, k);
                const PolyMatrix b = zgen(co, k);
                bool equal = a.rows() == b.rows();
                for (int i = 0; equal && i < a.rows(); ++i)
                    for (int j = 0; equal && j < a.cols(); ++j)
                        equal = detail::formal_terms_equal(a.at(i, j), b.at(i, j));
                report.check(equal, {{"check", "submatrix"}, {"trial", t}, {"level", k}});
            }
        }
    });

    report.elapsed_ms = timer.ms();
    return report;
}

/// The Borsuk-Ulam engine: for equivariant rescaling automorphisms Phi,
/// Z(n)* Phi(Z(n)) is even entrywise (antipodal case), and for order-k
/// rotations the same product is fixed by M -> B R(M) B* with B from the
/// diagonal factorization R(Z) = A Z B.
inline SuiteReport suite_borsuk_ulam_engine(int nmax = 4, int trials = 3,
                                            std::uint64_t seed = 1) {
    detail::Stopwatch timer;
    SuiteReport report{"borsuk-ulam-engine", seed};
    Rng rng(seed);

    auto rescaling = [](const Context& ctx, const std::vector<Fraction>& lambdas) {
        std::vector<StarPolynomial> images;
        for (int j = 0; j < ctx->n(); ++j)
            images.push_back(StarPolynomial::generator(ctx, j)
                                 .scaled(scalar_phase(ctx, Angle(lambdas[static_cast<std::size_t>(j)]))));
        GeneratorMap h(ctx, ctx, std::move(images));
        return h.validate_or_throw();
    };

    // antipodal case: all entries of Z* Phi(Z) have class 0 under T
    for (int n = 2; n <= nmax; ++n) {
        report.guarded("antipodal", [&] {
            const RotationAction t = RotationAction::antipodal(n);
            for (int trial = 0; trial < trials + 1; ++trial) {
                const std::int64_t k = rng.uniform_int(2, 4);
                const Context ctx = make_context(
                    rng.parameter_matrix(n, detail::small_denominators()), false, k);
                std::vector<Fraction> lambdas(static_cast<std::size_t>(n), Fraction(0, 1));
                if (trial > 0)
                    for (auto& l : lambdas) l = Fraction(rng.uniform_int(0, k - 1), k);
                const GeneratorMap phi = rescaling(ctx, lambdas);
                const PolyMatrix z = zgen(ctx, n);
                const PolyMatrix product = z.adjoint() * phi.apply(z);
                for (int i = 0; i < product.rows(); ++i)
                    for (int j = 0; j < product.cols(); ++j) {
                        if (product.at(i, j).is_zero()) continue;
                        const auto cls = homogeneity_class(product.at(i, j), t);
                        report.check(cls.has_value() && *cls == 0,
                                     {{"check", "antipodal"},
                                      {"n", n},
                                      {"trial", trial},
                                      {"entry", {i, j}}});
                    }
            }
        });
    }

    // rotation case: product fixed by M -> B R(M) B*
    for (int n = 2; n <= nmax; ++n) {
        for (const std::int64_t k : {2, 3, 5}) {
            report.guarded("rotation", [&] {
                const Context ctx = make_context(
                    rng.parameter_matrix(n, detail::small_denominators()), false, k);
                const RotationAction r(k, rng.primitive_roots(n, k));
                const PolyMatrix z = zgen(ctx, n);
                const RotationFactorization f = factor_rotation(z, r);
                std::vector<Fraction> lambdas;
                for (int j = 0; j < n; ++j) lambdas.emplace_back(rng.uniform_int(0, k - 1), k);
                const GeneratorMap phi = rescaling(ctx, lambdas);
                const PolyMatrix product = z.adjoint() * phi.apply(z);
                const PolyMatrix conj =
                    f.b.as_poly_matrix() * apply_rotation(r, product) * f.b.adjoint().as_poly_matrix();
                report.check(conj == product,
                             {{"check", "rotation-fixed"}, {"n", n}, {"k", k}});
            });
        }
    }

    report.elapsed_ms = timer.ms();
    return report;
}

/// The invertible square-sum counterexample: exact simplification identity,
/// bound |1 + rho_kj|/2 < 1, and grid agreement |sum - 1| <= bound + slack.
inline SuiteReport suite_counterexample(int trials = 10, std::uint64_t seed = 1,
                                        int grid_steps = 30, const Tolerances& tol = {}) {
    detail::Stopwatch timer;
    SuiteReport report{"counterexample", seed};
    Rng rng(seed);

    auto run_case = [&](const ParameterMatrix& rho, int j, int k, const std::string& label,
                        int steps) {
        const Context ctx = make_context(rho);
        const CounterexampleSum ce = counterexample_sum(ctx, j, k);
        report.check(ce.bound < 1.0, {{"check", label}, {"what", "bound"}, {"bound", ce.bound}});
        const RationalRep rep = build_rational_rep(rho, tol);
        PolyMatrix m(ctx, 1, 1);
        m.at(0, 0) = ce.sum - StarPolynomial::one(ctx);
        const GridExtremum extremum = grid_norm(m, rep, GridSpec{steps, steps, std::nullopt});
        report.check(extremum.value <= ce.bound + tol.grid_slack,
                     {{"check", label},
                      {"what", "grid"},
                      {"grid_max", extremum.value},
                      {"bound", ce.bound}});
    };

    report.guarded("special", [&] {
        ParameterMatrix third(2);
        third.set_angle(0, 1, Angle(Fraction(1, 3)));
        run_case(third, 0, 1, "rho=w(1/3)", grid_steps);

        ParameterMatrix half(2);
        half.set_angle(0, 1, Angle(Fraction(1, 2)));
        const Context ctx = make_context(half);
        const CounterexampleSum ce = counterexample_sum(ctx, 0, 1);
        report.check(ce.bound < 1e-15, {{"check", "rho=-1"}, {"bound", ce.bound}});
        report.check(ce.sum == StarPolynomial::sphere_sum(ctx), {{"check", "rho=-1 sum"}});
    });

    report.guarded("random", [&] {
        for (int t = 0; t < trials; ++t) {
            // random phase rho_kj != 1; n = 2 keeps the evaluation dimension small
            ParameterMatrix rho(2);
            Fraction f = rng.fraction({3, 4, 5, 8});
            if (f.is_zero()) f = Fraction(1, 3);
            rho.set_angle(0, 1, Angle(f));
            run_case(rho, 0, 1, "random " + std::to_string(t), grid_steps);
        }
        // one case with a bystander generator, exercising the sum over m not in {j,k}
        ParameterMatrix rho(3);
        rho.set_angle(0, 1, Angle(Fraction(2, 5)));
        run_case(rho, 0, 1, "bystander", 6);  // t^2 * w^3 grid points, kept coarse
    });

    report.elapsed_ms = timer.ms();
    return report;
}

namespace detail {

/// Random nonvanishing trig polynomial with frequencies of the given parity
/// (parity 1: odd loop f(-z) = -f(z); parity 0: even loop).
inline std::function<std::complex<double>(double)> random_parity_loop(Rng& rng, int parity,
                                                                      int max_freq = 5) {
    while (true) {
        std::vector<std::pair<int, std::complex<double>>> terms;
        for (int f = -max_freq; f <= max_freq; ++f) {
            if (((f % 2) + 2) % 2 != parity) continue;
            terms.push_back({f, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}});
        }
        auto fn = [terms](double theta) {
            std::complex<double> z = 0.0;
            for (const auto& [f, c] : terms) z += c * std::polar(1.0, f * theta);
            return z;
        };
        double min_abs = 1e9;
        for (int i = 0; i < 512; ++i)
            min_abs = std::min(min_abs, std::abs(fn(2.0 * std::numbers::pi * i / 512)));
        if (min_abs > 0.05) return fn;
    }
}

}  // namespace detail

/// Winding parity laws (odd loops have odd winding, even loops even winding)
/// and the invariant-loop divisibility mechanism for orders 2, 3, 4.
inline SuiteReport suite_winding(int trials = 100, std::uint64_t seed = 1,
                                 const Tolerances& tol = {}) {
    detail::Stopwatch timer;
    SuiteReport report{"winding", seed};
    Rng rng(seed);

    auto scalar_loop = [](const std::function<std::complex<double>(double)>& fn) {
        return [fn](double theta) {
            CMat m(1, 1);
            m(0, 0) = fn(theta);
            return m;
        };
    };

    report.guarded("parity", [&] {
        for (int t = 0; t < trials; ++t) {
            const auto odd = detail::random_parity_loop(rng, 1);
            const int w_odd = winding(sample_loop(scalar_loop(odd), 256, 1 << 20, tol).loop, tol);
            report.check(std::abs(w_odd) % 2 == 1,
                         {{"check", "odd-parity"}, {"trial", t}, {"winding", w_odd}});

            const auto even = detail::random_parity_loop(rng, 0);
            const int w_even = winding(sample_loop(scalar_loop(even), 256, 1 << 20, tol).loop, tol);
            report.check(std::abs(w_even) % 2 == 0,
                         {{"check", "even-parity"}, {"trial", t}, {"winding", w_even}});
        }
    });

    report.guarded("invariant-scalar", [&] {
        for (const int k : {2, 3, 4}) {
            for (int t = 0; t < 5; ++t) {
                const auto g = detail::random_parity_loop(rng, t % 2, 3);
                auto fn = scalar_loop([g, k](double theta) { return g(k * theta); });
                const int m = 3 * 256;  // divisible by 2, 3, 4
                MatrixLoop loop;
                for (int i = 0; i < m; ++i)
                    loop.samples.push_back(fn(2.0 * std::numbers::pi * i / m));
                const auto rep = invariant_winding_check(loop, k, CMat::Identity(1, 1), tol);
                report.check(rep.pass, {{"check", "invariant-scalar"},
                                        {"k", k},
                                        {"trial", t},
                                        {"winding", rep.winding}});
            }
        }
    });

    report.guarded("invariant-matrix", [&] {
        // product construction G . (SG) ... (S^{k-1}G), (Sh)(theta) = U h(theta + 2pi/k) U*:
        // the non-scalar deviation of G lives on an arc shorter than 2pi/k, so
        // the factors commute and the product is exactly invariant.
        for (const int k : {2, 3}) {
            CMat u = CMat::Zero(2, 2);
            u(0, 0) = 1.0;
            u(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi / k);
            CMat kmat = CMat::Zero(2, 2);
            kmat(0, 1) = 1.0;  // nilpotent, so I + s K is always invertible
            for (int t = 0; t < 5; ++t) {
                const auto gamma = detail::random_parity_loop(rng, t % 2, 3);
                auto g = [&, k](double theta) {
                    theta = std::fmod(theta, 2.0 * std::numbers::pi);
                    if (theta < 0) theta += 2.0 * std::numbers::pi;
                    double s = 0.0;
                    if (theta < 2.0 * std::numbers::pi / k) {
                        const double x = std::sin(k * theta / 2.0);
                        s = x * x;
                    }
                    return CMat(gamma(theta) * (CMat::Identity(2, 2) + s * kmat));
                };
                auto fn = [&, k](double theta) {
                    CMat acc = CMat::Identity(2, 2);
                    CMat upow = CMat::Identity(2, 2);
                    for (int m = 0; m < k; ++m) {
                        acc = acc * (upow * g(theta + 2.0 * std::numbers::pi * m / k) *
                                     upow.adjoint());
                        upow = upow * u;
                    }
                    return acc;
                };
                const int m = 3 * 512;
                MatrixLoop loop;
                for (int i = 0; i < m; ++i)
                    loop.samples.push_back(fn(2.0 * std::numbers::pi * i / m));
                const auto rep = invariant_winding_check(loop, k, u, tol);
                report.check(rep.pass, {{"check", "invariant-matrix"},
                                        {"k", k},
                                        {"trial", t},
                                        {"winding", rep.winding},
                                        {"residual", rep.invariance_residual}});
            }
        }
    });

    report.elapsed_ms = timer.ms();
    return report;
}

/// Rational torus representations: relation residuals below 1e-12, odd
/// dimension for odd denominators, and determinant parity for odd elements.
inline SuiteReport suite_rational_rep(int trials = 20, std::uint64_t seed = 1,
                                      const Tolerances& tol = {}) {
    detail::Stopwatch timer;
    SuiteReport report{"rational-rep", seed};
    Rng rng(seed);

    report.guarded("representations", [&] {
        for (int t = 0; t < trials; ++t) {
            const int n = static_cast<int>(rng.uniform_int(2, 4));
            ParameterMatrix psi(n);
            long q = 0;
            do {  // keep the tensor dimension desk-scale
                psi = rng.parameter_matrix(n, n == 2 ? std::vector<std::int64_t>{3, 5, 7, 9}
                                                     : std::vector<std::int64_t>{1, 3, 5});
                q = 1;
                for (int j = 0; j < n; ++j)
                    for (int k = j + 1; k < n; ++k) q *= psi.angle(j, k).frac().den;
            } while (q > 200);
            const RationalRep rep = build_rational_rep(psi, tol);
            report.check(rep.q % 2 == 1, {{"check", "odd-dimension"}, {"trial", t}, {"q", rep.q}});
            report.check(rep.max_relation_residual < tol.rep_residual,
                         {{"check", "relation-residual"},
                          {"trial", t},
                          {"residual", rep.max_relation_residual}});
        }
    });

    report.guarded("det-parity", [&] {
        ParameterMatrix psi(3);
        psi.set_angle(0, 1, Angle(Fraction(1, 3)));
        psi.set_angle(0, 2, Angle(Fraction(2, 5)));
        psi.set_angle(1, 2, Angle(Fraction(1, 3)));
        const Context ctx = make_context(psi);
        const RationalRep rep = build_rational_rep(psi, tol);
        report.check(rep.q == 45, {{"check", "det-parity-dim"}, {"q", rep.q}});

        const StarPolynomial b1 =
            StarPolynomial::generator(ctx, 0) + StarPolynomial::generator(ctx, 0, true);
        const StarPolynomial word = StarPolynomial::generator(ctx, 0) *
                                    StarPolynomial::generator(ctx, 1) *
                                    StarPolynomial::generator(ctx, 2);
        const StarPolynomial b2 = word + word.adjoint();
        for (const auto* b : {&b1, &b2}) {
            const auto parity = det_parity_demo(rep, *b, GridSpec{2, 4, std::nullopt},
                                                std::nullopt, tol);
            report.check(parity.pass, {{"check", "det-parity"},
                                       {"antisymmetry", parity.max_antisymmetry}});
        }

        // commutative q = 1 sanity case: an odd scalar function
        const ParameterMatrix flat(1);
        const Context cflat = make_context(flat);
        const RationalRep rflat = build_rational_rep(flat, tol);
        const StarPolynomial b3 =
            StarPolynomial::generator(cflat, 0) + StarPolynomial::generator(cflat, 0, true);
        const auto parity = det_parity_demo(rflat, b3, GridSpec{2, 8, std::nullopt},
                                            std::vector<double>{1.0}, tol);
        report.check(parity.pass, {{"check", "det-parity-q1"},
                                   {"antisymmetry", parity.max_antisymmetry}});
    });

    report.elapsed_ms = timer.ms();
    return report;
}

/// Runs a suite by CLI name.
inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials = -1) {
    if (name == "zgen") return suite_zgen(5, trials < 0 ? 10 : trials, seed);
    if (name == "borsuk-ulam-engine")
        return suite_borsuk_ulam_engine(4, trials < 0 ? 3 : trials, seed);
    if (name == "counterexample") return suite_counterexample(trials < 0 ? 10 : trials, seed);
    if (name == "winding") return suite_winding(trials < 0 ? 100 : trials, seed);
    if (name == "rational-rep") return suite_rational_rep(trials < 0 ? 20 : trials, seed);
    throw error("unknown suite '" + name +
                "' (expected zgen | borsuk-ulam-engine | counterexample | winding | rational-rep)");
}

}  // namespace ncsphere
