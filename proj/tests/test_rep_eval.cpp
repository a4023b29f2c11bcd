#include <catch2/catch_amalgamated.hpp>

#include "ncsphere/ncsphere.hpp"

using namespace ncsphere;

TEST_CASE("clock_shift") {
    SECTION("q = 3, p = 1: S C = zeta C S to 1e-14") {
        const auto [c, s] = clock_shift(3, 1);
        const std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi / 3);
        CHECK(((s * c) - zeta * (c * s)).cwiseAbs().maxCoeff() < 1e-14);
    }

    SECTION("q = 1 gives two [1] matrices") {
        const auto [c, s] = clock_shift(1, 5);
        CHECK(c.rows() == 1);
        CHECK(std::abs(c(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(s(0, 0) - 1.0) < 1e-15);
    }

    SECTION("C^q = S^q = I") {
        for (int q : {2, 3, 5}) {
            const auto [c, s] = clock_shift(q, 1);
            CMat cp = CMat::Identity(q, q), sp = CMat::Identity(q, q);
            for (int i = 0; i < q; ++i) {
                cp = cp * c;
                sp = sp * s;
            }
            CHECK((cp - CMat::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-13);
            CHECK((sp - CMat::Identity(q, q)).cwiseAbs().maxCoeff() < 1e-13);
        }
    }

    SECTION("q = 0 is an error") { CHECK_THROWS_AS(clock_shift(0, 1), error); }
}

TEST_CASE("build_rational_rep") {
    SECTION("n = 2, psi_12 = 1/3 gives q = 3 with the defining relation") {
        ParameterMatrix psi(2);
        psi.set_angle(0, 1, Angle(Fraction(1, 3)));
        const RationalRep rep = build_rational_rep(psi);
        CHECK(rep.q == 3);
        const std::complex<double> phase = std::polar(1.0, 2.0 * std::numbers::pi / 3);
        CHECK((rep.v[1] * rep.v[0] - phase * rep.v[0] * rep.v[1]).cwiseAbs().maxCoeff() < 1e-12);
    }

    SECTION("all angles zero gives the trivial representation") {
        const RationalRep rep = build_rational_rep(ParameterMatrix::commutative(3));
        CHECK(rep.q == 1);
        for (const auto& v : rep.v) CHECK(std::abs(v(0, 0) - 1.0) < 1e-15);
    }

    SECTION("n = 3 with denominators 3, 5, 3 gives q = 45 below tolerance") {
        ParameterMatrix psi(3);
        psi.set_angle(0, 1, Angle(Fraction(1, 3)));
        psi.set_angle(0, 2, Angle(Fraction(2, 5)));
        psi.set_angle(1, 2, Angle(Fraction(1, 3)));
        const RationalRep rep = build_rational_rep(psi);
        CHECK(rep.q == 45);
        CHECK(rep.max_relation_residual < 1e-12);
        CHECK(rep.max_unitarity_residual < 1e-12);
    }

    SECTION("irrational angles are rejected") {
        ParameterMatrix psi(2);
        psi.set_angle(0, 1, Angle(0.5772));
        CHECK_THROWS_AS(build_rational_rep(psi), error);
    }
}

TEST_CASE("eval") {
    ParameterMatrix rho(2);
    rho.set_angle(0, 1, Angle(Fraction(1, 3)));
    const Context ctx = make_context(rho);
    const RationalRep rep = build_rational_rep(rho);
    Rng rng(3);

    SECTION("the sphere sum evaluates to the identity at every point") {
        for (int i = 0; i < 10; ++i) {
            const SpherePoint pt = rng.sphere_point(2, false);
            const CMat m = eval(StarPolynomial::sphere_sum(ctx), pt, rep);
            CHECK((m - CMat::Identity(rep.q, rep.q)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SECTION("zgen(rho,2) at t = (1,0) in the trivial representation is diag(w1, conj w1)") {
        const Context flat = make_context(ParameterMatrix::commutative(2));
        const RationalRep triv = build_rational_rep(ParameterMatrix::commutative(2));
        const double theta = 1.234;
        SpherePoint pt{{1.0, 0.0}, {std::polar(1.0, theta), {1.0, 0.0}}, std::nullopt};
        const CMat m = eval(zgen(flat, 2), pt, triv);
        CHECK(std::abs(m(0, 0) - std::polar(1.0, theta)) < 1e-14);
        CHECK(std::abs(m(1, 1) - std::polar(1.0, -theta)) < 1e-14);
        CHECK(std::abs(m(0, 1)) < 1e-14);
        CHECK(std::abs(m(1, 0)) < 1e-14);
    }

    SECTION("defining-relation residuals vanish at random points") {
        const StarPolynomial residual =
            parse("z2 z1", ctx) - parse("w(1/3) z1 z2", ctx);
        CHECK(residual.is_zero());  // symbolically zero already
        const StarPolynomial raw =
            StarPolynomial::generator(ctx, 1) * StarPolynomial::generator(ctx, 0);
        const StarPolynomial swapped =
            (StarPolynomial::generator(ctx, 0) * StarPolynomial::generator(ctx, 1))
                .scaled(scalar_phase(ctx, Angle(Fraction(1, 3))));
        for (int i = 0; i < 10; ++i) {
            const SpherePoint pt = rng.sphere_point(2, false);
            CHECK((eval(raw, pt, rep) - eval(swapped, pt, rep)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SECTION("eval is a *-homomorphism numerically") {
        for (int i = 0; i < 10; ++i) {
            const StarPolynomial p = rng.polynomial(ctx, 4, 3);
            const StarPolynomial q = rng.polynomial(ctx, 4, 3);
            const SpherePoint pt = rng.sphere_point(2, false);
            CHECK((eval(p * q, pt, rep) - eval(p, pt, rep) * eval(q, pt, rep))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
            CHECK((eval(p.adjoint(), pt, rep) - eval(p, pt, rep).adjoint())
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }

    SECTION("the antipodal action corresponds to w -> -w") {
        const RotationAction t = RotationAction::antipodal(2);
        for (int i = 0; i < 10; ++i) {
            const StarPolynomial p = rng.polynomial(ctx, 5, 4);
            const SpherePoint pt = rng.sphere_point(2, false);
            CHECK((eval(apply_rotation(t, p), pt, rep) - eval(p, pt.negated_w(), rep))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }

    SECTION("even-sphere points carry the x value") {
        ParameterMatrix rho2(2);
        rho2.set_angle(0, 1, Angle(Fraction(1, 3)));
        const Context even = make_context(rho2, true);
        const RationalRep rep2 = build_rational_rep(rho2);
        const SpherePoint pt = rng.sphere_point(2, true);
        const CMat m = eval(StarPolynomial::sphere_sum(even), pt, rep2);
        CHECK((m - CMat::Identity(rep2.q, rep2.q)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_THROWS_AS(eval(StarPolynomial::x(even), rng.sphere_point(2, false), rep2), error);
    }
}

TEST_CASE("grid_norm and grid_min_singular") {
    ParameterMatrix rho(2);
    rho.set_angle(0, 1, Angle(Fraction(1, 3)));
    const Context ctx = make_context(rho);
    const RationalRep rep = build_rational_rep(rho);

    SECTION("the constant 1 has norm 1 everywhere") {
        PolyMatrix one(ctx, 1, 1);
        one.at(0, 0) = StarPolynomial::one(ctx);
        const GridExtremum ex = grid_norm(one, rep, GridSpec{4, 4, std::nullopt});
        CHECK(ex.value == Catch::Approx(1.0).epsilon(1e-12));
        const GridExtremum mn = grid_min_singular(one, rep, GridSpec{4, 4, std::nullopt});
        CHECK(mn.value == Catch::Approx(1.0).epsilon(1e-12));
    }

    SECTION("z1 approaches norm 1 as the grid grows") {
        PolyMatrix z1(ctx, 1, 1);
        z1.at(0, 0) = StarPolynomial::generator(ctx, 0);
        const GridExtremum coarse = grid_norm(z1, rep, GridSpec{3, 4, std::nullopt});
        const GridExtremum fine = grid_norm(z1, rep, GridSpec{17, 4, std::nullopt});
        CHECK(fine.value >= coarse.value);
        CHECK(fine.value == Catch::Approx(1.0).epsilon(1e-6));
        CHECK(fine.point.t[0] == Catch::Approx(1.0));
    }

    SECTION("the cross term stays below its exact bound, approached at t = (1/sqrt2, 1/sqrt2)") {
        const CounterexampleSum ce = counterexample_sum(ctx, 0, 1);
        PolyMatrix cross(ctx, 1, 1);
        cross.at(0, 0) = ce.cross;
        const GridExtremum ex = grid_norm(cross, rep, GridSpec{30, 30, std::nullopt});
        CHECK(ex.value <= ce.bound + 1e-9);
        CHECK(ex.value >= 0.9 * ce.bound);
        CHECK(std::abs(ex.point.t[0] - 1.0 / std::sqrt(2.0)) < 0.1);
    }

    SECTION("t_path overrides the radial grid") {
        PolyMatrix z1(ctx, 1, 1);
        z1.at(0, 0) = StarPolynomial::generator(ctx, 0);
        GridSpec grid{2, 4, std::vector<std::vector<double>>{{1.0, 0.0}}};
        const GridExtremum ex = grid_norm(z1, rep, grid);
        CHECK(ex.value == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("counterexample_sum") {
    SECTION("rho_12 = w(1/3): bound is exactly 1/2") {
        ParameterMatrix rho(2);
        rho.set_angle(0, 1, Angle(Fraction(1, 3)));
        const Context ctx = make_context(rho);
        const CounterexampleSum ce = counterexample_sum(ctx, 0, 1);
        CHECK(ce.bound == Catch::Approx(0.5).margin(1e-15));
        // sum - cross is the sphere polynomial (asserted internally); check the
        // simplified form agrees: sum - 1 written with the sphere witness
        CHECK(ce.sum - ce.cross == StarPolynomial::sphere_sum(ctx));
        CHECK(ce.simplified - StarPolynomial::one(ctx) == ce.cross);
    }

    SECTION("rho_12 = -1: the cross term dies and the sum is the sphere polynomial") {
        ParameterMatrix rho(2);
        rho.set_angle(0, 1, Angle(Fraction(1, 2)));
        const Context ctx = make_context(rho);
        const CounterexampleSum ce = counterexample_sum(ctx, 0, 1);
        CHECK(ce.bound < 1e-15);
        CHECK(ce.cross.is_zero());
        CHECK(ce.sum == StarPolynomial::sphere_sum(ctx));
    }

    SECTION("commuting pair is rejected") {
        const Context flat = make_context(ParameterMatrix::commutative(2));
        CHECK_THROWS_AS(counterexample_sum(flat, 0, 1), error);
    }

    SECTION("bystander generators join as z_m z_m*") {
        ParameterMatrix rho(3);
        rho.set_angle(0, 1, Angle(Fraction(1, 5)));
        const Context ctx = make_context(rho);
        const CounterexampleSum ce = counterexample_sum(ctx, 0, 1);
        Monomial z3z3s(3);
        z3z3s.a[2] = z3z3s.b[2] = 1;
        CHECK(ce.sum.coefficient(z3z3s) == scalar_one(ctx));
    }
}

TEST_CASE("det_parity_demo") {
    SECTION("odd scalar function at q = 1") {
        const ParameterMatrix flat(1);
        const Context ctx = make_context(flat);
        const RationalRep rep = build_rational_rep(flat);
        const StarPolynomial b =
            StarPolynomial::generator(ctx, 0) + StarPolynomial::generator(ctx, 0, true);
        const auto report =
            det_parity_demo(rep, b, GridSpec{2, 16, std::nullopt}, std::vector<double>{1.0});
        CHECK(report.pass);
        CHECK(report.max_antisymmetry < 1e-12);
        REQUIRE(report.max_hermiticity.has_value());
        CHECK(*report.max_hermiticity < 1e-12);
    }

    SECTION("b = z1 + z1' in a q = 3 representation") {
        ParameterMatrix psi(2);
        psi.set_angle(0, 1, Angle(Fraction(1, 3)));
        const Context ctx = make_context(psi);
        const RationalRep rep = build_rational_rep(psi);
        const StarPolynomial b =
            StarPolynomial::generator(ctx, 0) + StarPolynomial::generator(ctx, 0, true);
        const auto report = det_parity_demo(rep, b, GridSpec{2, 8, std::nullopt});
        CHECK(report.pass);
        CHECK(report.max_antisymmetry < 1e-9);
    }

    SECTION("even elements and even dimensions are rejected") {
        ParameterMatrix psi(2);
        psi.set_angle(0, 1, Angle(Fraction(1, 3)));
        const Context ctx = make_context(psi);
        const RationalRep rep = build_rational_rep(psi);
        const StarPolynomial even =
            StarPolynomial::generator(ctx, 0) * StarPolynomial::generator(ctx, 1);
        CHECK_THROWS_AS(det_parity_demo(rep, even, GridSpec{}), error);

        ParameterMatrix psi2(2);
        psi2.set_angle(0, 1, Angle(Fraction(1, 4)));  // q = 4, even
        const RationalRep rep2 = build_rational_rep(psi2);
        const Context ctx2 = make_context(psi2);
        const StarPolynomial b =
            StarPolynomial::generator(ctx2, 0) + StarPolynomial::generator(ctx2, 0, true);
        CHECK_THROWS_AS(det_parity_demo(rep2, b, GridSpec{}), error);
    }
}
