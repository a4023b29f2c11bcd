#include <catch2/catch_amalgamated.hpp>

#include "ncsphere/ncsphere.hpp"

using namespace ncsphere;

namespace {

Context ctx3(std::int64_t extra = 1) {
    ParameterMatrix rho(3);
    rho.set_angle(0, 1, Angle(Fraction(1, 3)));
    rho.set_angle(0, 2, Angle(Fraction(1, 4)));
    rho.set_angle(1, 2, Angle(Fraction(1, 5)));
    return make_context(rho, false, extra);
}

}  // namespace

TEST_CASE("apply_rotation") {
    const Context ctx = ctx3(3);
    const RotationAction t = RotationAction::antipodal(3);
    const StarPolynomial z1 = StarPolynomial::generator(ctx, 0);
    const StarPolynomial z2 = StarPolynomial::generator(ctx, 1);

    SECTION("T fixes even elements") { CHECK(apply_rotation(t, z1 * z2) == z1 * z2); }

    SECTION("adjoints transform conjugately: R(z1*) = conj(alpha_1) z1*") {
        const RotationAction r(3, {Fraction(1, 3), Fraction(1, 3), Fraction(2, 3)});
        const StarPolynomial z1s = StarPolynomial::generator(ctx, 0, true);
        CHECK(apply_rotation(r, z1s) ==
              z1s.scaled(scalar_phase(ctx, Angle(Fraction(-1, 3)))));
    }

    SECTION("T is an involution on random polynomials") {
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            const StarPolynomial p = rng.polynomial(ctx, 5, 4);
            CHECK(apply_rotation(t, apply_rotation(t, p)) == p);
        }
    }

    SECTION("R is a *-algebra map and has exact order k") {
        const RotationAction r(3, {Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)});
        Rng rng(5);
        for (int i = 0; i < 15; ++i) {
            const StarPolynomial p = rng.polynomial(ctx, 4, 3);
            const StarPolynomial q = rng.polynomial(ctx, 4, 3);
            CHECK(apply_rotation(r, p * q) == apply_rotation(r, p) * apply_rotation(r, q));
            CHECK(apply_rotation(r, p.adjoint()) == apply_rotation(r, p).adjoint());
            StarPolynomial cycled = p;
            for (int m = 0; m < 3; ++m) cycled = apply_rotation(r, cycled);
            CHECK(cycled == p);
        }
    }

    SECTION("antipodal action on an even sphere flips x") {
        ParameterMatrix rho(2);
        rho.set_angle(0, 1, Angle(Fraction(1, 3)));
        const Context even = make_context(rho, true);
        const RotationAction te = RotationAction::antipodal(2);
        const StarPolynomial x = StarPolynomial::x(even);
        CHECK(apply_rotation(te, x) == -x);
        CHECK(apply_rotation(te, x * x) == x * x);
    }

    SECTION("primitivity is enforced") {
        CHECK_THROWS_AS(RotationAction(4, {Fraction(2, 4), Fraction(1, 4), Fraction(1, 4)}),
                        error);  // 2/4 has order 2, not 4
    }
}

TEST_CASE("homogeneity_class") {
    const Context ctx = ctx3(3);
    const RotationAction t = RotationAction::antipodal(3);
    const StarPolynomial z1 = StarPolynomial::generator(ctx, 0);

    CHECK(homogeneity_class(z1, t) == 1);
    CHECK(homogeneity_class(z1 * z1.adjoint(), t) == 0);

    SECTION("mixing classes is reported as inhomogeneous") {
        const RotationAction r(3, {Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)});
        const StarPolynomial mixed =
            z1 + z1 * StarPolynomial::generator(ctx, 1) * StarPolynomial::generator(ctx, 2);
        CHECK_FALSE(homogeneity_class(mixed, r).has_value());
        // agreement with apply_rotation: class-c parts scale by omega^c
        const StarPolynomial hom = z1 * StarPolynomial::generator(ctx, 1);
        const auto cls = homogeneity_class(hom, r);
        REQUIRE(cls.has_value());
        CHECK(apply_rotation(r, hom) ==
              hom.scaled(scalar_phase(ctx, Angle(Fraction(*cls, 3)))));
    }

    SECTION("zero polynomial is a distinct error") {
        CHECK_THROWS_AS(homogeneity_class(StarPolynomial::zero(ctx), t), error);
    }
}

TEST_CASE("graded_project") {
    const Context ctx = ctx3(5);
    const RotationAction t = RotationAction::antipodal(3);
    const StarPolynomial z1 = StarPolynomial::generator(ctx, 0);

    SECTION("parity split") {
        const StarPolynomial p = z1 + z1 * z1.adjoint();
        CHECK(graded_project(p, t, 1) == z1);
        CHECK(graded_project(p, t, 0) == z1 * z1.adjoint());
        CHECK(graded_project(z1, t, 0).is_zero());
    }

    SECTION("projections decompose, are idempotent, and are orthogonal") {
        Rng rng(7);
        const RotationAction r(5, {Fraction(1, 5), Fraction(2, 5), Fraction(3, 5)});
        for (int i = 0; i < 10; ++i) {
            const StarPolynomial p = rng.polynomial(ctx, 6, 4);
            StarPolynomial sum = StarPolynomial::zero(ctx);
            for (std::int64_t j = 0; j < r.k; ++j) {
                const StarPolynomial pj = graded_project(p, r, j);
                sum = sum + pj;
                if (!pj.is_zero()) CHECK(graded_project(pj, r, j) == pj);
                const std::int64_t other = (j + 1) % r.k;
                CHECK(graded_project(pj, r, other).is_zero());
            }
            CHECK(sum == p);
        }
    }
}

TEST_CASE("apply_RU and fixed points") {
    const Context ctx = ctx3(3);
    const RotationAction t = RotationAction::antipodal(3);

    SECTION("U = I reduces to the plain rotation") {
        const PolyMatrix z = zgen(ctx, 2);
        const ScalarUnitary u = ScalarUnitary::identity(ctx, 2);
        CHECK(apply_RU(u, t, z) == apply_rotation(t, z));
    }

    SECTION("matrices with even entries are fixed by T with U = I") {
        const PolyMatrix z = zgen(ctx, 3);
        const PolyMatrix even = z.adjoint() * z;  // all entries even
        CHECK(is_RU_fixed(ScalarUnitary::identity(ctx, 4), t, even));
    }

    SECTION("blockwise application when U is smaller than M") {
        const ScalarUnitary u = ScalarUnitary::diagonal(
            ctx, {scalar_one(ctx), scalar_phase(ctx, Angle(Fraction(1, 2)))});
        const PolyMatrix z = zgen(ctx, 3);  // 4x4, two 2x2 blocks of U
        const PolyMatrix got = apply_RU(u, t, z);
        CHECK(got.rows() == 4);
        // entry (0,1): U* T(Z) U picks up conj(u_00) u_11 = -1 on top of T
        CHECK(got.at(0, 1) == StarPolynomial::generator(ctx, 1));
    }

    SECTION("U^k = I is required") {
        const ScalarUnitary u = ScalarUnitary::diagonal(
            ctx, {scalar_phase(ctx, Angle(Fraction(1, 3))), scalar_one(ctx)});
        CHECK_THROWS_AS(apply_RU(u, t, zgen(ctx, 2)), error);
    }
}

TEST_CASE("factor_rotation") {
    SECTION("zgen(2) with alpha_1 = alpha_2 = omega gives A = diag(omega, conj omega), B = I") {
        ParameterMatrix rho(2);
        rho.set_angle(0, 1, Angle(Fraction(1, 4)));
        const Context ctx = make_context(rho, false, 3);
        const RotationAction r(3, {Fraction(1, 3), Fraction(1, 3)});
        const auto f = factor_rotation(zgen(ctx, 2), r);
        CHECK(f.a.at(0, 0) == scalar_phase(ctx, Angle(Fraction(1, 3))));
        CHECK(f.a.at(1, 1) == scalar_phase(ctx, Angle(Fraction(-1, 3))));
        CHECK(f.b.is_identity());
    }

    SECTION("identity matrix factors trivially") {
        const Context ctx = ctx3(3);
        const RotationAction r(3, {Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)});
        const auto f = factor_rotation(PolyMatrix::identity(ctx, 3), r);
        CHECK(f.a.is_identity());
        CHECK(f.b.is_identity());
    }

    SECTION("verified factorization for random parameter matrices and orders") {
        Rng rng(11);
        for (const std::int64_t k : {2, 3, 5}) {
            for (int n = 2; n <= 4; ++n) {
                const Context ctx =
                    make_context(rng.parameter_matrix(n, {2, 3, 4}), false, k);
                const RotationAction r(k, rng.primitive_roots(n, k));
                const PolyMatrix z = zgen(ctx, n);
                const auto f = factor_rotation(z, r);  // verifies R(Z) = A Z B internally
                CHECK(f.a.power_is_identity(k));
                CHECK(f.b.power_is_identity(k));
            }
        }
    }

    SECTION("inhomogeneous entries are rejected") {
        const Context ctx = ctx3(2);
        const RotationAction t = RotationAction::antipodal(3);
        PolyMatrix m(ctx, 1, 1);
        m.at(0, 0) = StarPolynomial::generator(ctx, 0) + StarPolynomial::one(ctx);
        CHECK_THROWS_AS(factor_rotation(m, t), error);
    }
}

TEST_CASE("T negates the K1 generator matrix") {
    Rng rng(13);
    for (int n = 2; n <= 4; ++n) {
        const Context ctx = make_context(rng.parameter_matrix(n, {2, 3, 4, 5}));
        const PolyMatrix z = zgen(ctx, n);
        const RotationAction t = RotationAction::antipodal(n);
        CHECK(apply_rotation(t, z) == z.scaled(-scalar_one(ctx)));
    }
}
