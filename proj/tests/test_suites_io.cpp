#include <catch2/catch_amalgamated.hpp>

#include "ncsphere/ncsphere.hpp"

using namespace ncsphere;
using nlohmann::json;

TEST_CASE("verification suites pass and are deterministic") {
    SECTION("zgen") {
        const SuiteReport a = suite_zgen(4, 3, 42);
        CHECK(a.pass);
        const SuiteReport b = suite_zgen(4, 3, 42);
        CHECK(io::to_json(a).dump() == io::to_json(b).dump());
    }

    SECTION("borsuk-ulam-engine") {
        const SuiteReport r = suite_borsuk_ulam_engine(3, 2, 42);
        CHECK(r.pass);
    }

    SECTION("counterexample") {
        const SuiteReport r = suite_counterexample(3, 42, 12);
        CHECK(r.pass);
    }

    SECTION("winding") {
        const SuiteReport a = suite_winding(10, 42);
        CHECK(a.pass);
        const SuiteReport b = suite_winding(10, 42);
        CHECK(io::to_json(a).dump() == io::to_json(b).dump());
    }

    SECTION("rational-rep") {
        const SuiteReport r = suite_rational_rep(5, 42);
        CHECK(r.pass);
    }

    SECTION("unknown suite name") { CHECK_THROWS_AS(run_suite("nope", 1), error); }
}

TEST_CASE("json round trips") {
    ParameterMatrix rho(3);
    rho.set_angle(0, 1, Angle(Fraction(1, 3)));
    rho.set_angle(0, 2, Angle(Fraction(2, 5)));
    rho.set_angle(1, 2, Angle(Fraction(3, 4)));
    const Context ctx = make_context(rho);

    SECTION("parameter matrix") {
        const json j = io::to_json(rho);
        CHECK(io::parameter_matrix_from_json(j) == rho);
        // tampering with a redundant entry is caught
        json bad = j;
        bad["angles"][1][0] = "1/3";
        CHECK_THROWS_AS(io::parameter_matrix_from_json(bad), error);
    }

    SECTION("context") {
        const json j = io::to_json(ctx);
        const Context back = io::context_from_json(j);
        CHECK(same_context(ctx, back));
    }

    SECTION("float contexts load with numeric angles") {
        const json j = {{"n", 2},
                        {"angles", {{0.0, 0.1234567}, {-0.1234567, 0.0}}},
                        {"mode", "float"}};
        const Context fctx = io::context_from_json(j);
        CHECK_FALSE(fctx->exact);
        CHECK(fctx->rho.angle(0, 1).value() == Catch::Approx(0.1234567));
        CHECK(same_context(fctx, io::context_from_json(io::to_json(fctx))));
    }

    SECTION("polynomials and matrices") {
        Rng rng(9);
        for (int t = 0; t < 10; ++t) {
            const StarPolynomial p = rng.polynomial(ctx, 6, 4);
            CHECK(io::polynomial_from_json(io::to_json(p), ctx) == p);
        }
        const PolyMatrix z = zgen(ctx, 3);
        CHECK(io::poly_matrix_from_json(io::to_json(z), ctx) == z);
    }

    SECTION("float-mode polynomials") {
        ParameterMatrix frho(2);
        frho.set_angle(0, 1, Angle(0.3));
        const Context fctx = make_float_context(frho);
        const StarPolynomial p =
            StarPolynomial::generator(fctx, 0).scaled(Scalar::complex_value({0.25, -1.5}));
        const StarPolynomial back = io::polynomial_from_json(io::to_json(p), fctx);
        CHECK(back == p);
    }

    SECTION("rotation actions") {
        const RotationAction r(4, {Fraction(1, 4), Fraction(3, 4), Fraction(1, 4)}, -1);
        const RotationAction back = io::rotation_from_json(io::to_json(r));
        CHECK(back.k == 4);
        CHECK(back.alphas == r.alphas);
        CHECK(back.x_sign == -1);
    }

    SECTION("scalar unitaries") {
        const ScalarUnitary u = ScalarUnitary::diagonal(
            ctx, {scalar_one(ctx), scalar_phase(ctx, Angle(Fraction(1, 4)))});
        const ScalarUnitary back = io::scalar_unitary_from_json(io::to_json(u), ctx);
        CHECK(back.dim() == 2);
        CHECK(back.at(1, 1) == u.at(1, 1));
    }

    SECTION("generator maps") {
        ParameterMatrix base(3);
        base.set_angle(0, 1, Angle(Fraction(1, 3)));
        const GeneratorMap pi = kill_zn(base);
        const json j = io::to_json(pi);
        GeneratorMap back = io::generator_map_from_json(j);
        CHECK(back.validate().valid);
        back.validate_or_throw();
        for (int g = 0; g < 3; ++g) CHECK(back.z_image(g) == pi.z_image(g));
    }

    SECTION("loops and sphere points") {
        MatrixLoop loop;
        for (int i = 0; i < 8; ++i) {
            CMat m(2, 2);
            m << std::polar(1.0, 0.3 * i), 0.0, 0.0, 1.0;
            loop.samples.push_back(m);
        }
        const MatrixLoop back = io::loop_from_json(io::to_json(loop));
        REQUIRE(back.size() == 8);
        CHECK((back.samples[3] - loop.samples[3]).cwiseAbs().maxCoeff() == 0.0);

        Rng rng(15);
        const SpherePoint pt = rng.sphere_point(3, true);
        const SpherePoint pback = io::sphere_point_from_json(io::to_json(pt));
        CHECK(pback.t == pt.t);
        REQUIRE(pback.s.has_value());

        const SpherePoint from_angles = io::sphere_point_from_json(
            json{{"t", {1.0, 0.0}}, {"w_angles", {0.25, 0.0}}});
        CHECK(std::abs(from_angles.w[0] - std::complex<double>(0.0, 1.0)) < 1e-12);
    }

    SECTION("scalars: exact payloads reject float contexts and vice versa") {
        const json exact = io::to_json(scalar_one(ctx));
        ParameterMatrix frho(3);
        const Context fctx = make_float_context(frho);
        CHECK_THROWS_AS(io::scalar_from_json(exact, fctx), error);
        const json fl = {{"re", 1.0}, {"im", 0.0}};
        CHECK_THROWS_AS(io::scalar_from_json(fl, ctx), error);
    }
}

TEST_CASE("suite reports serialize with optional timings") {
    const SuiteReport r = suite_rational_rep(2, 3);
    const json without = io::to_json(r);
    CHECK_FALSE(without.contains("timings"));
    const json with = io::to_json(r, true);
    CHECK(with.contains("timings"));
    CHECK(without.at("suite") == "rational-rep");
    CHECK(without.at("seed") == 3);
}
