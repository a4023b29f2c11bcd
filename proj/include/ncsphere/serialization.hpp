#pragma once

#include <json.hpp>

#include <string>

#include "ncsphere/actions.hpp"
#include "ncsphere/homs.hpp"
#include "ncsphere/parser.hpp"
#include "ncsphere/rep_eval.hpp"
#include "ncsphere/suites.hpp"
#include "ncsphere/winding.hpp"

namespace ncsphere::io {

using nlohmann::json;

// ---- angles and parameter matrices -----------------------------------------

inline json to_json(const Angle& a) {
    if (a.exact()) return a.frac().str();
    return a.value();
}

inline Angle angle_from_json(const json& j) {
    if (j.is_string()) return Angle(Fraction::parse(j.get<std::string>()));
    if (j.is_number()) return Angle(j.get<double>());
    throw error("angle: expected \"p/q\" or a number");
}

inline json to_json(const ParameterMatrix& rho) {
    json rows = json::array();
    for (int j = 0; j < rho.n(); ++j) {
        json row = json::array();
        for (int k = 0; k < rho.n(); ++k) row.push_back(to_json(rho.angle(j, k)));
        rows.push_back(row);
    }
    return {{"n", rho.n()}, {"angles", rows}};
}

inline ParameterMatrix parameter_matrix_from_json(const json& j) {
    detail::require(j.contains("n") && j.contains("angles"),
                    "parameter matrix: need fields n and angles");
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("angles");
    detail::require(rows.is_array() && static_cast<int>(rows.size()) == n,
                    "parameter matrix: angles must be an n x n array");
    ParameterMatrix rho(n);
    for (int a = 0; a < n; ++a)
        detail::require(rows.at(static_cast<std::size_t>(a)).is_array() &&
                            static_cast<int>(rows.at(static_cast<std::size_t>(a)).size()) == n,
                        "parameter matrix: angles must be an n x n array");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            rho.set_angle(a, b, angle_from_json(rows.at(static_cast<std::size_t>(a))
                                                     .at(static_cast<std::size_t>(b))));
    // the redundant entries must match the invariants (mixed exact/float
    // comparisons, as on the fixed diagonal, fall back to numeric agreement)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Angle got = angle_from_json(rows.at(static_cast<std::size_t>(a))
                                                   .at(static_cast<std::size_t>(b)));
            const Angle& want = rho.angle(a, b);
            const bool ok = got.exact() == want.exact() ? got == want
                                                        : got.value() == want.value();
            detail::require(ok, "parameter matrix: entry (" + std::to_string(a) + "," +
                                    std::to_string(b) +
                                    ") violates self-adjointness or the unit diagonal");
        }
    return rho;
}

/// Context JSON is a parameter matrix plus optional fields has_x,
/// extra_conductor, mode ("exact" | "float"), eps_eq.
inline Context context_from_json(const json& j) {
    const ParameterMatrix rho = parameter_matrix_from_json(j);
    const bool has_x = j.value("has_x", false);
    const std::string mode = j.value("mode", "exact");
    if (mode == "float") return make_float_context(rho, has_x, j.value("eps_eq", 1e-9));
    detail::require(mode == "exact", "context: mode must be \"exact\" or \"float\"");
    return make_context(rho, has_x, j.value("extra_conductor", std::int64_t{1}));
}

inline json to_json(const Context& ctx) {
    json j = to_json(ctx->rho);
    j["has_x"] = ctx->has_x;
    j["mode"] = ctx->exact ? "exact" : "float";
    if (ctx->exact)
        j["extra_conductor"] = ctx->field->conductor();
    else
        j["eps_eq"] = ctx->eps_eq;
    return j;
}

// ---- scalars, monomials, polynomials, matrices ------------------------------

inline json to_json(const Scalar& s) {
    if (!s.exact()) {
        const auto z = s.to_complex();
        return {{"re", z.real()}, {"im", z.imag()}};
    }
    const auto coords = s.coords();
    Integer den = 1;
    for (const auto& c : coords)
        den = boost::multiprecision::lcm(den, Integer(boost::multiprecision::denominator(c)));
    json nums = json::array();
    for (const auto& c : coords) {
        const Integer num = Integer(boost::multiprecision::numerator(c)) *
                            (den / Integer(boost::multiprecision::denominator(c)));
        detail::require(num >= std::numeric_limits<std::int64_t>::min() &&
                            num <= std::numeric_limits<std::int64_t>::max(),
                        "scalar: coordinate too large for JSON");
        nums.push_back(num.convert_to<std::int64_t>());
    }
    detail::require(den <= std::numeric_limits<std::int64_t>::max(),
                    "scalar: denominator too large for JSON");
    return {{"num", nums}, {"den", den.convert_to<std::int64_t>()}};
}

inline Scalar scalar_from_json(const json& j, const Context& ctx) {
    if (j.contains("re")) {
        detail::require(!ctx->exact, "scalar: float payload in an exact context");
        return Scalar::complex_value({j.at("re").get<double>(), j.value("im", 0.0)});
    }
    detail::require(ctx->exact, "scalar: exact payload in a float context");
    const auto& nums = j.at("num");
    const auto den = j.at("den").get<std::int64_t>();
    detail::require(den > 0, "scalar: denominator must be positive");
    detail::require(static_cast<std::int64_t>(nums.size()) == ctx->field->degree(),
                    "scalar: expected " + std::to_string(ctx->field->degree()) +
                        " coordinates for conductor " +
                        std::to_string(ctx->field->conductor()));
    CycloField::Coords coords;
    for (const auto& v : nums) coords.emplace_back(Integer(v.get<std::int64_t>()), Integer(den));
    return Scalar::exact_coords(std::move(coords), ctx->field);
}

inline json to_json(const Monomial& m) {
    return {{"a", m.a}, {"b", m.b}, {"c", m.c}};
}

inline Monomial monomial_from_json(const json& j, int n) {
    Monomial m(n);
    const auto a = j.at("a").get<std::vector<std::uint32_t>>();
    const auto b = j.at("b").get<std::vector<std::uint32_t>>();
    detail::require(static_cast<int>(a.size()) == n && static_cast<int>(b.size()) == n,
                    "monomial: exponent vectors must have length n");
    m.a = a;
    m.b = b;
    m.c = j.value("c", 0u);
    return m;
}

inline json to_json(const StarPolynomial& p) {
    json terms = json::array();
    for (const auto& [m, s] : p.terms())
        terms.push_back({{"mono", to_json(m)}, {"coeff", to_json(s)}});
    return terms;
}

inline StarPolynomial polynomial_from_json(const json& j, const Context& ctx) {
    detail::require(j.is_array(), "polynomial: expected an array of terms");
    StarPolynomial p(ctx);
    for (const auto& term : j)
        p.add_term(monomial_from_json(term.at("mono"), ctx->n()),
                   scalar_from_json(term.at("coeff"), ctx));
    return p;
}

inline json to_json(const PolyMatrix& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) entries.push_back(to_json(m.at(i, j)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline PolyMatrix poly_matrix_from_json(const json& j, const Context& ctx) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& entries = j.at("entries");
    detail::require(static_cast<int>(entries.size()) == rows * cols,
                    "matrix: wrong entry count");
    PolyMatrix m(ctx, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k)
            m.at(i, k) = polynomial_from_json(entries.at(static_cast<std::size_t>(i * cols + k)),
                                              ctx);
    return m;
}

// ---- actions, unitaries, homomorphisms --------------------------------------

inline json to_json(const RotationAction& r) {
    json alphas = json::array();
    for (const auto& a : r.alphas) alphas.push_back(a.str());
    json j = {{"k", r.k}, {"alphas", alphas}};
    if (r.x_sign != 1) j["x_sign"] = r.x_sign;
    return j;
}

inline RotationAction rotation_from_json(const json& j) {
    const auto k = j.at("k").get<std::int64_t>();
    std::vector<Fraction> alphas;
    for (const auto& a : j.at("alphas")) alphas.push_back(Fraction::parse(a.get<std::string>()));
    return RotationAction(k, std::move(alphas), j.value("x_sign", 1));
}

inline json to_json(const ScalarUnitary& u) {
    json entries = json::array();
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < u.dim(); ++j) entries.push_back(to_json(u.at(i, j)));
    return {{"rows", u.dim()}, {"cols", u.dim()}, {"entries", entries}};
}

inline ScalarUnitary scalar_unitary_from_json(const json& j, const Context& ctx) {
    const int d = j.at("rows").get<int>();
    detail::require(j.at("cols").get<int>() == d, "scalar unitary: must be square");
    const auto& entries = j.at("entries");
    detail::require(static_cast<int>(entries.size()) == d * d,
                    "scalar unitary: wrong entry count");
    std::vector<Scalar> e;
    for (const auto& entry : entries) e.push_back(scalar_from_json(entry, ctx));
    return ScalarUnitary(ctx, d, std::move(e));
}

inline json to_json(const GeneratorMap& h) {
    json images;
    for (int j = 0; j < h.domain()->n(); ++j)
        images["z" + std::to_string(j + 1)] = print(h.z_image(j));
    if (h.x_image()) images["x"] = print(*h.x_image());
    return {{"domain", to_json(h.domain())},
            {"codomain", to_json(h.codomain())},
            {"images", images}};
}

inline GeneratorMap generator_map_from_json(const json& j) {
    const Context dom = context_from_json(j.at("domain"));
    const Context cod = context_from_json(j.at("codomain"));
    const auto& images = j.at("images");
    std::vector<StarPolynomial> z_images;
    for (int g = 0; g < dom->n(); ++g) {
        const std::string key = "z" + std::to_string(g + 1);
        detail::require(images.contains(key), "generator map: missing image for " + key);
        z_images.push_back(parse(images.at(key).get<std::string>(), cod));
    }
    std::optional<StarPolynomial> x_image;
    if (dom->has_x) {
        detail::require(images.contains("x"), "generator map: missing image for x");
        x_image = parse(images.at("x").get<std::string>(), cod);
    }
    return GeneratorMap(dom, cod, std::move(z_images), std::move(x_image));
}

// ---- numeric types -----------------------------------------------------------

inline json to_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

inline CMat cmat_from_json(const json& j) {
    detail::require(j.is_array() && !j.empty(), "matrix: expected a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        detail::require(static_cast<Eigen::Index>(row.size()) == cols, "matrix: ragged rows");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& z = row.at(static_cast<std::size_t>(k));
            m(i, k) = std::complex<double>(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return m;
}

inline json to_json(const MatrixLoop& loop) {
    json samples = json::array();
    for (const auto& s : loop.samples) samples.push_back(to_json(s));
    return samples;
}

inline MatrixLoop loop_from_json(const json& j) {
    detail::require(j.is_array(), "loop: expected an array of sampled matrices");
    MatrixLoop loop;
    for (const auto& s : j) loop.samples.push_back(cmat_from_json(s));
    return loop;
}

inline json to_json(const SpherePoint& pt) {
    json w = json::array();
    for (const auto& z : pt.w) w.push_back({z.real(), z.imag()});
    json j = {{"t", pt.t}, {"w", w}};
    if (pt.s) j["s"] = *pt.s;
    return j;
}

inline SpherePoint sphere_point_from_json(const json& j) {
    SpherePoint pt;
    pt.t = j.at("t").get<std::vector<double>>();
    if (j.contains("w_angles")) {
        for (const auto& a : j.at("w_angles"))
            pt.w.push_back(std::polar(1.0, 2.0 * std::numbers::pi * a.get<double>()));
    } else {
        for (const auto& z : j.at("w"))
            pt.w.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    }
    if (j.contains("s")) pt.s = j.at("s").get<double>();
    pt.validate();
    return pt;
}

inline GridSpec grid_from_json(const json& j) {
    GridSpec g;
    g.t_steps = j.value("t_steps", 8);
    g.w_steps = j.value("w_steps", 8);
    if (j.contains("t_path"))
        g.t_path = j.at("t_path").get<std::vector<std::vector<double>>>();
    return g;
}

inline json to_json(const RationalRep& rep, bool with_matrices = false) {
    json j = {{"n", rep.n},
              {"q", rep.q},
              {"psi", to_json(rep.psi)},
              {"max_relation_residual", rep.max_relation_residual},
              {"max_unitarity_residual", rep.max_unitarity_residual}};
    if (with_matrices) {
        json v = json::array();
        for (const auto& m : rep.v) v.push_back(to_json(m));
        j["v"] = v;
    }
    return j;
}

/// Reads a representation. With explicit unitaries ("v") they are taken as
/// given and the invariants re-checked; otherwise the clock-shift construction
/// is rebuilt from psi.
inline RationalRep rational_rep_from_json(const json& j, const Tolerances& tol = {}) {
    const ParameterMatrix psi = parameter_matrix_from_json(j.at("psi"));
    if (!j.contains("v")) return build_rational_rep(psi, tol);
    RationalRep rep{psi.n(), j.at("q").get<long>(), {}, psi};
    for (const auto& m : j.at("v")) rep.v.push_back(cmat_from_json(m));
    detail::require(static_cast<int>(rep.v.size()) == rep.n,
                    "representation: need one unitary per generator");
    for (const auto& v : rep.v) {
        detail::require(v.rows() == rep.q && v.cols() == rep.q,
                        "representation: matrix dimension != q");
        const double ur =
            (v * v.adjoint() - CMat::Identity(rep.q, rep.q)).cwiseAbs().maxCoeff();
        rep.max_unitarity_residual = std::max(rep.max_unitarity_residual, ur);
    }
    for (int a = 0; a < rep.n; ++a)
        for (int b = a + 1; b < rep.n; ++b) {
            const std::complex<double> phase =
                std::polar(1.0, 2.0 * std::numbers::pi * psi.angle(a, b).value());
            const CMat lhs = rep.v[static_cast<std::size_t>(b)] * rep.v[static_cast<std::size_t>(a)];
            const CMat rhs =
                phase * rep.v[static_cast<std::size_t>(a)] * rep.v[static_cast<std::size_t>(b)];
            rep.max_relation_residual =
                std::max(rep.max_relation_residual, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    detail::require(rep.max_unitarity_residual < tol.rep_residual &&
                        rep.max_relation_residual < tol.rep_residual,
                    "representation: relation residual above tolerance");
    return rep;
}

// ---- reports ------------------------------------------------------------------

inline json to_json(const SuiteReport& r, bool with_timings = false) {
    json j = {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass}, {"witnesses", r.witnesses}};
    if (with_timings) j["timings"] = {{"elapsed_ms", r.elapsed_ms}};
    return j;
}

inline json to_json(const ValidationReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back({{"relation", w.relation}, {"detail", w.detail}});
    return {{"valid", r.valid}, {"witnesses", witnesses}};
}

inline json to_json(const EquivarianceReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back({{"relation", w.relation}, {"detail", w.detail}});
    return {{"equivariant", r.equivariant},
            {"order_mismatch", r.order_mismatch},
            {"witnesses", witnesses}};
}

}  // namespace ncsphere::io
