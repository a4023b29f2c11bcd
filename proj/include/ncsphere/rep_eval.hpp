#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "ncsphere/actions.hpp"
#include "ncsphere/config.hpp"
#include "ncsphere/poly_matrix.hpp"

namespace ncsphere {

using CMat = Eigen::MatrixXcd;

/// Clock and shift pair of dimension q for the phase zeta = e^{2*pi*i*p/q}:
/// C = diag(1, zeta, ..., zeta^{q-1}) and the cyclic shift S with S C = zeta C S.
inline std::pair<CMat, CMat> clock_shift(int q, std::int64_t p) {
    detail::require(q >= 1, "clock_shift: dimension must be >= 1");
    CMat c = CMat::Zero(q, q), s = CMat::Zero(q, q);
    const double th = 2.0 * std::numbers::pi * static_cast<double>(p) / q;
    for (int i = 0; i < q; ++i) {
        c(i, i) = std::polar(1.0, th * i);
        s(i, (i + 1) % q) = 1.0;  // S e_{i+1} = e_i, so S C = zeta C S
    }
    return {c, s};
}

/// A finite-dimensional representation of a rational quantum torus: unitaries
/// V_1..V_n with V_k V_j = e^{2*pi*i*psi_jk} V_j V_k.
struct RationalRep {
    int n = 0;
    long q = 1;
    std::vector<CMat> v;
    ParameterMatrix psi;

    double max_relation_residual = 0.0;
    double max_unitarity_residual = 0.0;
};

/// Tensor-per-pair construction behind the rational-representation existence
/// argument: one factor of dimension q_jk (the reduced denominator of angle
/// jk) per noncommuting pair j < k, with V_j the clock and V_k the shift in
/// that factor. The total dimension prod q_jk is odd whenever all
/// denominators are odd.
inline RationalRep build_rational_rep(const ParameterMatrix& psi,
                                      const Tolerances& tol = {}) {
    detail::require(psi.exact(), "build_rational_rep: irrational angle present");
    const int n = psi.n();
    struct Factor {
        int j, k, q;
        std::int64_t p;
    };
    std::vector<Factor> factors;
    long total = 1;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const Fraction f = psi.angle(j, k).frac();
            if (f.den == 1) continue;  // commuting pair, no factor needed
            factors.push_back({j, k, static_cast<int>(f.den), f.num});
            total *= f.den;
        }

    auto kron = [](const CMat& a, const CMat& b) {
        CMat r(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return r;
    };

    RationalRep rep{n, total, {}, psi};
    for (int g = 0; g < n; ++g) {
        CMat acc = CMat::Identity(1, 1);
        for (const auto& f : factors) {
            CMat piece = CMat::Identity(f.q, f.q);
            if (f.j == g)
                piece = clock_shift(f.q, f.p).first;
            else if (f.k == g)
                piece = clock_shift(f.q, f.p).second;
            acc = kron(acc, piece);
        }
        rep.v.push_back(std::move(acc));
    }

    for (int g = 0; g < n; ++g) {
        const CMat& vg = rep.v[static_cast<std::size_t>(g)];
        const double ur = (vg * vg.adjoint() - CMat::Identity(total, total)).cwiseAbs().maxCoeff();
        rep.max_unitarity_residual = std::max(rep.max_unitarity_residual, ur);
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const std::complex<double> phase =
                std::polar(1.0, 2.0 * std::numbers::pi * psi.angle(j, k).value());
            const CMat lhs = rep.v[static_cast<std::size_t>(k)] * rep.v[static_cast<std::size_t>(j)];
            const CMat rhs = phase * rep.v[static_cast<std::size_t>(j)] * rep.v[static_cast<std::size_t>(k)];
            rep.max_relation_residual =
                std::max(rep.max_relation_residual, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    detail::require(rep.max_unitarity_residual < tol.rep_residual &&
                        rep.max_relation_residual < tol.rep_residual,
                    "build_rational_rep: relation residual above tolerance");
    return rep;
}

/// A point of the evaluation model: radial coordinates t on S^{n-1}_+, angular
/// unimodular coordinates w, and for even spheres the x-value s. Generators
/// evaluate as z_j -> t_j w_j V_j (and x -> s I).
struct SpherePoint {
    std::vector<double> t;
    std::vector<std::complex<double>> w;
    std::optional<double> s;

    void validate(const Tolerances& tol = {}) const {
        detail::require(t.size() == w.size(), "SpherePoint: t/w size mismatch");
        double sum = s ? (*s) * (*s) : 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            detail::require(t[i] >= 0.0, "SpherePoint: t must be nonnegative");
            sum += t[i] * t[i];
            detail::require(std::abs(std::abs(w[i]) - 1.0) <= tol.point_residual,
                            "SpherePoint: w must be unimodular");
        }
        detail::require(std::abs(sum - 1.0) <= tol.point_residual,
                        "SpherePoint: radial coordinates must lie on the sphere");
    }

    SpherePoint negated_w() const {
        SpherePoint p(*this);
        for (auto& z : p.w) z = -z;
        return p;
    }
};

/// Evaluates a polynomial at a point through a rational representation:
/// z_j -> t_j w_j V_j, z_j* -> t_j conj(w_j) V_j*, x -> s I, extended
/// multiplicatively and linearly. Result is q x q.
inline CMat eval(const StarPolynomial& p, const SpherePoint& pt, const RationalRep& rep) {
    const Context& ctx = p.context();
    detail::require(ctx->n() == rep.n, "eval: generator count mismatch");
    detail::require(static_cast<int>(pt.t.size()) == rep.n, "eval: point dimension mismatch");
    for (int j = 0; j < rep.n; ++j)
        for (int k = j + 1; k < rep.n; ++k)
            detail::require(std::abs(ctx->rho.angle(j, k).value() - rep.psi.angle(j, k).value()) <
                                1e-12,
                            "eval: representation parameter matrix does not match context");

    const long q = rep.q;
    CMat acc = CMat::Zero(q, q);
    for (const auto& [m, coeff] : p.terms()) {
        if (m.c > 0)
            detail::require(pt.s.has_value(), "eval: x present but the point has no s coordinate");
        std::complex<double> scalar = coeff.to_complex();
        if (m.c > 0) scalar *= std::pow(*pt.s, static_cast<double>(m.c));
        CMat mat = CMat::Identity(q, q);
        for (int j = 0; j < rep.n; ++j) {
            const auto aj = m.a[static_cast<std::size_t>(j)];
            const auto bj = m.b[static_cast<std::size_t>(j)];
            if (aj + bj == 0) continue;
            scalar *= std::pow(pt.t[static_cast<std::size_t>(j)], static_cast<double>(aj + bj));
            const std::int64_t charge = m.charge(j);
            scalar *= std::pow(pt.w[static_cast<std::size_t>(j)], static_cast<double>(aj)) *
                      std::pow(std::conj(pt.w[static_cast<std::size_t>(j)]),
                               static_cast<double>(bj));
            const CMat& vj = rep.v[static_cast<std::size_t>(j)];
            for (std::int64_t r = 0; r < std::abs(charge); ++r)
                mat = charge > 0 ? CMat(mat * vj) : CMat(mat * vj.adjoint());
        }
        acc += scalar * mat;
    }
    return acc;
}

/// Blockwise evaluation of a matrix: a (d*q) x (d*q) complex matrix.
inline CMat eval(const PolyMatrix& m, const SpherePoint& pt, const RationalRep& rep) {
    const long q = rep.q;
    CMat acc = CMat::Zero(m.rows() * q, m.cols() * q);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            acc.block(i * q, j * q, q, q) = eval(m.at(i, j), pt, rep);
    return acc;
}

/// Deterministic grid specification over S^{n-1}_+ x T^n. The radial grid
/// walks spherical angles in [0, pi/2]^{n-1} with t_steps points per angle
/// (t_path, when set, overrides it with an explicit list of t vectors); the
/// angular grid takes w_steps uniform points per circle factor.
struct GridSpec {
    int t_steps = 8;
    int w_steps = 8;
    std::optional<std::vector<std::vector<double>>> t_path;
};

namespace detail {

inline std::vector<std::vector<double>> radial_grid(int n, const GridSpec& grid) {
    if (grid.t_path) {
        for (const auto& t : *grid.t_path)
            require(static_cast<int>(t.size()) == n, "grid: t_path entry of wrong dimension");
        return *grid.t_path;
    }
    require(grid.t_steps >= 2, "grid: need at least 2 radial steps");
    if (n == 1) return {{1.0}};
    std::vector<std::vector<double>> pts;
    std::vector<int> odo(static_cast<std::size_t>(n) - 1, 0);
    const double step = (std::numbers::pi / 2) / (grid.t_steps - 1);
    while (true) {
        std::vector<double> t(static_cast<std::size_t>(n));
        double sines = 1.0;
        for (int i = 0; i < n - 1; ++i) {
            const double phi = step * odo[static_cast<std::size_t>(i)];
            t[static_cast<std::size_t>(i)] = sines * std::cos(phi);
            sines *= std::sin(phi);
        }
        t[static_cast<std::size_t>(n) - 1] = sines;
        pts.push_back(std::move(t));
        int i = 0;
        for (; i < n - 1; ++i) {
            if (++odo[static_cast<std::size_t>(i)] < grid.t_steps) break;
            odo[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n - 1) break;
    }
    return pts;
}

/// Calls fn for every w tuple of the angular grid.
inline void for_each_w(int n, int w_steps,
                       const std::function<void(const std::vector<std::complex<double>>&)>& fn) {
    require(w_steps >= 2, "grid: need at least 2 angular steps");
    std::vector<int> odo(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] =
                std::polar(1.0, 2.0 * std::numbers::pi * odo[static_cast<std::size_t>(i)] / w_steps);
        fn(w);
        int i = 0;
        for (; i < n; ++i) {
            if (++odo[static_cast<std::size_t>(i)] < w_steps) break;
            odo[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
}

}  // namespace detail

struct GridExtremum {
    double value = 0.0;
    SpherePoint point;
};

/// Max over the grid of the operator 2-norm of eval(M). A lower bound on the
/// true sup-norm, not a certified upper bound.
inline GridExtremum grid_norm(const PolyMatrix& m, const RationalRep& rep, const GridSpec& grid) {
    detail::require(!m.context()->has_x, "grid_norm: odd-sphere contexts only");
    GridExtremum best{-1.0, {}};
    for (const auto& t : detail::radial_grid(rep.n, grid)) {
        detail::for_each_w(rep.n, grid.w_steps, [&](const std::vector<std::complex<double>>& w) {
            SpherePoint pt{t, w, std::nullopt};
            Eigen::JacobiSVD<CMat> svd(eval(m, pt, rep));
            const double norm = svd.singularValues()(0);
            if (norm > best.value) best = {norm, pt};
        });
    }
    detail::require(best.value >= 0.0, "grid_norm: empty grid");
    return best;
}

/// Min over the grid of the smallest singular value (invertibility evidence).
inline GridExtremum grid_min_singular(const PolyMatrix& m, const RationalRep& rep,
                                      const GridSpec& grid) {
    detail::require(!m.context()->has_x, "grid_min_singular: odd-sphere contexts only");
    GridExtremum best{-1.0, {}};
    for (const auto& t : detail::radial_grid(rep.n, grid)) {
        detail::for_each_w(rep.n, grid.w_steps, [&](const std::vector<std::complex<double>>& w) {
            SpherePoint pt{t, w, std::nullopt};
            Eigen::JacobiSVD<CMat> svd(eval(m, pt, rep));
            const double sigma = svd.singularValues()(svd.singularValues().size() - 1);
            if (best.value < 0.0 || sigma < best.value) best = {sigma, pt};
        });
    }
    detail::require(best.value >= 0.0, "grid_min_singular: empty grid");
    return best;
}

/// The invertible square-sum counterexample attached to a noncommuting
/// generator pair (j,k): the sum
///
///   (x_j + x_k)^2 + (y_j + y_k)^2 + sum_{m not in {j,k}} z_m z_m*
///
/// built from x_m = (z_m + z_m*)/2, y_m = (z_m - z_m*)/2i. Symbolically,
/// sum - cross equals the sphere-sum polynomial exactly, where
/// cross = (1 + rho_kj)/2 (z_j z_k* + z_j* z_k); modulo the sphere relation the
/// sum is 1 + cross, with ||cross|| <= |1 + rho_kj|/2 < 1.
struct CounterexampleSum {
    StarPolynomial sum;         // the verbatim expansion
    StarPolynomial simplified;  // 1 + cross (equal modulo the sphere relation)
    StarPolynomial cross;
    double bound = 0.0;  // |1 + rho_kj| / 2, exact in closed form
};

inline CounterexampleSum counterexample_sum(const Context& ctx, int j, int k) {
    detail::require(!ctx->has_x, "counterexample_sum: odd-sphere contexts only");
    detail::require(j >= 0 && k >= 0 && j < ctx->n() && k < ctx->n() && j != k,
                    "counterexample_sum: bad generator pair");
    detail::require(!ctx->rho.angle(j, k).is_zero(),
                    "counterexample_sum: generators commute (rho_jk = 1), construction degenerates");
    detail::require(ctx->exact, "counterexample_sum: exact context required");

    auto x_part = [&](int m) {
        return (StarPolynomial::generator(ctx, m) + StarPolynomial::generator(ctx, m, true))
            .scaled(Rational(1, 2));
    };
    auto y_part = [&](int m) {
        const Scalar minus_i_over_2 =
            Scalar::exact_phase(Fraction(-1, 4), ctx->field, Rational(1, 2));
        return (StarPolynomial::generator(ctx, m) - StarPolynomial::generator(ctx, m, true))
            .scaled(minus_i_over_2);
    };

    const StarPolynomial xs = x_part(j) + x_part(k);
    const StarPolynomial ys = y_part(j) + y_part(k);
    StarPolynomial sum = xs * xs + ys * ys;
    for (int m = 0; m < ctx->n(); ++m) {
        if (m == j || m == k) continue;
        sum = sum + StarPolynomial::generator(ctx, m) * StarPolynomial::generator(ctx, m, true);
    }

    const Scalar half_one_plus_rho_kj =
        (scalar_one(ctx) + rho_phase(ctx, k, j)).times_rational(Rational(1, 2));
    const StarPolynomial cross =
        (StarPolynomial::generator(ctx, j) * StarPolynomial::generator(ctx, k, true) +
         StarPolynomial::generator(ctx, j, true) * StarPolynomial::generator(ctx, k))
            .scaled(half_one_plus_rho_kj);

    detail::require(sum - cross == StarPolynomial::sphere_sum(ctx),
                    "counterexample_sum: symbolic identity failed");

    const double theta = ctx->rho.angle(j, k).value();
    const double bound = std::abs(std::cos(std::numbers::pi * theta));
    return {sum, StarPolynomial::one(ctx) + cross, cross, bound};
}

/// Numeric check that an odd torus element b in an odd-dimensional
/// representation has det E(b)(-w) = -det E(b)(w): the entries of E(b) are odd
/// in w and the dimension is odd, so the determinant is an odd function.
struct DetParityReport {
    double max_antisymmetry = 0.0;
    std::optional<double> max_hermiticity;  // set when b* = b
    long points = 0;
    bool pass = false;
};

inline DetParityReport det_parity_demo(const RationalRep& rep, const StarPolynomial& b,
                                       const GridSpec& grid,
                                       std::optional<std::vector<double>> t_override = std::nullopt,
                                       const Tolerances& tol = {}) {
    detail::require(rep.q % 2 == 1, "det_parity_demo: representation dimension must be odd");
    detail::require(!b.is_zero(), "det_parity_demo: zero element");
    for (const auto& [m, s] : b.terms())
        detail::require(m.c == 0, "det_parity_demo: torus elements only (no x)");
    const auto cls = homogeneity_class(b, RotationAction::antipodal(rep.n));
    detail::require(cls.has_value() && *cls == 1, "det_parity_demo: element must be odd");

    std::vector<double> t = t_override.value_or(
        std::vector<double>(static_cast<std::size_t>(rep.n), 1.0 / std::sqrt(rep.n)));
    detail::require(static_cast<int>(t.size()) == rep.n, "det_parity_demo: bad t override");

    const bool self_adjoint = b == b.adjoint();
    DetParityReport report;
    if (self_adjoint) report.max_hermiticity = 0.0;
    detail::for_each_w(rep.n, grid.w_steps, [&](const std::vector<std::complex<double>>& w) {
        SpherePoint pt{t, w, std::nullopt};
        const CMat plus = eval(b, pt, rep);
        const CMat minus = eval(b, pt.negated_w(), rep);
        report.max_antisymmetry =
            std::max(report.max_antisymmetry, std::abs(minus.determinant() + plus.determinant()));
        if (self_adjoint)
            report.max_hermiticity = std::max(*report.max_hermiticity,
                                              (plus - plus.adjoint()).cwiseAbs().maxCoeff());
        ++report.points;
    });
    report.pass = report.max_antisymmetry <= tol.det_parity &&
                  (!report.max_hermiticity || *report.max_hermiticity <= tol.det_parity);
    return report;
}

/// Complex matrix form of a scalar unitary (bridge to the numeric layer).
inline CMat to_complex(const ScalarUnitary& u) {
    CMat m(u.dim(), u.dim());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < u.dim(); ++j) m(i, j) = u.at(i, j).to_complex();
    return m;
}

}  // namespace ncsphere
