#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "ncsphere/config.hpp"
#include "ncsphere/rep_eval.hpp"

namespace ncsphere {

/// A loop of invertible complex matrices sampled at theta_m = 2*pi*m/M.
struct MatrixLoop {
    std::vector<CMat> samples;

    int size() const { return static_cast<int>(samples.size()); }
    int dim() const { return samples.empty() ? 0 : static_cast<int>(samples.front().rows()); }
};

/// Winding number of det around the loop: the accumulated principal-branch
/// argument increments divided by 2*pi. Errors on a near-singular sample or
/// when a single increment reaches pi/2 (the loop must be refined first).
inline int winding(const MatrixLoop& loop, const Tolerances& tol = {}) {
    const int m = loop.size();
    detail::require(m >= 3, "winding: need at least 3 samples");
    std::vector<std::complex<double>> dets(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        dets[static_cast<std::size_t>(i)] = loop.samples[static_cast<std::size_t>(i)].determinant();
        detail::require(std::abs(dets[static_cast<std::size_t>(i)]) > tol.min_det,
                        "winding: near-singular sample at index " + std::to_string(i));
    }
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const auto& d0 = dets[static_cast<std::size_t>(i)];
        const auto& d1 = dets[static_cast<std::size_t>((i + 1) % m)];
        const double inc = std::arg(d1 / d0);
        detail::require(std::abs(inc) < std::numbers::pi / 2,
                        "winding: insufficient resolution (argument jump at index " +
                            std::to_string(i) + ")");
        total += inc;
    }
    const double turns = total / (2.0 * std::numbers::pi);
    const double rounded = std::round(turns);
    detail::require(std::abs(turns - rounded) <= tol.winding_closure,
                    "winding: loop does not close");
    return static_cast<int>(rounded);
}

/// Samples theta -> fn(theta) at M points, doubling M until every determinant
/// argument increment stays below pi/2 (trig-polynomial loops settle fast).
struct SampledLoop {
    MatrixLoop loop;
    int refinements = 0;
};

inline SampledLoop sample_loop(const std::function<CMat(double)>& fn, int initial_samples = 64,
                               int max_samples = 1 << 20, const Tolerances& tol = {}) {
    detail::require(initial_samples >= 4, "sample_loop: need at least 4 initial samples");
    int m = initial_samples;
    int refinements = 0;
    while (true) {
        MatrixLoop loop;
        loop.samples.reserve(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            loop.samples.push_back(fn(2.0 * std::numbers::pi * i / m));
        bool ok = true;
        std::complex<double> prev = 0.0;
        for (int i = 0; i <= m; ++i) {
            const std::complex<double> d = loop.samples[static_cast<std::size_t>(i % m)].determinant();
            detail::require(std::abs(d) > tol.min_det,
                            "sample_loop: near-singular sample at index " + std::to_string(i % m));
            if (i > 0 && std::abs(std::arg(d / prev)) >= std::numbers::pi / 2) {
                ok = false;
                break;
            }
            prev = d;
        }
        if (ok) return {std::move(loop), refinements};
        detail::require(2 * m <= max_samples, "sample_loop: refinement cap exceeded");
        m *= 2;
        ++refinements;
    }
}

/// Restriction of a polynomial matrix over a commutative context to the j-th
/// circle: evaluation at t = e_j with w_j = e^{i*theta} and the other angular
/// coordinates fixed at 1 (the trivial q = 1 representation).
inline SampledLoop circle_loop(const PolyMatrix& m, int j, const RationalRep& rep,
                               int resolution = 64, const Tolerances& tol = {}) {
    const Context& ctx = m.context();
    detail::require(!ctx->has_x, "circle_loop: odd-sphere contexts only");
    detail::require(j >= 0 && j < ctx->n(), "circle_loop: circle index out of range");
    detail::require(rep.q == 1, "circle_loop: trivial representation required");
    for (int a = 0; a < ctx->n(); ++a)
        for (int b = a + 1; b < ctx->n(); ++b)
            detail::require(ctx->rho.angle(a, b).is_zero(),
                            "circle_loop: commutative specialization required (all angles zero)");
    auto fn = [&m, &rep, j, n = ctx->n()](double theta) {
        SpherePoint pt;
        pt.t.assign(static_cast<std::size_t>(n), 0.0);
        pt.w.assign(static_cast<std::size_t>(n), {1.0, 0.0});
        pt.t[static_cast<std::size_t>(j)] = 1.0;
        pt.w[static_cast<std::size_t>(j)] = std::polar(1.0, theta);
        return eval(m, pt, rep);
    };
    return sample_loop(fn, resolution, 1 << 20, tol);
}

/// Check of the divisibility mechanism for conjugated-rotation-invariant
/// loops: when f(theta + 2*pi/k) = U* f(theta) U holds at the samples, the
/// winding number must lie in k*Z.
struct InvariantWindingReport {
    double invariance_residual = 0.0;
    int winding = 0;
    bool divisible = false;
    bool pass = false;
};

inline InvariantWindingReport invariant_winding_check(const MatrixLoop& loop, std::int64_t k,
                                                      const CMat& u, const Tolerances& tol = {}) {
    const int m = loop.size();
    detail::require(k >= 2, "invariant_winding_check: order must be >= 2");
    detail::require(m % k == 0, "invariant_winding_check: order must divide the sample count");
    detail::require(u.rows() == u.cols() && u.rows() == loop.dim(),
                    "invariant_winding_check: dimension mismatch");
    detail::require((u * u.adjoint() - CMat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <
                        1e-9,
                    "invariant_winding_check: U is not unitary");
    const int shift = m / static_cast<int>(k);
    InvariantWindingReport report;
    for (int i = 0; i < m; ++i) {
        const CMat& f0 = loop.samples[static_cast<std::size_t>(i)];
        const CMat& f1 = loop.samples[static_cast<std::size_t>((i + shift) % m)];
        const double r = (f1 - u.adjoint() * f0 * u).cwiseAbs().maxCoeff();
        report.invariance_residual = std::max(report.invariance_residual, r);
    }
    detail::require(report.invariance_residual < tol.invariance,
                    "invariant_winding_check: loop is not invariant (residual " +
                        std::to_string(report.invariance_residual) + ")");
    report.winding = winding(loop, tol);
    report.divisible = (report.winding % k) == 0;
    report.pass = report.divisible;
    return report;
}

}  // namespace ncsphere
