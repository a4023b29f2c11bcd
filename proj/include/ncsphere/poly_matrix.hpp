#pragma once

#include <optional>
#include <vector>

#include "ncsphere/star_polynomial.hpp"

namespace ncsphere {

/// A rectangular matrix over StarPolynomial, all entries sharing one context.
class PolyMatrix {
public:
    PolyMatrix(Context ctx, int rows, int cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
        detail::require(rows >= 1 && cols >= 1, "PolyMatrix: bad dimensions");
        entries_.assign(static_cast<std::size_t>(rows) * cols, StarPolynomial::zero(ctx_));
    }

    static PolyMatrix identity(const Context& ctx, int d) {
        PolyMatrix m(ctx, d, d);
        for (int i = 0; i < d; ++i) m.at(i, i) = StarPolynomial::one(ctx);
        return m;
    }

    /// Diagonal matrix of scalar coefficients.
    static PolyMatrix scalar_diag(const Context& ctx, const std::vector<Scalar>& coeffs) {
        const int d = static_cast<int>(coeffs.size());
        PolyMatrix m(ctx, d, d);
        for (int i = 0; i < d; ++i)
            m.at(i, i) = StarPolynomial::constant(ctx, coeffs[static_cast<std::size_t>(i)]);
        return m;
    }

    const Context& context() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    StarPolynomial& at(int i, int j) {
        check(i, j);
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const StarPolynomial& at(int i, int j) const {
        check(i, j);
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    PolyMatrix operator*(const PolyMatrix& o) const {
        detail::require(cols_ == o.rows_, "PolyMatrix: dimension mismatch in product");
        detail::require(same_context(ctx_, o.ctx_), "PolyMatrix: context mismatch");
        PolyMatrix r(ctx_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) {
                StarPolynomial acc = StarPolynomial::zero(ctx_);
                for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }

    PolyMatrix operator+(const PolyMatrix& o) const {
        detail::require(rows_ == o.rows_ && cols_ == o.cols_,
                        "PolyMatrix: dimension mismatch in sum");
        PolyMatrix r(ctx_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
        return r;
    }

    PolyMatrix operator-(const PolyMatrix& o) const {
        detail::require(rows_ == o.rows_ && cols_ == o.cols_,
                        "PolyMatrix: dimension mismatch in difference");
        PolyMatrix r(ctx_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
        return r;
    }

    /// Conjugate-transpose with entrywise adjoint.
    PolyMatrix adjoint() const {
        PolyMatrix r(ctx_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).adjoint();
        return r;
    }

    PolyMatrix scaled(const Scalar& s) const {
        PolyMatrix r(ctx_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).scaled(s);
        return r;
    }

    /// Left multiplication by a single polynomial, p * M.
    PolyMatrix left_mul(const StarPolynomial& p) const {
        PolyMatrix r(ctx_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = p * at(i, j);
        return r;
    }

    PolyMatrix direct_sum(const PolyMatrix& o) const {
        detail::require(same_context(ctx_, o.ctx_), "PolyMatrix: context mismatch");
        PolyMatrix r(ctx_, rows_ + o.rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
        return r;
    }

    bool operator==(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != o.at(i, j)) return false;
        return true;
    }
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    PolyMatrix convert_to(const Context& ctx2) const {
        PolyMatrix r(ctx2, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).convert_to(ctx2);
        return r;
    }

private:
    void check(int i, int j) const {
        detail::require(i >= 0 && i < rows_ && j >= 0 && j < cols_,
                        "PolyMatrix: index out of range");
    }

    Context ctx_;
    int rows_, cols_;
    std::vector<StarPolynomial> entries_;
};

inline PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) { return a * b; }
inline PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b) { return a + b; }
inline PolyMatrix mat_adjoint(const PolyMatrix& a) { return a.adjoint(); }
inline PolyMatrix direct_sum(const PolyMatrix& a, const PolyMatrix& b) {
    return a.direct_sum(b);
}

/// The pair of scalar diagonals used to attach one more generator to an
/// inductively built K1 generator matrix.
struct AttachDiagonals {
    std::vector<Scalar> d1, d2;
};

/// Diagonals (D1, D2) for attaching generator `g_new` after the ordered list
/// `gens` (all 0-based, distinct). Base case (one prior generator g):
/// D1 = [1], D2 = [conj(rho_{g, g_new})]. Inductive step, with (E1, E2) the
/// diagonals over gens minus its last element g_last:
///
///   D1 = E1 (+) rho_{g_last, g_new} E2*,   D2 = E2 (+) conj(rho_{g_last, g_new}) E1*.
///
/// The result has size 2^{len(gens) - 1}.
inline AttachDiagonals attach_diagonals_scalars(const Context& ctx,
                                                const std::vector<int>& gens, int g_new) {
    detail::require(gens.size() >= 1, "attach_diagonals: need at least one prior generator");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        detail::require(gens[i] >= 0 && gens[i] < ctx->n() && g_new >= 0 && g_new < ctx->n(),
                        "attach_diagonals: generator index out of range");
        detail::require(gens[i] != g_new, "attach_diagonals: indices must be distinct");
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            detail::require(gens[i] != gens[j], "attach_diagonals: indices must be distinct");
    }
    if (gens.size() == 1) {
        AttachDiagonals d;
        d.d1 = {scalar_one(ctx)};
        d.d2 = {scalar_phase(ctx, ctx->rho.angle(g_new, gens[0]))};  // conj(rho_{g0, g_new})
        return d;
    }
    std::vector<int> head(gens.begin(), gens.end() - 1);
    const int g_last = gens.back();
    AttachDiagonals e = attach_diagonals_scalars(ctx, head, g_new);
    const Scalar twist = scalar_phase(ctx, ctx->rho.angle(g_last, g_new));
    AttachDiagonals d;
    d.d1 = e.d1;
    for (const auto& s : e.d2) d.d1.push_back(twist * s.conj());
    d.d2 = e.d2;
    for (const auto& s : e.d1) d.d2.push_back(twist.conj() * s.conj());
    return d;
}

/// The same diagonals packaged as scalar diagonal matrices.
inline std::pair<PolyMatrix, PolyMatrix> attach_diagonals(const Context& ctx,
                                                          const std::vector<int>& gens,
                                                          int g_new) {
    AttachDiagonals d = attach_diagonals_scalars(ctx, gens, g_new);
    return {PolyMatrix::scalar_diag(ctx, d.d1), PolyMatrix::scalar_diag(ctx, d.d2)};
}

/// The recursive K1 generator matrix of level k (2^{k-1} x 2^{k-1}):
///
///   Z(1) = [z_1],
///   Z(m) = [[ Z(m-1),        z_m D1 ],
///           [ -z_m* D2,   Z(m-1)*  ]]
///
/// with (D1, D2) = attach_diagonals over generators 1..m-1 and new generator m.
/// Every entry is a scalar multiple of a single z_j or z_j* or zero, and the
/// result depends only on the leading k x k block of the parameter matrix.
inline PolyMatrix zgen(const Context& ctx, int level) {
    detail::require(level >= 1 && level <= ctx->n(), "zgen: level out of range");
    PolyMatrix z(ctx, 1, 1);
    z.at(0, 0) = StarPolynomial::generator(ctx, 0);
    for (int m = 2; m <= level; ++m) {
        std::vector<int> gens(static_cast<std::size_t>(m) - 1);
        for (int i = 0; i < m - 1; ++i) gens[static_cast<std::size_t>(i)] = i;
        AttachDiagonals d = attach_diagonals_scalars(ctx, gens, m - 1);
        const int half = z.rows();
        PolyMatrix next(ctx, 2 * half, 2 * half);
        const StarPolynomial zm = StarPolynomial::generator(ctx, m - 1);
        const StarPolynomial zms = StarPolynomial::generator(ctx, m - 1, true);
        const PolyMatrix zadj = z.adjoint();
        for (int i = 0; i < half; ++i) {
            for (int j = 0; j < half; ++j) {
                next.at(i, j) = z.at(i, j);
                next.at(half + i, half + j) = zadj.at(i, j);
            }
            next.at(i, half + i) = zm.scaled(d.d1[static_cast<std::size_t>(i)]);
            next.at(half + i, i) = -zms.scaled(d.d2[static_cast<std::size_t>(i)]);
        }
        z = next;
    }
    return z;
}

/// Result of the sphere-unitarity check; on failure the residuals hold the
/// nonzero difference matrices (they double as property-test witnesses).
struct SphereUnitaryReport {
    bool unitary = false;
    std::optional<PolyMatrix> residual_left;   // M M* - target
    std::optional<PolyMatrix> residual_right;  // M* M - target
};

/// Checks M M* = M* M = (sum_{j<=level} z_j z_j*) I symbolically in the
/// free-with-phases algebra. `level` = -1 means all context generators
/// (including x^2 in an even-sphere context).
inline SphereUnitaryReport is_sphere_unitary(const PolyMatrix& m, int level = -1) {
    detail::require(m.rows() == m.cols(), "is_sphere_unitary: matrix must be square");
    const Context& ctx = m.context();
    StarPolynomial target = StarPolynomial::zero(ctx);
    if (level < 0) {
        target = StarPolynomial::sphere_sum(ctx);
    } else {
        detail::require(level >= 1 && level <= ctx->n(), "is_sphere_unitary: bad level");
        for (int j = 0; j < level; ++j) {
            Monomial mono(ctx->n());
            mono.a[static_cast<std::size_t>(j)] = 1;
            mono.b[static_cast<std::size_t>(j)] = 1;
            target.add_term(mono, scalar_one(ctx));
        }
    }
    PolyMatrix target_mat(ctx, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) target_mat.at(i, i) = target;
    const PolyMatrix ma = m.adjoint();
    SphereUnitaryReport rep;
    PolyMatrix left = m * ma - target_mat;
    PolyMatrix right = ma * m - target_mat;
    rep.unitary = left.is_zero() && right.is_zero();
    if (!rep.unitary) {
        rep.residual_left = std::move(left);
        rep.residual_right = std::move(right);
    }
    return rep;
}

}  // namespace ncsphere
