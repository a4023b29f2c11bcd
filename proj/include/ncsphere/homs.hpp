#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncsphere/actions.hpp"
#include "ncsphere/poly_matrix.hpp"
#include "ncsphere/rep_eval.hpp"
#include "ncsphere/rng.hpp"

namespace ncsphere {

/// One failed relation with its witness.
struct RelationWitness {
    std::string relation;
    std::string detail;
};

struct ValidationReport {
    bool valid = false;
    std::vector<RelationWitness> witnesses;
};

struct EquivarianceReport {
    bool equivariant = false;
    bool order_mismatch = false;
    std::vector<RelationWitness> witnesses;
};

/// A unital *-homomorphism given by generator images. Images live in the
/// codomain context; the domain conductor must divide the codomain conductor
/// so coefficients can be transported along the canonical embedding.
///
/// A map must be validated before apply() will substitute with it: validation
/// checks every defining relation of the domain algebra on the images, the
/// sphere-sum relation passing iff the image sum equals the constant 1 or the
/// codomain's own sphere polynomial verbatim (numeric sampling covers anything
/// subtler, full ideal membership being out of scope).
class GeneratorMap {
public:
    GeneratorMap(Context domain, Context codomain, std::vector<StarPolynomial> z_images,
                 std::optional<StarPolynomial> x_image = std::nullopt)
        : dom_(std::move(domain)),
          cod_(std::move(codomain)),
          z_images_(std::move(z_images)),
          x_image_(std::move(x_image)) {
        detail::require(static_cast<int>(z_images_.size()) == dom_->n(),
                        "GeneratorMap: need one image per generator");
        detail::require(dom_->has_x == x_image_.has_value(),
                        "GeneratorMap: x image must be given exactly when the domain has x");
        detail::require(dom_->exact == cod_->exact, "GeneratorMap: mixed modes");
        if (dom_->exact)
            detail::require(cod_->field->conductor() % dom_->field->conductor() == 0,
                            "GeneratorMap: domain conductor must divide codomain conductor "
                            "(rebuild the codomain context with a larger extra conductor)");
        for (const auto& img : z_images_)
            detail::require(same_context(img.context(), cod_),
                            "GeneratorMap: image context mismatch");
        if (x_image_)
            detail::require(same_context(x_image_->context(), cod_),
                            "GeneratorMap: image context mismatch");
    }

    const Context& domain() const { return dom_; }
    const Context& codomain() const { return cod_; }
    const StarPolynomial& z_image(int j) const { return z_images_[static_cast<std::size_t>(j)]; }
    const std::optional<StarPolynomial>& x_image() const { return x_image_; }
    bool validated() const { return validated_; }

    /// Checks all domain relations on the images. Symbolic mode proves each as
    /// an identity in the free-with-phases algebra; numeric mode evaluates
    /// residuals at `samples` random codomain points.
    ValidationReport validate(bool numeric = false, int samples = 200,
                              std::uint64_t seed = 1, const Tolerances& tol = {}) const {
        ValidationReport report;
        report.valid = true;
        auto fail = [&report](const std::string& rel, const std::string& detail) {
            report.valid = false;
            report.witnesses.push_back({rel, detail});
        };

        const int n = dom_->n();
        std::vector<StarPolynomial> residuals;
        std::vector<std::string> names;
        auto defer = [&](StarPolynomial r, std::string name) {
            residuals.push_back(std::move(r));
            names.push_back(std::move(name));
        };

        for (int j = 0; j < n; ++j) {
            const StarPolynomial& h = z_images_[static_cast<std::size_t>(j)];
            defer(h * h.adjoint() - h.adjoint() * h, "normality z" + std::to_string(j + 1));
        }
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const StarPolynomial& hj = z_images_[static_cast<std::size_t>(j)];
                const StarPolynomial& hk = z_images_[static_cast<std::size_t>(k)];
                const Scalar rho_jk = transported_phase(dom_->rho.angle(j, k));
                defer(hk * hj - (hj * hk).scaled(rho_jk),
                      "phase z" + std::to_string(k + 1) + " z" + std::to_string(j + 1));
            }
        if (x_image_) {
            defer(*x_image_ - x_image_->adjoint(), "x self-adjoint");
            for (int j = 0; j < n; ++j)
                defer(*x_image_ * z_images_[static_cast<std::size_t>(j)] -
                          z_images_[static_cast<std::size_t>(j)] * *x_image_,
                      "x central (z" + std::to_string(j + 1) + ")");
        }

        StarPolynomial sphere_image = StarPolynomial::zero(cod_);
        for (int j = 0; j < n; ++j) {
            const StarPolynomial& h = z_images_[static_cast<std::size_t>(j)];
            sphere_image = sphere_image + h * h.adjoint();
        }
        if (x_image_) sphere_image = sphere_image + *x_image_ * *x_image_;

        if (!numeric) {
            for (std::size_t i = 0; i < residuals.size(); ++i)
                if (!residuals[i].is_zero()) fail(names[i], print_residual(residuals[i]));
            const bool sphere_ok = sphere_image.is_one() ||
                                   sphere_image == StarPolynomial::sphere_sum(cod_);
            if (!sphere_ok)
                fail("sphere sum",
                     "image sum is neither 1 nor the codomain sphere polynomial: " +
                         print_residual(sphere_image));
        } else {
            defer(sphere_image - StarPolynomial::one(cod_), "sphere sum");
            const RationalRep rep = build_rational_rep(cod_->rho, tol);
            Rng rng(seed);
            double worst = 0.0;
            std::size_t worst_idx = 0;
            for (int s = 0; s < samples; ++s) {
                const SpherePoint pt = rng.sphere_point(cod_->n(), cod_->has_x);
                for (std::size_t i = 0; i < residuals.size(); ++i) {
                    const double r = eval(residuals[i], pt, rep).cwiseAbs().maxCoeff();
                    if (r > worst) {
                        worst = r;
                        worst_idx = i;
                    }
                }
            }
            if (worst >= tol.eps_rel)
                fail(names[worst_idx], "max residual " + std::to_string(worst));
        }
        return report;
    }

    /// Validates and records the result; throws on failure.
    GeneratorMap& validate_or_throw() {
        const ValidationReport report = validate();
        detail::require(report.valid,
                        "GeneratorMap: validation failed (" +
                            (report.witnesses.empty() ? std::string("?")
                                                      : report.witnesses.front().relation) +
                            ")");
        validated_ = true;
        return *this;
    }

    void mark_validated(const ValidationReport& report) { validated_ = report.valid; }

    /// Substitution: replaces each generator by its image, monomial by
    /// monomial in normal-form word order. Requires a validated map.
    StarPolynomial apply(const StarPolynomial& p) const {
        detail::require(validated_, "GeneratorMap: apply on an unvalidated map");
        StarPolynomial input = p;
        if (dom_->exact && p.context()->field->conductor() != cod_->field->conductor())
            input = p.convert_to(upgrade_context(dom_, cod_->field->conductor()));
        detail::require(input.context()->rho == dom_->rho && input.context()->has_x == dom_->has_x,
                        "GeneratorMap: polynomial is not in the domain algebra");
        StarPolynomial out(cod_);
        for (const auto& [m, coeff] : input.terms()) {
            StarPolynomial term = StarPolynomial::constant(cod_, transported_scalar(coeff));
            for (int j = 0; j < dom_->n(); ++j) {
                const StarPolynomial& h = z_images_[static_cast<std::size_t>(j)];
                for (std::uint32_t r = 0; r < m.a[static_cast<std::size_t>(j)]; ++r)
                    term = term * h;
                const StarPolynomial hs = h.adjoint();
                for (std::uint32_t r = 0; r < m.b[static_cast<std::size_t>(j)]; ++r)
                    term = term * hs;
            }
            for (std::uint32_t r = 0; r < m.c; ++r) term = term * *x_image_;
            out = out + term;
        }
        return out;
    }

    PolyMatrix apply(const PolyMatrix& m) const {
        PolyMatrix out(cod_, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.at(i, j) = apply(m.at(i, j));
        return out;
    }

    /// g o f as generator images (g applied to f's images).
    static GeneratorMap compose(const GeneratorMap& g, const GeneratorMap& f) {
        detail::require(f.cod_->rho == g.dom_->rho && f.cod_->has_x == g.dom_->has_x,
                        "GeneratorMap: composition contexts do not chain");
        std::vector<StarPolynomial> images;
        for (int j = 0; j < f.dom_->n(); ++j) images.push_back(g.apply(f.z_image(j)));
        std::optional<StarPolynomial> ximg;
        if (f.x_image_) ximg = g.apply(*f.x_image_);
        GeneratorMap h(f.dom_, g.cod_, std::move(images), std::move(ximg));
        if (f.validated_ && g.validated_) h.validated_ = true;
        return h;
    }

    /// Equivariance R_cod o h = h o R_dom, checked on generators (sufficient:
    /// generators generate). An order mismatch is reported, not assumed away.
    EquivarianceReport check_equivariance(const RotationAction& r_dom,
                                          const RotationAction& r_cod) const {
        detail::require(validated_, "GeneratorMap: equivariance check on an unvalidated map");
        EquivarianceReport report;
        if (r_dom.k != r_cod.k) {
            report.order_mismatch = true;
            report.witnesses.push_back(
                {"order", "domain order " + std::to_string(r_dom.k) + " vs codomain order " +
                              std::to_string(r_cod.k)});
            return report;
        }
        report.equivariant = true;
        for (int j = 0; j < dom_->n(); ++j) {
            const StarPolynomial lhs = apply_rotation(r_cod, z_image(j));
            const StarPolynomial rhs =
                z_image(j).scaled(scalar_phase(cod_, Angle(r_dom.alphas[static_cast<std::size_t>(j)])));
            if (lhs != rhs) {
                report.equivariant = false;
                report.witnesses.push_back(
                    {"z" + std::to_string(j + 1), print_residual(lhs - rhs)});
            }
        }
        if (x_image_) {
            const StarPolynomial lhs = apply_rotation(r_cod, *x_image_);
            const StarPolynomial rhs =
                r_dom.x_sign == 1 ? *x_image_ : -*x_image_;
            if (lhs != rhs) {
                report.equivariant = false;
                report.witnesses.push_back({"x", print_residual(lhs - rhs)});
            }
        }
        return report;
    }

private:
    Scalar transported_scalar(const Scalar& s) const {
        if (!s.exact()) return s;
        return s.convert_to(cod_->field);
    }

    Scalar transported_phase(const Angle& a) const { return scalar_phase(cod_, a); }

    static std::string print_residual(const StarPolynomial& p);  // defined in parser bridge below

    Context dom_, cod_;
    std::vector<StarPolynomial> z_images_;
    std::optional<StarPolynomial> x_image_;
    bool validated_ = false;
};

}  // namespace ncsphere

#include "ncsphere/parser.hpp"

namespace ncsphere {

inline std::string GeneratorMap::print_residual(const StarPolynomial& p) { return print(p); }

/// Def-style equator map: requires rho_in = rho_ni = 1; sends the odd sphere
/// over rho onto the even sphere over the minor (z_i -> z_i, z_n -> x).
inline GeneratorMap to_even(const ParameterMatrix& rho, std::int64_t extra_conductor = 1) {
    const int n = rho.n();
    detail::require(n >= 2, "to_even: need n >= 2");
    for (int i = 0; i < n - 1; ++i)
        detail::require(rho.angle(i, n - 1).is_zero(),
                        "to_even: last generator must be central (rho_in = rho_ni = 1)");
    const Context dom = make_context(rho, false, extra_conductor);
    const Context cod = make_context(rho.minor_without(n - 1), true,
                                     dom->field->conductor());
    std::vector<StarPolynomial> images;
    for (int i = 0; i < n - 1; ++i) images.push_back(StarPolynomial::generator(cod, i));
    images.push_back(StarPolynomial::x(cod));
    GeneratorMap h(dom, cod, std::move(images));
    return h.validate_or_throw();
}

/// x -> 0 projection of the even sphere onto the odd sphere over the same rho.
inline GeneratorMap x_to_zero(const ParameterMatrix& rho, std::int64_t extra_conductor = 1) {
    const Context dom = make_context(rho, true, extra_conductor);
    const Context cod = make_context(rho, false, dom->field->conductor());
    std::vector<StarPolynomial> images;
    for (int i = 0; i < rho.n(); ++i) images.push_back(StarPolynomial::generator(cod, i));
    GeneratorMap h(dom, cod, std::move(images), StarPolynomial::zero(cod));
    return h.validate_or_throw();
}

/// z_n -> 0 restriction onto the sphere over the leading minor.
inline GeneratorMap kill_zn(const ParameterMatrix& omega, std::int64_t extra_conductor = 1) {
    const int n = omega.n();
    detail::require(n >= 2, "kill_zn: need n >= 2");
    const Context dom = make_context(omega, false, extra_conductor);
    const Context cod = make_context(omega.leading(n - 1), false, dom->field->conductor());
    std::vector<StarPolynomial> images;
    for (int i = 0; i < n - 1; ++i) images.push_back(StarPolynomial::generator(cod, i));
    images.push_back(StarPolynomial::zero(cod));
    GeneratorMap h(dom, cod, std::move(images));
    return h.validate_or_throw();
}

/// The corner-embedding device: pads rho (m x m) to P ((m+1) x (m+1)) with all
/// other entries 1, then applies the equator map, landing in the even sphere
/// over rho. The padding makes the new last generator central, so the images
/// satisfy the relations.
inline GeneratorMap embed_corner(const ParameterMatrix& rho, std::int64_t extra_conductor = 1) {
    return to_even(rho.pad_to(rho.n() + 1), extra_conductor);
}

}  // namespace ncsphere
