#pragma once

#include <cctype>
#include <iomanip>
#include <sstream>
#include <string>

#include "ncsphere/star_polynomial.hpp"

namespace ncsphere {

/// Recursive-descent parser for the expression grammar
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor+                      (juxtaposition = product)
///   factor := coeff | gen | '(' expr ')'
///   gen    := 'z' INT ['\''] | 'x'
///   coeff  := RATIONAL | RATIONAL 'i' | 'i' | 'w(' RATIONAL ')'
///
/// Generators are 1-based in the surface syntax, the apostrophe is the adjoint
/// of a single generator, and w(r) denotes e^{2*pi*i*r}.
class ExpressionParser {
public:
    ExpressionParser(std::string text, Context ctx)
        : text_(std::move(text)), ctx_(std::move(ctx)) {}

    StarPolynomial parse() {
        skip_ws();
        StarPolynomial p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("trailing input", pos_);
        return p;
    }

private:
    StarPolynomial parse_expr() {
        bool negate = false;
        skip_ws();
        if (peek() == '+' || peek() == '-') {
            negate = (peek() == '-');
            ++pos_;
        }
        StarPolynomial acc = parse_term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            StarPolynomial t = parse_term();
            acc = (c == '+') ? acc + t : acc - t;
        }
        return acc;
    }

    StarPolynomial parse_term() {
        StarPolynomial acc = parse_factor();
        while (true) {
            skip_ws();
            const char c = peek();
            if (c == '\0' || c == '+' || c == '-' || c == ')') break;
            acc = acc * parse_factor();
        }
        return acc;
    }

    StarPolynomial parse_factor() {
        skip_ws();
        const std::size_t start = pos_;
        const char c = peek();
        if (c == '(') {
            ++pos_;
            StarPolynomial inner = parse_expr();
            skip_ws();
            if (peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (c == 'z') {
            ++pos_;
            if (!std::isdigit(peek())) throw parse_error("expected generator index", pos_);
            const long idx = parse_uint();
            if (idx < 1 || idx > ctx_->n())
                throw parse_error("unknown generator z" + std::to_string(idx), start);
            bool starred = false;
            if (peek() == '\'') {
                starred = true;
                ++pos_;
            }
            return StarPolynomial::generator(ctx_, static_cast<int>(idx) - 1, starred);
        }
        if (c == 'x') {
            ++pos_;
            if (!ctx_->has_x)
                throw parse_error("x is not a generator of an odd sphere", start);
            return StarPolynomial::x(ctx_);
        }
        if (c == 'i') {
            ++pos_;
            return StarPolynomial::constant(ctx_, imaginary_unit());
        }
        if (c == 'w') {
            ++pos_;
            if (peek() != '(') throw parse_error("expected '(' after w", pos_);
            ++pos_;
            const Fraction r = parse_signed_fraction();
            skip_ws();
            if (peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            if (ctx_->exact && ctx_->field->conductor() % r.den != 0)
                throw parse_error("w(" + r.str() + ") is not representable: raise the context conductor",
                                  start);
            return StarPolynomial::constant(ctx_, scalar_phase(ctx_, Angle(r)));
        }
        if (std::isdigit(c)) {
            Rational q = parse_rational();
            Scalar s = scalar_rational(ctx_, q);
            if (peek() == 'i') {  // attached imaginary marker: RATIONAL 'i'
                ++pos_;
                s = s * imaginary_unit();
            }
            return StarPolynomial::constant(ctx_, s);
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    Scalar imaginary_unit() const { return scalar_phase(ctx_, Angle(Fraction(1, 4))); }

    long parse_uint() {
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        if (end == pos_) throw parse_error("expected digits", pos_);
        const long v = std::stol(text_.substr(pos_, end - pos_));
        pos_ = end;
        return v;
    }

    Rational parse_rational() {
        Integer num = parse_integer();
        if (peek() == '.') {  // decimal literal, exact as a rational
            ++pos_;
            const std::size_t start = pos_;
            Integer frac = parse_integer();
            Integer scale = 1;
            for (std::size_t i = start; i < pos_; ++i) scale *= 10;
            return Rational(num * scale + frac, scale);
        }
        if (peek() == '/') {
            ++pos_;
            Integer den = parse_integer();
            if (den == 0) throw parse_error("zero denominator", pos_);
            return Rational(num, den);
        }
        return Rational(num);
    }

    Integer parse_integer() {
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        if (end == pos_) throw parse_error("expected digits", pos_);
        Integer v(text_.substr(pos_, end - pos_));
        pos_ = end;
        return v;
    }

    Fraction parse_signed_fraction() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        const long num = parse_uint();
        long den = 1;
        if (peek() == '/') {
            ++pos_;
            den = parse_uint();
        }
        return Fraction(neg ? -num : num, den);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string text_;
    Context ctx_;
    std::size_t pos_ = 0;
};

inline StarPolynomial parse(const std::string& text, const Context& ctx) {
    return ExpressionParser(text, ctx).parse();
}

namespace detail {

inline std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

/// Positive pure-phase coefficient as factors, e.g. "3/2 w(1/5)" or "i".
inline std::string pure_phase_str(const Rational& magnitude, std::int64_t exp,
                                  std::int64_t conductor, bool lone) {
    std::string out;
    if (magnitude != 1 || (exp == 0 && lone)) out = rational_str(magnitude);
    if (exp != 0) {
        const Fraction f(exp, conductor);
        std::string phase = (4 * exp == conductor) ? "i" : ("w(" + f.str() + ")");
        if (!out.empty()) out += " ";
        out += phase;
    }
    return out;
}

inline std::string scalar_str(const Scalar& s, bool lone, bool& negative) {
    negative = false;
    if (!s.exact()) {
        // fixed-point, sign-aware layout so the string stays inside the grammar
        const auto z = s.to_complex();
        std::ostringstream os;
        os << "(" << (z.real() < 0 ? "-" : "") << std::fixed << std::setprecision(12)
           << std::abs(z.real()) << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag())
           << "i)";
        return os.str();
    }
    if (s.is_pure_phase()) {
        Rational mag = s.pure_scale();
        if (mag < 0) {
            negative = true;
            mag = -mag;
        }
        return pure_phase_str(mag, s.pure_exponent(), s.field()->conductor(), lone);
    }
    // dense: parenthesized sum over the power basis
    const auto coords = s.coords();
    std::string out = "(";
    bool first = true;
    for (std::size_t m = 0; m < coords.size(); ++m) {
        if (coords[m] == 0) continue;
        Rational q = coords[m];
        const bool neg = q < 0;
        if (neg) q = -q;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += pure_phase_str(q, static_cast<std::int64_t>(m), s.field()->conductor(), true);
    }
    out += ")";
    return out;
}

inline std::string monomial_str(const Monomial& m) {
    std::string out;
    auto append = [&out](const std::string& f) {
        if (!out.empty()) out += " ";
        out += f;
    };
    for (int j = 0; j < m.n(); ++j) {
        const std::string name = "z" + std::to_string(j + 1);
        for (std::uint32_t r = 0; r < m.a[static_cast<std::size_t>(j)]; ++r) append(name);
        for (std::uint32_t r = 0; r < m.b[static_cast<std::size_t>(j)]; ++r) append(name + "'");
    }
    for (std::uint32_t r = 0; r < m.c; ++r) append("x");
    return out;
}

}  // namespace detail

/// Canonical string form: terms in normal-form monomial order; parse is a left
/// inverse on canonical strings, and print(parse(s)) normalizes s.
inline std::string print(const StarPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, s] : p.terms()) {
        bool neg = false;
        const std::string coeff = detail::scalar_str(s, m.is_one(), neg);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        const std::string mono = detail::monomial_str(m);
        if (!coeff.empty() && !mono.empty())
            out += coeff + " " + mono;
        else
            out += coeff + mono;
    }
    return out;
}

}  // namespace ncsphere
