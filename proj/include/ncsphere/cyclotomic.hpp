#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ncsphere/errors.hpp"
#include "ncsphere/rational.hpp"

namespace ncsphere {

/// The cyclotomic field Q(zeta_N), zeta_N = e^{2*pi*i/N}.
///
/// Elements are coordinate vectors of length phi(N) on the power basis
/// 1, zeta, ..., zeta^{phi(N)-1}, reduced modulo the N-th cyclotomic
/// polynomial. The reduction makes the representation canonical: two field
/// elements are equal iff their coordinate vectors are identical.
///
/// Construction precomputes Phi_N and the table of all zeta^m (m < N) in the
/// power basis; fields are cached per conductor, so repeated context creation
/// is cheap.
class CycloField {
public:
    using Coords = std::vector<Rational>;

    static std::shared_ptr<const CycloField> get(std::int64_t conductor) {
        static std::mutex mu;
        static std::map<std::int64_t, std::shared_ptr<const CycloField>> cache;
        detail::require(conductor >= 1, "CycloField: conductor must be >= 1");
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[conductor];
        if (!slot) slot = std::shared_ptr<const CycloField>(new CycloField(conductor));
        return slot;
    }

    std::int64_t conductor() const { return n_; }
    std::int64_t degree() const { return deg_; }

    /// zeta^m on the power basis; m is taken mod N.
    const Coords& zeta_pow(std::int64_t m) const {
        m %= n_;
        if (m < 0) m += n_;
        return pow_[static_cast<std::size_t>(m)];
    }

    Coords zero() const { return Coords(static_cast<std::size_t>(deg_), Rational(0)); }

    Coords from_rational(const Rational& q) const {
        Coords c = zero();
        c[0] = q;
        return c;
    }

    Coords add(const Coords& a, const Coords& b) const {
        Coords c(a);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
        return c;
    }

    Coords sub(const Coords& a, const Coords& b) const {
        Coords c(a);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
        return c;
    }

    Coords scale(const Coords& a, const Rational& q) const {
        Coords c(a);
        for (auto& x : c) x *= q;
        return c;
    }

    Coords mul(const Coords& a, const Coords& b) const {
        const auto d = static_cast<std::size_t>(deg_);
        std::vector<Rational> conv(2 * d - 1, Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b[j] == 0) continue;
                conv[i + j] += a[i] * b[j];
            }
        }
        Coords c(conv.begin(), conv.begin() + static_cast<std::ptrdiff_t>(d));
        for (std::size_t m = d; m < conv.size(); ++m) {
            if (conv[m] == 0) continue;
            const Coords& row = zeta_pow(static_cast<std::int64_t>(m));
            for (std::size_t i = 0; i < d; ++i) c[i] += conv[m] * row[i];
        }
        return c;
    }

    /// Complex conjugation: the Galois automorphism zeta -> zeta^{-1}.
    Coords conj(const Coords& a) const {
        Coords c = zero();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            const Coords& row = zeta_pow(-static_cast<std::int64_t>(i));
            for (std::size_t j = 0; j < c.size(); ++j) c[j] += a[i] * row[j];
        }
        return c;
    }

    /// Re-expresses coordinates in a larger field whose conductor this one divides.
    Coords embed_into(const CycloField& big, const Coords& a) const {
        detail::require(big.n_ % n_ == 0,
                        "CycloField: embedding requires divisible conductors");
        const std::int64_t s = big.n_ / n_;
        Coords c = big.zero();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            const Coords& row = big.zeta_pow(static_cast<std::int64_t>(i) * s);
            for (std::size_t j = 0; j < c.size(); ++j) c[j] += a[i] * row[j];
        }
        return c;
    }

    static std::int64_t euler_phi(std::int64_t n) {
        std::int64_t result = n;
        for (std::int64_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                while (n % p == 0) n /= p;
                result -= result / p;
            }
        }
        if (n > 1) result -= result / n;
        return result;
    }

private:
    explicit CycloField(std::int64_t n) : n_(n) {
        compute_cyclotomic();
        deg_ = static_cast<std::int64_t>(phi_.size()) - 1;
        compute_pow_table();
    }

    // Phi_N via  x^N - 1 = prod_{d | N} Phi_d, dividing out the proper divisors.
    void compute_cyclotomic() {
        std::map<std::int64_t, std::vector<Rational>> phis;
        for (std::int64_t d = 1; d <= n_; ++d) {
            if (n_ % d != 0) continue;
            std::vector<Rational> num(static_cast<std::size_t>(d) + 1, Rational(0));
            num.front() = -1;
            num.back() = 1;
            for (const auto& [e, phi_e] : phis)
                if (d % e == 0) num = divide_exact(num, phi_e);
            phis[d] = num;
        }
        phi_ = phis[n_];
    }

    static std::vector<Rational> divide_exact(std::vector<Rational> num,
                                              const std::vector<Rational>& den) {
        const std::size_t dn = num.size() - 1, dd = den.size() - 1;
        std::vector<Rational> q(dn - dd + 1, Rational(0));
        for (std::size_t i = dn + 1; i-- > dd;) {
            const Rational c = num[i] / den[dd];
            if (c == 0) continue;
            q[i - dd] = c;
            for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        for (const auto& r : num)
            detail::require(r == 0, "CycloField: non-exact polynomial division");
        return q;
    }

    void compute_pow_table() {
        const auto d = static_cast<std::size_t>(deg_);
        pow_.assign(static_cast<std::size_t>(n_), Coords());
        Coords cur(d, Rational(0));
        cur[0] = 1;
        for (std::int64_t m = 0; m < n_; ++m) {
            pow_[static_cast<std::size_t>(m)] = cur;
            // multiply by x, reducing with x^deg = -(phi_{deg-1} x^{deg-1} + ... + phi_0)
            Rational top = cur[d - 1];
            for (std::size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (std::size_t i = 0; i < d; ++i) cur[i] -= top * phi_[i];
        }
    }

    std::int64_t n_;
    std::int64_t deg_ = 0;
    std::vector<Rational> phi_;  // monic, degree phi(N)
    std::vector<Coords> pow_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

}  // namespace ncsphere
