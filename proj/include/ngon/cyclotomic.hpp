/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_m).
 *
 * Elements are stored in the power basis zeta^0 ... zeta^(phi(m)-1) as an
 * integer numerator vector over one positive common denominator, kept in
 * lowest terms so the representation is canonical. Mixed-conductor
 * arithmetic promotes both operands to the lcm of the conductors.
 *
 * Floating point never decides anything: sign() evaluates the real
 * embedding with a rigorous error bound and escalates to MPFR at increasing
 * precision when the bound is inconclusive; exact zero is detected on the
 * coefficients.
 */
#pragma once

#include "poly.hpp"
#include "rational.hpp"

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ngon {

/// Immutable description of Q(zeta_m): the modulus Phi_m and a table of
/// cos/sin(2 pi k / m) used for diagnostics and fast sign filtering.
class CyclotomicField {
public:
    explicit CyclotomicField(long m) : m_(m), phi_(euler_phi(m)) {
        if (m < 1) throw DomainError("conductor must be positive");
        modulus_ = cyclotomic_coeffs_int(m);
        for (long j = 0; j < phi_; ++j)
            if (modulus_[static_cast<std::size_t>(j)] != 0)
                sparse_.emplace_back(static_cast<std::size_t>(j), modulus_[static_cast<std::size_t>(j)]);
        cos_.resize(static_cast<std::size_t>(m));
        sin_.resize(static_cast<std::size_t>(m));
        const long double two_pi = 6.283185307179586476925286766559005768L;
        for (long k = 0; k < m; ++k) {
            long double t = two_pi * static_cast<long double>(k) / static_cast<long double>(m);
            cos_[static_cast<std::size_t>(k)] = static_cast<double>(std::cos(t));
            sin_[static_cast<std::size_t>(k)] = static_cast<double>(std::sin(t));
        }
    }

    /// Shared instance per conductor. Instances are immutable; the registry
    /// itself is mutex-guarded.
    static std::shared_ptr<const CyclotomicField> get(long m) {
        static std::mutex mu;
        static std::map<long, std::shared_ptr<const CyclotomicField>> registry;
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(m);
        if (it != registry.end()) return it->second;
        auto f = std::make_shared<const CyclotomicField>(m);
        registry.emplace(m, f);
        return f;
    }

    long conductor() const { return m_; }
    long degree() const { return phi_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    double cos_table(long k) const { return cos_[static_cast<std::size_t>(floor_mod(k, m_))]; }
    double sin_table(long k) const { return sin_[static_cast<std::size_t>(floor_mod(k, m_))]; }

    /// Reduces a dense integer polynomial (any degree) modulo x^m - 1 and
    /// then Phi_m, in place; the result has exactly phi(m) entries.
    void reduce(std::vector<Integer>& r) const {
        const std::size_t m = static_cast<std::size_t>(m_);
        const std::size_t phi = static_cast<std::size_t>(phi_);
        if (r.size() > m) {
            for (std::size_t k = m; k < r.size(); ++k)
                if (r[k] != 0) r[k % m] += r[k];
            r.resize(m);
        }
        for (std::size_t k = r.size(); k-- > phi;) {
            if (r[k] == 0) continue;
            const Integer c = r[k];
            for (const auto& [j, a] : sparse_) {
                Integer& t = r[k - phi + j];
                if (a == 1)
                    t -= c;
                else if (a == -1)
                    t += c;
                else
                    t -= c * static_cast<long>(a);
            }
            r[k] = 0;
        }
        r.resize(phi);
    }

    /// Power-basis coordinates of zeta^e for each requested exponent, found
    /// by one incremental walk x^0, x^1, ... reduced modulo Phi_m.
    std::vector<std::vector<std::int64_t>> reduce_monomials(std::span<const long> exps) const {
        const std::size_t phi = static_cast<std::size_t>(phi_);
        const std::size_t width = phi + 1;
        std::vector<std::pair<long, std::size_t>> order;
        order.reserve(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i) order.emplace_back(floor_mod(exps[i], m_), i);
        std::sort(order.begin(), order.end());

        std::vector<std::vector<std::int64_t>> out(exps.size());
        std::vector<std::int64_t> ring(width, 0);
        std::size_t offset = 0;  // coefficient of x^j lives at ring[(offset + j) % width]
        ring[0] = 1;
        long current = 0;
        auto slot = [&](std::size_t j) -> std::int64_t& { return ring[(offset + j) % width]; };
        for (const auto& [e, idx] : order) {
            while (current < e) {
                offset = (offset + width - 1) % width;
                const std::int64_t c = slot(phi);
                if (c != 0) {
                    for (const auto& [j, a] : sparse_) {
                        std::int64_t prod, res;
                        if (__builtin_mul_overflow(c, a, &prod) || __builtin_sub_overflow(slot(j), prod, &res))
                            throw VerificationError("monomial reduction overflowed 64 bits");
                        slot(j) = res;
                    }
                    slot(phi) = 0;
                }
                ++current;
            }
            std::vector<std::int64_t> row(phi);
            for (std::size_t j = 0; j < phi; ++j) row[j] = slot(j);
            out[idx] = std::move(row);
        }
        return out;
    }

private:
    long m_;
    long phi_;
    std::vector<std::int64_t> modulus_;
    std::vector<std::pair<std::size_t, std::int64_t>> sparse_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// Element of Q(zeta_m).
class CycElt {
public:
    /// Zero of Q(zeta_1) = Q.
    CycElt() : CycElt(CyclotomicField::get(1)) {}
    explicit CycElt(FieldPtr f) : f_(std::move(f)), num_(static_cast<std::size_t>(f_->degree())), den_(1) {}
    CycElt(FieldPtr f, const Rational& r) : CycElt(std::move(f)) {
        num_[0] = r.get_num();
        den_ = r.get_den();
    }
    CycElt(long m, const Rational& r) : CycElt(CyclotomicField::get(m), r) {}

    /// Element from power-basis coefficients (exactly phi(m) of them).
    static CycElt from_coeffs(FieldPtr f, const std::vector<Rational>& coeffs) {
        if (static_cast<long>(coeffs.size()) != f->degree())
            throw DomainError("coefficient vector length must equal phi(m)");
        Integer den = 1;
        for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        CycElt x(std::move(f));
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            x.num_[k] = coeffs[k].get_num() * (den / coeffs[k].get_den());
        x.den_ = den;
        x.normalize();
        return x;
    }

    /// Element sum_k c_k zeta^k for an arbitrary-length integer polynomial
    /// divided by den.
    static CycElt from_poly(FieldPtr f, std::vector<Integer> poly, Integer den = 1) {
        f->reduce(poly);
        CycElt x(std::move(f));
        x.num_ = std::move(poly);
        x.den_ = std::move(den);
        x.normalize();
        return x;
    }

    static CycElt zeta(FieldPtr f, long k) {
        std::vector<Integer> p(static_cast<std::size_t>(floor_mod(k, f->conductor()) + 1));
        p.back() = 1;
        return from_poly(std::move(f), std::move(p));
    }

    const FieldPtr& field() const { return f_; }
    long conductor() const { return f_->conductor(); }

    Rational coeff(std::size_t k) const {
        Rational r(num_[k], den_);
        r.canonicalize();
        return r;
    }
    std::vector<Rational> coeffs() const {
        std::vector<Rational> out;
        out.reserve(num_.size());
        for (std::size_t k = 0; k < num_.size(); ++k) out.push_back(coeff(k));
        return out;
    }
    const std::vector<Integer>& numerators() const { return num_; }
    const Integer& denominator() const { return den_; }

    bool is_zero() const {
        for (const auto& c : num_)
            if (c != 0) return false;
        return true;
    }

    std::optional<Rational> is_rational() const {
        for (std::size_t k = 1; k < num_.size(); ++k)
            if (num_[k] != 0) return std::nullopt;
        return coeff(0);
    }

    /// Re-expresses the element in Q(zeta_M), M a multiple of the conductor.
    CycElt promote(long M) const {
        const long m = conductor();
        if (M == m) return *this;
        if (M % m != 0) throw DomainError("promotion target must be a multiple of the conductor");
        const long step = M / m;
        std::vector<Integer> p(static_cast<std::size_t>((static_cast<long>(num_.size()) - 1) * step + 1));
        for (std::size_t k = 0; k < num_.size(); ++k) p[k * static_cast<std::size_t>(step)] = num_[k];
        return from_poly(CyclotomicField::get(M), std::move(p), den_);
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    CycElt conj() const {
        const std::size_t m = static_cast<std::size_t>(conductor());
        std::vector<Integer> p(m);
        for (std::size_t k = 0; k < num_.size(); ++k)
            if (num_[k] != 0) p[k == 0 ? 0 : m - k] = num_[k];
        return from_poly(f_, std::move(p), den_);
    }

    bool is_real() const { return *this == conj(); }

    std::complex<double> embed() const {
        double re = 0, im = 0;
        const double d = den_.get_d();
        for (std::size_t k = 0; k < num_.size(); ++k) {
            if (num_[k] == 0) continue;
            const double c = num_[k].get_d();
            re += c * f_->cos_table(static_cast<long>(k));
            im += c * f_->sin_table(static_cast<long>(k));
        }
        return {re / d, im / d};
    }

    /// Real part as a double (diagnostics and float shadows only).
    double to_double() const { return embed().real(); }

    /// Exact sign of the real part. Intended for real elements.
    int sign() const {
        if (is_zero()) return 0;
        // Fast filter: table entries are within ~1.2e-16 of the true cosines.
        double v = 0, mag = 0;
        for (std::size_t k = 0; k < num_.size(); ++k) {
            if (num_[k] == 0) continue;
            const double c = num_[k].get_d();
            v += c * f_->cos_table(static_cast<long>(k));
            mag += std::fabs(c);
        }
        const double bound = 2.0 * mag * (static_cast<double>(num_.size()) + 8.0) * 2.3e-16;
        if (std::isfinite(v) && std::isfinite(bound) && std::fabs(v) > bound) return v > 0 ? 1 : -1;
        return sign_mpfr();
    }

    /// floor of a real element.
    Integer floor() const {
        double approx = to_double();
        Integer f(std::floor(approx));
        while ((*this - CycElt(f_, Rational(f))).sign() < 0) f -= 1;
        while ((*this - CycElt(f_, Rational(f + 1))).sign() >= 0) f += 1;
        return f;
    }

    CycElt inverse() const;

    CycElt operator-() const {
        CycElt r(*this);
        for (auto& c : r.num_) c = -c;
        return r;
    }

    friend CycElt operator+(const CycElt& a, const CycElt& b) {
        if (a.f_ != b.f_) return binary_promoted(a, b, [](const CycElt& x, const CycElt& y) { return x + y; });
        CycElt r(a.f_);
        if (a.den_ == b.den_) {
            for (std::size_t k = 0; k < r.num_.size(); ++k) r.num_[k] = a.num_[k] + b.num_[k];
            r.den_ = a.den_;
        } else {
            for (std::size_t k = 0; k < r.num_.size(); ++k) r.num_[k] = a.num_[k] * b.den_ + b.num_[k] * a.den_;
            r.den_ = a.den_ * b.den_;
        }
        r.normalize();
        return r;
    }
    friend CycElt operator-(const CycElt& a, const CycElt& b) { return a + (-b); }

    friend CycElt operator*(const CycElt& a, const CycElt& b) {
        if (a.f_ != b.f_) return binary_promoted(a, b, [](const CycElt& x, const CycElt& y) { return x * y; });
        const std::size_t n = a.num_.size();
        if (n == 1) {
            CycElt r(a.f_);
            r.num_[0] = a.num_[0] * b.num_[0];
            r.den_ = a.den_ * b.den_;
            r.normalize();
            return r;
        }
        std::vector<Integer> p(2 * n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.num_[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b.num_[j] != 0) mpz_addmul(p[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
        }
        return from_poly(a.f_, std::move(p), a.den_ * b.den_);
    }

    friend CycElt operator/(const CycElt& a, const CycElt& b) { return a * b.inverse(); }

    friend CycElt operator*(const CycElt& a, const Rational& s) {
        if (s == 0) return CycElt(a.f_);
        CycElt r(a);
        for (auto& c : r.num_) c *= s.get_num();
        r.den_ *= s.get_den();
        r.normalize();
        return r;
    }
    friend CycElt operator*(const Rational& s, const CycElt& a) { return a * s; }
    friend CycElt operator/(const CycElt& a, const Rational& s) {
        if (s == 0) throw DomainError("division by zero");
        return a * (1 / s);
    }
    friend CycElt operator+(const CycElt& a, const Rational& s) { return a + CycElt(a.f_, s); }
    friend CycElt operator-(const CycElt& a, const Rational& s) { return a + CycElt(a.f_, -s); }

    CycElt& operator+=(const CycElt& o) { return *this = *this + o; }
    CycElt& operator-=(const CycElt& o) { return *this = *this - o; }
    CycElt& operator*=(const CycElt& o) { return *this = *this * o; }

    friend bool operator==(const CycElt& a, const CycElt& b) {
        if (a.f_ != b.f_) {
            if (a.conductor() == b.conductor()) return a.num_ == b.num_ && a.den_ == b.den_;
            const long M = lcm_long(a.conductor(), b.conductor());
            return a.promote(M) == b.promote(M);
        }
        return a.den_ == b.den_ && a.num_ == b.num_;
    }

    /// Exact order of real elements via sign of the difference.
    friend int compare(const CycElt& a, const CycElt& b) { return (a - b).sign(); }

    std::size_t hash() const {
        std::size_t h = std::hash<long>{}(conductor());
        for (const auto& c : num_) h = h * 1000003u ^ std::hash<long>{}(mpz_get_si(c.get_mpz_t()));
        return h ^ std::hash<long>{}(mpz_get_si(den_.get_mpz_t()));
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < num_.size(); ++k) {
            if (num_[k] == 0) continue;
            Rational c = coeff(k);
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            Rational mag = abs(c);
            if (k == 0) os << mag.get_str();
            else {
                if (mag != 1) os << mag.get_str() << "*";
                os << "z" << conductor() << "^" << k;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    template <class Op>
    static CycElt binary_promoted(const CycElt& a, const CycElt& b, Op op) {
        const long M = lcm_long(a.conductor(), b.conductor());
        CycElt x = a.promote(M), y = b.promote(M);
        // Equal conductors but distinct field objects cannot happen with the
        // registry; guard anyway so op() never recurses.
        if (x.f_ != y.f_) y.f_ = x.f_;
        return op(x, y);
    }

    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            for (auto& c : num_) c = -c;
        }
        Integer g = den_;
        for (const auto& c : num_) {
            if (g == 1) break;
            if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        bool zero = is_zero();
        if (zero) {
            den_ = 1;
            return;
        }
        if (g != 1) {
            for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    int sign_mpfr() const {
        for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
            mpfr_t pi, theta, term, acc, c;
            mpfr_inits2(prec, pi, theta, term, acc, c, static_cast<mpfr_ptr>(nullptr));
            mpfr_const_pi(pi, MPFR_RNDN);
            mpfr_set_zero(acc, 1);
            double mag = 0;
            for (std::size_t k = 0; k < num_.size(); ++k) {
                if (num_[k] == 0) continue;
                mpfr_mul_ui(theta, pi, 2 * k, MPFR_RNDN);
                mpfr_div_si(theta, theta, conductor(), MPFR_RNDN);
                mpfr_cos(c, theta, MPFR_RNDN);
                mpfr_mul_z(term, c, num_[k].get_mpz_t(), MPFR_RNDN);
                mpfr_add(acc, acc, term, MPFR_RNDN);
                mag += std::fabs(num_[k].get_d());
            }
            // |error| <= sum|c_k| * (terms + 16) * 2^(1-prec)
            mpfr_set_d(c, mag * (static_cast<double>(num_.size()) + 16.0), MPFR_RNDU);
            mpfr_mul_2si(c, c, 1 - static_cast<long>(prec), MPFR_RNDU);
            int result = 0;
            if (mpfr_cmpabs(acc, c) > 0) result = mpfr_sgn(acc) > 0 ? 1 : -1;
            mpfr_clears(pi, theta, term, acc, c, static_cast<mpfr_ptr>(nullptr));
            if (result != 0) return result;
        }
        throw VerificationError("sign undetermined; element is probably not real");
    }

    FieldPtr f_;
    std::vector<Integer> num_;
    Integer den_;
};

inline CycElt CycElt::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (num_.size() == 1) {
        CycElt r(f_);
        r.num_[0] = den_;
        r.den_ = num_[0];
        r.normalize();
        return r;
    }
    // Extended Euclid on (Phi_m, self) in Q[x], kept monic at each step.
    std::vector<Rational> mod;
    for (auto a : f_->modulus()) mod.emplace_back(static_cast<long>(a));
    CycPoly r0(mod), r1(coeffs());
    CycPoly s0, s1 = CycPoly::monomial(0);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        CycPoly s = s0 - q * s1;
        r0 = std::move(r1);
        s0 = std::move(s1);
        if (r.is_zero()) {
            r1 = CycPoly{};
            break;
        }
        Rational lead = r.leading();
        r1 = r.scaled(1 / lead);
        s1 = s.scaled(1 / lead);
    }
    if (r0.degree() != 0) throw VerificationError("element shares a factor with Phi_m");
    CycPoly inv = s0.scaled(1 / r0.coeff(0));
    std::vector<Rational> c = inv.coeffs();
    c.resize(num_.size());
    return from_coeffs(f_, c);
}

inline CycElt abs(const CycElt& x) { return x.sign() < 0 ? -x : x; }

/// Returns q if x = q*y for a rational q (y nonzero). Equivalent to
/// is_rational(x / y) because the power basis is a Q-basis, but needs no
/// field inversion.
inline std::optional<Rational> rational_quotient(const CycElt& x, const CycElt& y) {
    if (y.is_zero()) throw DomainError("rational_quotient by zero");
    if (x.conductor() != y.conductor()) {
        const long M = lcm_long(x.conductor(), y.conductor());
        return rational_quotient(x.promote(M), y.promote(M));
    }
    const auto& xn = x.numerators();
    const auto& yn = y.numerators();
    std::size_t pivot = 0;
    while (yn[pivot] == 0) ++pivot;
    Integer t;
    for (std::size_t j = 0; j < xn.size(); ++j) {
        t = xn[j] * yn[pivot] - xn[pivot] * yn[j];
        if (t != 0) return std::nullopt;
    }
    Rational q(xn[pivot] * y.denominator(), x.denominator() * yn[pivot]);
    q.canonicalize();
    return q;
}

/// cos(pi * r) in Q(zeta_M); requires 2 * den(r) | M.
inline CycElt cos_pi(const Rational& r, const FieldPtr& f) {
    const long M = f->conductor();
    const long d = r.get_den().get_si();
    if (M % (2 * d) != 0) throw DomainError("conductor too small for cos_pi");
    const long e = r.get_num().get_si() * (M / (2 * d));
    std::vector<long> exps{e, -e};
    auto rows = f->reduce_monomials(exps);
    std::vector<Integer> p(static_cast<std::size_t>(f->degree()));
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = static_cast<long>(rows[0][j] + rows[1][j]);
    return CycElt::from_poly(f, std::move(p), 2);
}

/// sin(pi * r) in Q(zeta_M), realized as (z^a - z^-a) / (2i) with z = zeta_{2d}
/// and i = zeta_4; requires 2 * den(r) | M and 4 | M.
inline CycElt sin_pi(const Rational& r, const FieldPtr& f) {
    const long M = f->conductor();
    const long d = r.get_den().get_si();
    if (M % (2 * d) != 0 || M % 4 != 0) throw DomainError("conductor too small for sin_pi");
    const long a = r.get_num().get_si() * (M / (2 * d));
    // (z^a - z^-a)/(2i) = (zeta^(M/4 - a) - zeta^(M/4 + a)) / 2
    std::vector<long> exps{M / 4 - a, M / 4 + a};
    auto rows = f->reduce_monomials(exps);
    std::vector<Integer> p(static_cast<std::size_t>(f->degree()));
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = static_cast<long>(rows[0][j] - rows[1][j]);
    return CycElt::from_poly(f, std::move(p), 2);
}

/// sin(pi k / m) in its natural field Q(zeta_lcm(2m', 4)), m' the reduced
/// denominator.
inline CycElt sin_exact(long k, long m) {
    if (m < 1) throw DomainError("sin_exact requires m >= 1");
    Rational r = make_rational(k, m);
    const long d = r.get_den().get_si();
    return sin_pi(r, CyclotomicField::get(lcm_long(2 * d, 4)));
}

inline CycElt cos_exact(long k, long m) {
    if (m < 1) throw DomainError("cos_exact requires m >= 1");
    Rational r = make_rational(k, m);
    const long d = r.get_den().get_si();
    return cos_pi(r, CyclotomicField::get(lcm_long(2 * d, 4)));
}

}  // namespace ngon

template <>
struct std::hash<ngon::CycElt> {
    std::size_t operator()(const ngon::CycElt& x) const { return x.hash(); }
};
