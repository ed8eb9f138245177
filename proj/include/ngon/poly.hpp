/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over Q and the cyclotomic polynomials.
 */
#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ngon {

/// Dense polynomial over Q, lowest degree first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
class CycPoly {
public:
    CycPoly() = default;
    explicit CycPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static CycPoly monomial(std::size_t degree, Rational coeff = 1) {
        std::vector<Rational> c(degree + 1);
        c[degree] = std::move(coeff);
        return CycPoly(std::move(c));
    }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    std::size_t nonzero_terms() const {
        return static_cast<std::size_t>(
            std::count_if(c_.begin(), c_.end(), [](const Rational& r) { return r != 0; }));
    }

    friend CycPoly operator+(const CycPoly& a, const CycPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return CycPoly(std::move(c));
    }

    friend CycPoly operator-(const CycPoly& a, const CycPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return CycPoly(std::move(c));
    }

    friend CycPoly operator*(const CycPoly& a, const CycPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return CycPoly(std::move(c));
    }

    CycPoly scaled(const Rational& s) const {
        std::vector<Rational> c(c_);
        for (auto& x : c) x *= s;
        return CycPoly(std::move(c));
    }

    /// Euclidean division: returns (quotient, remainder).
    friend std::pair<CycPoly, CycPoly> divmod(const CycPoly& a, const CycPoly& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        if (a.degree() < b.degree()) return {CycPoly{}, a};
        std::vector<Rational> r(a.c_);
        std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
        const Rational inv_lead = 1 / b.leading();
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t k = r.size(); k-- > db;) {
            if (r[k] == 0) continue;
            Rational f = r[k] * inv_lead;
            for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
            q[k - db] = std::move(f);
        }
        r.resize(db);
        return {CycPoly(std::move(q)), CycPoly(std::move(r))};
    }

    friend bool operator==(const CycPoly& a, const CycPoly& b) { return a.c_ == b.c_; }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const Rational& a = c_[k];
            if (a == 0) continue;
            Rational mag = abs(a);
            os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (mag != 1 || k == 0) os << mag.get_str();
            if (k >= 1) os << "x";
            if (k >= 2) os << "^" << k;
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline long euler_phi(long m) {
    if (m < 1) throw DomainError("euler_phi requires m >= 1");
    long result = m;
    long x = m;
    for (long p = 2; p * p <= x; ++p) {
        if (x % p != 0) continue;
        while (x % p == 0) x /= p;
        result -= result / p;
    }
    if (x > 1) result -= result / x;
    return result;
}

inline std::vector<long> divisors(long m) {
    std::vector<long> d;
    for (long k = 1; k * k <= m; ++k) {
        if (m % k != 0) continue;
        d.push_back(k);
        if (k != m / k) d.push_back(m / k);
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline int mobius(long m) {
    int sign = 1;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        m /= p;
        if (m % p == 0) return 0;
        sign = -sign;
    }
    if (m > 1) sign = -sign;
    return sign;
}

inline bool is_squarefree(long m) { return mobius(m) != 0; }

/// g(m): m when m = 2 mod 4, 2m when 4 | m, 4m when m is odd.
inline long g_of(long m) {
    if (m < 1) throw DomainError("g_of requires m >= 1");
    if (m % 2 == 1) return 4 * m;
    if (m % 4 == 0) return 2 * m;
    return m;
}

/// Phi_m, obtained by dividing x^m - 1 by the cyclotomic polynomials of the
/// proper divisors of m.
inline CycPoly cyclotomic_poly(long m) {
    if (m < 1) throw DomainError("cyclotomic_poly requires m >= 1");
    const CycPoly xm1 = CycPoly::monomial(static_cast<std::size_t>(m)) - CycPoly::monomial(0);
    if (m == 1) return xm1;
    CycPoly denom = CycPoly::monomial(0);
    for (long d : divisors(m))
        if (d < m) denom = denom * cyclotomic_poly(d);
    auto [q, r] = divmod(xm1, denom);
    if (!r.is_zero()) throw VerificationError("x^m - 1 not divisible by lower cyclotomic factors");
    return q;
}

/// Integer coefficients of Phi_m via the Moebius product of (x^d - 1); used
/// internally where m is large enough that dense rational division is slow.
inline std::vector<std::int64_t> cyclotomic_coeffs_int(long m) {
    if (m < 1) throw DomainError("cyclotomic_coeffs_int requires m >= 1");
    std::vector<long> up, down;
    for (long d : divisors(m)) {
        int mu = mobius(m / d);
        if (mu == 1) up.push_back(d);
        if (mu == -1) down.push_back(d);
    }
    std::vector<std::int64_t> p{1};
    for (long d : up) {  // p *= (x^d - 1)
        std::vector<std::int64_t> q(p.size() + static_cast<std::size_t>(d), 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + static_cast<std::size_t>(d)] += p[i];
            q[i] -= p[i];
        }
        p = std::move(q);
    }
    for (long d : down) {  // p /= (x^d - 1), exact
        const std::size_t ud = static_cast<std::size_t>(d);
        std::vector<std::int64_t> q(p.size() - ud, 0);
        // p = q * (x^d - 1)  =>  q[i] = q[i-d] - p[i]
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = (i >= ud ? q[i - ud] : 0) - p[i];
        p = std::move(q);
    }
    return p;
}

}  // namespace ngon
