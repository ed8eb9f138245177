/**
 * @file sine_ratio.hpp
 * @brief Rationality of sin(pi a) / sin(pi b) decided in cyclotomic fields,
 * and the cyclotomic-polynomial case sweep that rules out large
 * denominators.
 */
#pragma once

#include "cyclotomic.hpp"
#include "poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ngon {

namespace detail {
inline long sine_conductor(const Rational& r) { return lcm_long(2 * r.get_den().get_si(), 4); }
}  // namespace detail

/// Exact value of sin(pi alpha) / sin(pi beta) when it is rational.
/// Requires 0 < alpha <= beta <= 1/2.
inline std::optional<Rational> sine_ratio_rational(const Rational& alpha, const Rational& beta) {
    if (!(alpha > 0 && alpha <= beta && beta <= Rational(1, 2)))
        throw DomainError("sine_ratio_rational requires 0 < alpha <= beta <= 1/2");
    const long M = lcm_long(detail::sine_conductor(alpha), detail::sine_conductor(beta));
    const FieldPtr f = CyclotomicField::get(M);
    return rational_quotient(sin_pi(alpha, f), sin_pi(beta, f));
}

struct SineRatioHit {
    Rational alpha;
    Rational beta;
    Rational value;
};

struct SineRatioSweep {
    long max_denominator = 0;
    std::size_t pairs_tested = 0;
    std::vector<SineRatioHit> rational_pairs;  // alpha < beta only
};

/// Tests every pair of reduced fractions 0 < alpha < beta <= 1/2 with
/// denominators <= max_den. Pairs are grouped by denominator pair so each
/// common field is built, and its monomials reduced, once.
inline SineRatioSweep sine_ratio_sweep(long max_den) {
    if (max_den < 2) throw DomainError("sine_ratio_sweep requires max_den >= 2");
    std::map<long, std::vector<long>> numerators;  // den -> numerators with a/den in (0, 1/2]
    for (long d = 2; d <= max_den; ++d)
        for (long a = 1; 2 * a <= d; ++a)
            if (gcd_long(a, d) == 1) numerators[d].push_back(a);

    SineRatioSweep out;
    out.max_denominator = max_den;
    for (auto i1 = numerators.begin(); i1 != numerators.end(); ++i1) {
        for (auto i2 = i1; i2 != numerators.end(); ++i2) {
            const long d1 = i1->first, d2 = i2->first;
            const long M = lcm_long(lcm_long(2 * d1, 4), lcm_long(2 * d2, 4));
            const FieldPtr f = CyclotomicField::get(M);

            // sin(pi a/d) = (zeta^(M/4 - a M/2d) - zeta^(M/4 + a M/2d)) / 2
            std::vector<Rational> fracs;
            std::vector<long> exps;
            auto add = [&](long d, const std::vector<long>& nums) {
                for (long a : nums) {
                    fracs.push_back(make_rational(a, d));
                    const long s = a * (M / (2 * d));
                    exps.push_back(M / 4 - s);
                    exps.push_back(M / 4 + s);
                }
            };
            add(d1, i1->second);
            if (d2 != d1) add(d2, i2->second);
            const auto rows = f->reduce_monomials(exps);
            std::vector<CycElt> sines;
            sines.reserve(fracs.size());
            for (std::size_t k = 0; k < fracs.size(); ++k) {
                std::vector<Integer> p(static_cast<std::size_t>(f->degree()));
                for (std::size_t j = 0; j < p.size(); ++j)
                    p[j] = static_cast<long>(rows[2 * k][j] - rows[2 * k + 1][j]);
                sines.push_back(CycElt::from_poly(f, std::move(p), 2));
            }

            const std::size_t n1 = i1->second.size();
            const std::size_t first2 = d1 == d2 ? 0 : n1;
            for (std::size_t a = 0; a < n1; ++a) {
                for (std::size_t b = first2; b < fracs.size(); ++b) {
                    std::size_t lo = a, hi = b;
                    if (fracs[lo] == fracs[hi]) continue;
                    if (fracs[lo] > fracs[hi]) std::swap(lo, hi);
                    if (d1 == d2 && b < a) continue;  // unordered within one group
                    ++out.pairs_tested;
                    if (auto q = rational_quotient(sines[lo], sines[hi]))
                        out.rational_pairs.push_back({fracs[lo], fracs[hi], *q});
                }
            }
        }
    }
    return out;
}

/// True when p = x^(2 k2) - q x^(k1 + k2) + q x^(k2 - k1) - 1 for some
/// rational q != 0 and integers 0 < k1 < k2.
inline bool has_four_term_shape(const CycPoly& p) {
    if (p.nonzero_terms() != 4) return false;
    std::vector<std::size_t> e;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        if (p.coeffs()[k] != 0) e.push_back(k);
    // e[0] < e[1] < e[2] < e[3]
    if (e[0] != 0 || p.coeff(e[3]) != 1 || p.coeff(0) != -1) return false;
    if (e[3] % 2 != 0 || e[1] + e[2] != e[3]) return false;
    const std::size_t k2 = e[3] / 2;
    if (!(e[2] > k2)) return false;
    return p.coeff(e[1]) == -p.coeff(e[2]);
}

struct Section4Entry {
    long N = 0;
    bool excluded = false;  // false: skipped before the polynomial test
    std::string reason;
    std::size_t nonzero_terms = 0;
    bool four_term_shape = false;
};

struct Section4Report {
    long n_max = 0;
    std::vector<Section4Entry> entries;
    bool all_excluded() const {
        for (const auto& e : entries)
            if (e.four_term_shape) return false;
        return true;
    }
};

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// For each odd N in [3, n_max): skip N unless squarefree with
/// gcd(N, phi(N)) = 1, then show Phi_{2N} is not of the four-term shape.
inline Section4Report verify_section4(long n_max) {
    if (n_max < 45) throw DomainError("verify_section4 requires N_max >= 45");
    Section4Report rep;
    rep.n_max = n_max;
    for (long N = 3; N < n_max; N += 2) {
        Section4Entry e;
        e.N = N;
        if (!is_squarefree(N)) {
            e.reason = "not squarefree";
        } else if (gcd_long(N, euler_phi(N)) != 1) {
            e.reason = "gcd(N, phi(N)) != 1";
        } else {
            const CycPoly phi2n = cyclotomic_poly(2 * N);
            e.excluded = true;
            e.nonzero_terms = phi2n.nonzero_terms();
            e.four_term_shape = has_four_term_shape(phi2n);
            if (is_prime(N)) {
                std::vector<Rational> alt(static_cast<std::size_t>(N));
                for (long k = 0; k < N; ++k) alt[static_cast<std::size_t>(k)] = (k % 2 == 0) ? 1 : -1;
                if (!(phi2n == CycPoly(alt)))
                    throw VerificationError("Phi_2N is not alternating for prime N=" + std::to_string(N));
                e.reason = "alternating-sign prime cyclotomic, " + std::to_string(e.nonzero_terms) +
                           " nonzero terms";
            } else if (e.nonzero_terms > 4) {
                e.reason = "more than four nonzero coefficients (" + std::to_string(e.nonzero_terms) + ")";
            } else {
                e.reason = e.four_term_shape ? "MATCHES four-term shape" : "not of four-term shape";
            }
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

}  // namespace ngon
