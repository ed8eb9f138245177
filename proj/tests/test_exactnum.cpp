#include <ngon/cyclotomic.hpp>
#include <ngon/poly.hpp>
#include <ngon/sine_ratio.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace ngon;

namespace {

// Oracle: Phi_m as prod (x - exp(2 pi i k/m)) over units k, in complex
// doubles, rounded to integers.
std::vector<long> cyclotomic_by_roots(long m) {
    std::vector<std::complex<double>> p{1.0};
    for (long k = 1; k <= m; ++k) {
        if (std::gcd(k, m) != 1) continue;
        std::complex<double> root = std::polar(1.0, 2 * std::numbers::pi * double(k) / double(m));
        std::vector<std::complex<double>> q(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= root * p[i];
        }
        p = q;
    }
    std::vector<long> out;
    for (auto c : p) out.push_back(std::lround(c.real()));
    return out;
}

long phi_brute(long m) {
    long c = 0;
    for (long k = 1; k <= m; ++k)
        if (std::gcd(k, m) == 1) ++c;
    return c;
}

CycElt random_elt(std::mt19937& rng, long m) {
    auto f = CyclotomicField::get(m);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> c;
    for (long k = 0; k < f->degree(); ++k) c.push_back(make_rational(num(rng), den(rng)));
    return CycElt::from_coeffs(f, c);
}

}  // namespace

TEST(Cyclotomic, SmallPolynomials) {
    EXPECT_EQ(cyclotomic_poly(1).str(), "x - 1");
    EXPECT_EQ(cyclotomic_poly(4).str(), "x^2 + 1");
    EXPECT_EQ(cyclotomic_poly(10).str(), "x^4 - x^3 + x^2 - x + 1");
}

TEST(Cyclotomic, MatchesRootProductAndDividesXmMinusOne) {
    for (long m = 1; m <= 100; ++m) {
        const CycPoly p = cyclotomic_poly(m);
        ASSERT_EQ(p.degree(), euler_phi(m)) << m;
        if (m <= 60) {  // double-precision root products lose accuracy beyond this
            auto oracle = cyclotomic_by_roots(m);
            ASSERT_EQ(static_cast<long>(oracle.size()), p.degree() + 1);
            for (std::size_t k = 0; k < oracle.size(); ++k) EXPECT_EQ(p.coeff(k), oracle[k]) << "m=" << m;
        }
        const auto fast = cyclotomic_coeffs_int(m);
        for (std::size_t k = 0; k < fast.size(); ++k) EXPECT_EQ(p.coeff(k), static_cast<long>(fast[k]));
        auto [q, r] = divmod(CycPoly::monomial(m) - CycPoly::monomial(0), p);
        EXPECT_TRUE(r.is_zero()) << m;
    }
}

TEST(Cyclotomic, EulerPhi) {
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(euler_phi(12), 4);
    EXPECT_EQ(euler_phi(30), phi_brute(30));
    EXPECT_EQ(euler_phi(30), 8);
    for (long m = 1; m < 300; ++m) EXPECT_EQ(euler_phi(m), phi_brute(m));
}

TEST(Cyclotomic, GOf) {
    EXPECT_EQ(g_of(6), 6);
    EXPECT_EQ(g_of(8), 16);
    EXPECT_EQ(g_of(5), 20);
    EXPECT_EQ(g_of(1), 4);
    EXPECT_EQ(g_of(2), 2);
}

TEST(Cyclotomic, SinExactValues) {
    EXPECT_EQ(sin_exact(1, 2).is_rational(), Rational(1));
    EXPECT_EQ(sin_exact(1, 6).is_rational(), Rational(1, 2));
    EXPECT_FALSE(sin_exact(1, 5).is_rational().has_value());
    EXPECT_EQ(sin_exact(2, 4).is_rational(), Rational(1));  // reduced internally
    for (long m = 1; m <= 30; ++m)
        for (long k = -m; k <= 2 * m; ++k) {
            CycElt s = sin_exact(k, m);
            EXPECT_NEAR(s.to_double(), std::sin(std::numbers::pi * k / m), 1e-9);
            EXPECT_NEAR(s.embed().imag(), 0.0, 1e-9);
            EXPECT_EQ(s, s.conj()) << k << "/" << m;
        }
}

TEST(Cyclotomic, IsRational) {
    auto f5 = CyclotomicField::get(5);
    EXPECT_FALSE(CycElt::zeta(f5, 1).is_rational());
    // 1 + z + z^2 + z^3 + z^4 = 0 in Q(zeta_5)
    CycElt s(f5);
    for (int k = 0; k < 5; ++k) s += CycElt::zeta(f5, k);
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(s.is_rational(), Rational(0));
    EXPECT_FALSE((sin_exact(1, 5) / sin_exact(2, 5)).is_rational());
}

TEST(Cyclotomic, FieldAxioms) {
    std::mt19937 rng(7);
    for (long m : {20L, 28L, 40L}) {
        for (int trial = 0; trial < 10; ++trial) {
            CycElt a = random_elt(rng, m), b = random_elt(rng, m), c = random_elt(rng, m);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ((a + b) * c, a * c + b * c);
            EXPECT_EQ(a * b, b * a);
            if (!a.is_zero()) { EXPECT_EQ(a * a.inverse(), CycElt(m, 1)); }
            auto emb = (a * b).embed() - a.embed() * b.embed();
            EXPECT_LT(std::abs(emb), 1e-9);
            // canonical form is a fixed point of reduction
            EXPECT_EQ(CycElt::from_coeffs(a.field(), a.coeffs()), a);
        }
    }
}

TEST(Cyclotomic, MixedConductorPromotes) {
    CycElt a = sin_exact(1, 5);  // conductor 20
    CycElt b = cos_exact(1, 3);  // conductor 12 (value 1/2)
    CycElt c = a + b;
    EXPECT_EQ(c.conductor(), 60);
    EXPECT_NEAR(c.to_double(), std::sin(std::numbers::pi / 5) + 0.5, 1e-12);
    EXPECT_EQ(b.is_rational(), Rational(1, 2));
    EXPECT_EQ(a.promote(60), a);
}

TEST(Cyclotomic, ExactSign) {
    // sqrt(2)/2 - 707/1000 is tiny but positive; 1/2 - sin(pi/6) is zero.
    auto f = CyclotomicField::get(16);
    CycElt s = sin_pi(Rational(1, 4), f);
    EXPECT_EQ((s - Rational(707, 1000)).sign(), 1);
    EXPECT_EQ((s - Rational(7072, 10000)).sign(), -1);
    // Force the MPFR path with a difference below double resolution.
    Rational close("7071067811865475244008443621/10000000000000000000000000000");
    EXPECT_EQ((s - close).sign(), 1);
    EXPECT_EQ((sin_exact(1, 6) - Rational(1, 2)).sign(), 0);
    EXPECT_EQ((s * Rational(10)).floor(), 7);
    EXPECT_EQ((-s).floor(), -1);
}

TEST(Cyclotomic, RationalQuotientAgreesWithDivision) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        CycElt y = random_elt(rng, 20);
        if (y.is_zero()) continue;
        CycElt x = (trial % 2 == 0) ? y * Rational(trial - 7, 3) : random_elt(rng, 20);
        EXPECT_EQ(rational_quotient(x, y), (x / y).is_rational());
    }
}

TEST(SineRatio, Examples) {
    EXPECT_EQ(sine_ratio_rational(Rational(1, 6), Rational(1, 2)), Rational(1, 2));
    EXPECT_EQ(sine_ratio_rational(Rational(1, 4), Rational(1, 4)), Rational(1));
    EXPECT_FALSE(sine_ratio_rational(Rational(1, 5), Rational(2, 5)).has_value());
    EXPECT_THROW(sine_ratio_rational(Rational(1, 3), Rational(1, 4)), DomainError);
    EXPECT_THROW(sine_ratio_rational(Rational(0), Rational(1, 4)), DomainError);
    EXPECT_THROW(sine_ratio_rational(Rational(1, 4), Rational(2, 3)), DomainError);
}

TEST(SineRatio, SmallSweepOnlyExceptionalPair) {
    auto sweep = sine_ratio_sweep(24);
    ASSERT_EQ(sweep.rational_pairs.size(), 1u);
    EXPECT_EQ(sweep.rational_pairs[0].alpha, Rational(1, 6));
    EXPECT_EQ(sweep.rational_pairs[0].beta, Rational(1, 2));
    EXPECT_EQ(sweep.rational_pairs[0].value, Rational(1, 2));
}

TEST(SineRatio, SweepMatchesSingleQueries) {
    // Brute force over denominators <= 12 with the single-pair route.
    std::vector<Rational> fr;
    for (long d = 2; d <= 12; ++d)
        for (long a = 1; 2 * a <= d; ++a)
            if (std::gcd(a, d) == 1) fr.push_back(make_rational(a, d));
    std::size_t count = 0, hits = 0;
    for (auto& a : fr)
        for (auto& b : fr)
            if (a < b) {
                ++count;
                if (sine_ratio_rational(a, b)) ++hits;
            }
    auto sweep = sine_ratio_sweep(12);
    EXPECT_EQ(sweep.pairs_tested, count);
    EXPECT_EQ(sweep.rational_pairs.size(), hits);
}

TEST(Section4, CaseAnalysis) {
    auto rep = verify_section4(45);
    EXPECT_TRUE(rep.all_excluded());
    auto find = [&](long N) {
        for (auto& e : rep.entries)
            if (e.N == N) return e;
        throw std::runtime_error("missing");
    };
    EXPECT_TRUE(find(7).excluded);
    EXPECT_EQ(find(7).nonzero_terms, 7u);
    EXPECT_EQ(find(7).reason, "alternating-sign prime cyclotomic, 7 nonzero terms");
    EXPECT_TRUE(find(15).excluded);
    EXPECT_GT(find(15).nonzero_terms, 4u);
    EXPECT_FALSE(find(21).excluded);
    EXPECT_EQ(find(21).reason, "gcd(N, phi(N)) != 1");
    EXPECT_THROW(verify_section4(44), DomainError);
}

TEST(Section4, FourTermShapeMatcher) {
    // x^6 - 3x^4 + 3x^2 - 1 has the shape with k2=3, k1=1, q=3.
    CycPoly p({Rational(-1), 0, 3, 0, -3, 0, 1});
    EXPECT_TRUE(has_four_term_shape(p));
    EXPECT_FALSE(has_four_term_shape(cyclotomic_poly(6)));
}
