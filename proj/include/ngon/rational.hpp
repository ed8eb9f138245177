/**
 * @file rational.hpp
 * @brief Arbitrary-precision rationals (GMP) and small integer helpers.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ngon {

/// Arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when an argument violates a documented precondition.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an exact verification fails (a hypothesis or invariant that
/// must hold on valid inputs does not).
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "a/b" or "a".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw DomainError("empty rational");
    Rational r;
    if (r.set_str(s, 10) != 0) throw DomainError("malformed rational '" + s + "'");
    if (r.get_den() == 0) throw DomainError("rational with zero denominator");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline long gcd_long(long a, long b) { return std::gcd(a, b); }
inline long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

inline long floor_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace ngon
