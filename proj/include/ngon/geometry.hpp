/**
 * @file geometry.hpp
 * @brief Exact planar vectors and 2x2 matrices over a cyclotomic field.
 */
#pragma once

#include "cyclotomic.hpp"

#include <array>
#include <ostream>
#include <string>

namespace ngon {

/// Point or vector in the plane with exact real coordinates.
struct Vec2 {
    CycElt x;
    CycElt y;

    Vec2() = default;
    Vec2(CycElt x_, CycElt y_) : x(std::move(x_)), y(std::move(y_)) {}
    static Vec2 zero(const FieldPtr& f) { return {CycElt(f), CycElt(f)}; }

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    friend Vec2 operator*(const CycElt& s, const Vec2& v) { return {s * v.x, s * v.y}; }
    friend Vec2 operator*(const Rational& s, const Vec2& v) { return {v.x * s, v.y * s}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    std::array<double, 2> shadow() const { return {x.to_double(), y.to_double()}; }
};

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    auto sh = v.shadow();
    return os << "(" << sh[0] << ", " << sh[1] << ")";
}

inline CycElt cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline CycElt dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline CycElt norm_sq(const Vec2& a) { return dot(a, a); }

/// Sign of the turn a -> b -> c (positive when counter-clockwise).
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a).sign(); }

inline bool parallel(const Vec2& a, const Vec2& b) { return cross(a, b).is_zero(); }

/// Lexicographic (x, y) comparison.
inline int compare_xy(const Vec2& a, const Vec2& b) {
    if (int c = compare(a.x, b.x); c != 0) return c;
    return compare(a.y, b.y);
}

/// Exact 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    CycElt a, b, c, d;

    static Mat2 identity(const FieldPtr& f) { return {CycElt(f, 1), CycElt(f), CycElt(f), CycElt(f, 1)}; }

    friend Mat2 operator*(const Mat2& m, const Mat2& k) {
        return {m.a * k.a + m.b * k.c, m.a * k.b + m.b * k.d, m.c * k.a + m.d * k.c, m.c * k.b + m.d * k.d};
    }
    friend Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
    friend bool operator==(const Mat2& m, const Mat2& k) { return m.a == k.a && m.b == k.b && m.c == k.c && m.d == k.d; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    CycElt det() const { return a * d - b * c; }
    CycElt trace() const { return a + d; }

    Mat2 inverse() const {
        CycElt dt = det();
        if (dt.is_zero()) throw DomainError("singular matrix");
        if (auto r = dt.is_rational(); r && *r == 1) return {d, -b, -c, a};
        CycElt inv = dt.inverse();
        return {d * inv, -b * inv, -c * inv, a * inv};
    }

    std::array<double, 4> shadow() const { return {a.to_double(), b.to_double(), c.to_double(), d.to_double()}; }
};

}  // namespace ngon
