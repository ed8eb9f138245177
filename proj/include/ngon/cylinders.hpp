/**
 * @file cylinders.hpp
 * @brief Cylinder decompositions in periodic directions.
 *
 * For a direction u every point gets frame coordinates x' = <u, p> and
 * y' = u x p. Saddle connections are traced from every outgoing prong; the
 * levels y' they (and the vertices) occupy cut each polygon into horizontal
 * strips, and the edge gluings permute the strips. Each cycle of strips is a
 * cylinder. Heights and circumferences are reported in frame units, i.e.
 * |u| times their Euclidean values; `scale` holds |u|^2 (1 for unit u).
 */
#pragma once

#include "develop.hpp"

#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace ngon {

struct AperiodicDirection : DomainError {
    using DomainError::DomainError;
};

struct SaddleConnection {
    VertexRef start;
    VertexRef end;
    int start_class = 0;
    int end_class = 0;
    Vec2 holonomy;
    std::vector<TracePiece> pieces;
};

struct Strip {
    int poly = 0;
    CycElt lo, hi;  // frame levels y'
    int cylinder = -1;
    int right = -1;  // strip reached by flowing along u
    // chord endpoints at the middle level, used for widths and samples
    Vec2 mid_left, mid_right;
};

struct Cylinder {
    int id = 0;
    Vec2 direction;
    CycElt height;
    CycElt circumference;
    CycElt modulus;  // height / circumference, scale free
    std::vector<int> strips;
    std::vector<int> bottom;  // saddle connections on the lower boundary
    std::vector<int> top;
    SurfacePoint core_sample;
};

struct Decomposition {
    Vec2 direction;
    CycElt scale;  // |u|^2
    std::vector<Cylinder> cylinders;
    std::vector<SaddleConnection> saddle_connections;
    std::vector<Strip> strips;

    bool is_unit() const { return scale.is_rational() == Rational(1); }
};

inline CycElt frame_x(const Vec2& u, const Vec2& p) { return dot(u, p); }
inline CycElt frame_y(const Vec2& u, const Vec2& p) { return cross(u, p); }

inline Vec2 horizontal_direction(const SurfaceDef& s) { return {s.constant(1), s.constant(0)}; }

/// Direction at angle pi/n: horizontal after rotating so an edge of the first
/// polygon is horizontal.
inline Vec2 rotated_direction(const SurfaceDef& s) {
    return {cos_pi(make_rational(1, s.n), s.field), sin_pi(make_rational(1, s.n), s.field)};
}

/// Closed-form cylinder heights 2 sin(pi/n) sin(k pi/n) in the surface
/// field: odd k up to n/2 horizontally for even n, k = 1..(n-1)/2 for odd
/// n, even k up to n/2 in the rotated direction (even n only).
inline std::vector<std::pair<int, CycElt>> closed_form_heights(const SurfaceDef& s, bool rotated) {
    if (rotated && !s.even()) throw DomainError("the rotated direction is defined for even n only");
    std::vector<int> ks;
    if (rotated) {
        for (int k = 2; 2 * k <= s.n; k += 2) ks.push_back(k);
    } else if (s.even()) {
        for (int k = 1; 2 * k <= s.n; k += 2) ks.push_back(k);
    } else {
        for (int k = 1; 2 * k < s.n; ++k) ks.push_back(k);
    }
    const CycElt base = Rational(2) * sin_pi(make_rational(1, s.n), s.field);
    std::vector<std::pair<int, CycElt>> out;
    for (int k : ks) out.emplace_back(k, base * sin_pi(make_rational(k, s.n), s.field));
    return out;
}

struct DecomposeOptions {
    double max_length_diameters = 200;  // separatrix length bound
};

namespace detail {

inline bool cyc_less(const CycElt& a, const CycElt& b) { return compare(a, b) < 0; }

/// Point on edge a->b at frame level y (requires distinct endpoint levels).
inline Vec2 edge_point_at_level(const Vec2& u, const Vec2& a, const Vec2& b, const CycElt& y) {
    const CycElt ya = frame_y(u, a), yb = frame_y(u, b);
    const CycElt s = (y - ya) * (yb - ya).inverse();
    return a + s * (b - a);
}

}  // namespace detail

inline Decomposition decompose(const SurfaceDef& s, const Vec2& u, const DecomposeOptions& opt = {}) {
    if (u.is_zero()) throw DomainError("direction must be nonzero");
    Decomposition d;
    d.direction = u;
    d.scale = norm_sq(u);

    // Saddle connections from every outgoing prong.
    const double len = std::sqrt(d.scale.to_double());
    const long k = static_cast<long>(std::ceil(opt.max_length_diameters * 2.0 / len)) + 1;
    const Vec2 reach = Rational(k) * u;
    for (const auto& c : entering_corners(s, u)) {
        TraceResult tr = trace(s, c.poly, s.vertex(c.poly, c.vertex), reach);
        if (!tr.hit_vertex) throw AperiodicDirection("separatrix did not close within the length bound");
        SaddleConnection sc;
        sc.start = c;
        sc.end = {tr.poly, tr.vertex};
        sc.start_class = s.class_of(c);
        sc.end_class = s.class_of(sc.end);
        sc.holonomy = tr.fraction * reach;
        sc.pieces = std::move(tr.pieces);
        d.saddle_connections.push_back(std::move(sc));
    }

    // Levels per polygon.
    const int P = s.polygon_count();
    std::vector<std::vector<CycElt>> levels(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p)
        for (int v = 0; v < s.sides(p); ++v) levels[static_cast<std::size_t>(p)].push_back(frame_y(u, s.vertex(p, v)));
    for (const auto& sc : d.saddle_connections)
        for (const auto& piece : sc.pieces) levels[static_cast<std::size_t>(piece.poly)].push_back(frame_y(u, piece.from));
    for (auto& l : levels) {
        std::sort(l.begin(), l.end(), detail::cyc_less);
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }

    // Strips, indexed by (poly, lower level).
    std::vector<std::unordered_map<CycElt, int>> strip_at(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p) {
        const auto& l = levels[static_cast<std::size_t>(p)];
        for (std::size_t i = 0; i + 1 < l.size(); ++i) {
            Strip st;
            st.poly = p;
            st.lo = l[i];
            st.hi = l[i + 1];
            strip_at[static_cast<std::size_t>(p)][st.lo] = static_cast<int>(d.strips.size());
            d.strips.push_back(std::move(st));
        }
    }

    // Chords at mid level and the right neighbour of every strip.
    for (auto& st : d.strips) {
        const CycElt mid = (st.lo + st.hi) * Rational(1, 2);
        int exit_edge = -1;
        for (int e = 0; e < s.sides(st.poly); ++e) {
            const Vec2& a = s.vertex(st.poly, e);
            const Vec2& b = s.vertex(st.poly, e + 1);
            const CycElt ya = frame_y(u, a), yb = frame_y(u, b);
            const int dir = cross(b - a, u).sign();
            if (dir == 0) continue;
            const CycElt& lo = dir < 0 ? ya : yb;  // exit edges run upward in y'
            const CycElt& hi = dir < 0 ? yb : ya;
            if (compare(lo, st.lo) > 0 || compare(hi, st.hi) < 0) continue;
            const Vec2 pt = detail::edge_point_at_level(u, a, b, mid);
            if (dir < 0) {
                st.mid_right = pt;
                exit_edge = e;
            } else {
                st.mid_left = pt;
            }
        }
        if (exit_edge < 0) throw VerificationError("strip has no exit edge");
        const EdgeRef e{st.poly, exit_edge};
        const int q = s.partner(e).poly;
        const CycElt shifted = st.lo + frame_y(u, s.translation(e));
        auto it = strip_at[static_cast<std::size_t>(q)].find(shifted);
        if (it == strip_at[static_cast<std::size_t>(q)].end()) throw VerificationError("strip gluing does not match a strip");
        st.right = it->second;
    }

    // Cycles of the strip permutation are cylinders.
    for (std::size_t i = 0; i < d.strips.size(); ++i) {
        if (d.strips[i].cylinder >= 0) continue;
        Cylinder cyl;
        cyl.id = static_cast<int>(d.cylinders.size());
        cyl.direction = u;
        cyl.height = d.strips[i].hi - d.strips[i].lo;
        cyl.circumference = s.constant(0);
        int j = static_cast<int>(i);
        while (d.strips[static_cast<std::size_t>(j)].cylinder < 0) {
            Strip& st = d.strips[static_cast<std::size_t>(j)];
            st.cylinder = cyl.id;
            if (!(st.hi - st.lo == cyl.height)) throw VerificationError("strip heights differ within a cylinder");
            cyl.circumference += frame_x(u, st.mid_right) - frame_x(u, st.mid_left);
            cyl.strips.push_back(j);
            j = st.right;
        }
        if (j != static_cast<int>(i)) throw VerificationError("strip permutation is not a bijection");
        const Strip& first = d.strips[i];
        cyl.core_sample = canonicalize(s, first.poly, Rational(1, 2) * (first.mid_left + first.mid_right));
        cyl.modulus = cyl.height * cyl.circumference.inverse();
        d.cylinders.push_back(std::move(cyl));
    }

    // Boundary saddle connections: a piece at level y in polygon p lies on
    // the bottom of the strip starting at y and the top of the one ending there.
    for (std::size_t c = 0; c < d.saddle_connections.size(); ++c) {
        std::set<int> bottoms, tops;
        for (const auto& piece : d.saddle_connections[c].pieces) {
            const CycElt y = frame_y(u, piece.from);
            const auto& l = levels[static_cast<std::size_t>(piece.poly)];
            auto it = std::lower_bound(l.begin(), l.end(), y, detail::cyc_less);
            const std::size_t idx = static_cast<std::size_t>(it - l.begin());
            auto& sa = strip_at[static_cast<std::size_t>(piece.poly)];
            if (auto f = sa.find(y); f != sa.end()) bottoms.insert(d.strips[static_cast<std::size_t>(f->second)].cylinder);
            if (idx > 0) tops.insert(d.strips[static_cast<std::size_t>(sa.at(l[idx - 1]))].cylinder);
        }
        for (int cyl : bottoms) d.cylinders[static_cast<std::size_t>(cyl)].bottom.push_back(static_cast<int>(c));
        for (int cyl : tops) d.cylinders[static_cast<std::size_t>(cyl)].top.push_back(static_cast<int>(c));
    }

    CycElt area(s.field);
    for (const auto& cyl : d.cylinders) area += cyl.height * cyl.circumference;
    if (!(area == d.scale * s.area())) throw VerificationError("cylinder areas do not sum to the surface area");
    return d;
}

/// Exact ratio of the Euclidean heights of two parallel cylinders, if rational.
inline std::optional<Rational> height_ratio_rational(const Cylinder& c1, const Cylinder& c2) {
    if (!parallel(c1.direction, c2.direction)) throw DomainError("cylinders are not parallel");
    // c1.direction = lambda c2.direction; frame heights scale by |lambda|
    const CycElt lambda = dot(c1.direction, c2.direction) * norm_sq(c2.direction).inverse();
    return rational_quotient(c1.height, abs(lambda) * c2.height);
}

/// True when the two cylinders have a boundary saddle connection in common.
inline bool share_boundary(const Cylinder& a, const Cylinder& b) {
    std::set<int> ab(a.bottom.begin(), a.bottom.end());
    ab.insert(a.top.begin(), a.top.end());
    for (int x : b.bottom)
        if (ab.count(x)) return true;
    for (int x : b.top)
        if (ab.count(x)) return true;
    return false;
}

namespace detail {
/// Strips of the decomposition holding some copy of p, with p's level.
inline std::vector<std::pair<int, CycElt>> strips_holding(const SurfaceDef& s, const Decomposition& d, const SurfacePoint& p) {
    std::vector<std::pair<int, CycElt>> out;
    for (const auto& cp : copies(s, p.polygon, p.position)) {
        const CycElt y = frame_y(d.direction, cp.position);
        for (std::size_t i = 0; i < d.strips.size(); ++i) {
            const Strip& st = d.strips[i];
            if (st.poly == cp.polygon && compare(st.lo, y) <= 0 && compare(y, st.hi) <= 0)
                out.emplace_back(static_cast<int>(i), y);
        }
    }
    return out;
}
}  // namespace detail

/// Closed cylinders containing p, ordered by id.
inline std::vector<int> cylinders_containing(const SurfaceDef& s, const Decomposition& d, const SurfacePoint& p) {
    std::set<int> ids;
    for (const auto& [strip, y] : detail::strips_holding(s, d, p)) ids.insert(d.strips[static_cast<std::size_t>(strip)].cylinder);
    return {ids.begin(), ids.end()};
}

/// Height of p above the lower boundary of cylinder c as a fraction of the
/// height, when that fraction is rational. Throws if p is not in c.
inline std::optional<Rational> rational_height(const SurfaceDef& s, const Decomposition& d, int c, const SurfacePoint& p) {
    for (const auto& [strip, y] : detail::strips_holding(s, d, p)) {
        const Strip& st = d.strips[static_cast<std::size_t>(strip)];
        if (st.cylinder != c) continue;
        return rational_quotient(y - st.lo, st.hi - st.lo);
    }
    throw DomainError("point is not in cylinder " + std::to_string(c));
}

}  // namespace ngon
