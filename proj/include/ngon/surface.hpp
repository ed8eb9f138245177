/**
 * @file surface.hpp
 * @brief The regular n-gon surface (n even) and the double n-gon surface
 * (n odd) as exact polygons with translation gluings.
 *
 * R1 is the regular n-gon inscribed in the unit circle with a vertex at i.
 * For odd n, R2 = -R1 (equivalently R1 rotated by pi/n), with a vertex at -i.
 * Coordinates live in Q(zeta_M), M = lcm(4, 2n), which contains every
 * cos/sin(k pi / n) the constructions need.
 */
#pragma once

#include "geometry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ngon {

struct EdgeRef {
    int poly = 0;
    int edge = 0;
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

struct VertexRef {
    int poly = 0;
    int vertex = 0;
    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

/// Identified vertex class; angle is the total cone angle as a multiple of pi.
struct ConeClass {
    std::vector<VertexRef> members;
    Rational angle;
};

/// A point on the surface given by a polygon and exact planar coordinates.
/// Canonical points are the lexicographically least (polygon, x, y) copy of
/// their identification class.
struct SurfacePoint {
    int polygon = 0;
    Vec2 position;
    bool canonical = false;

    friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
        return a.polygon == b.polygon && a.position == b.position;
    }
};

/// Total order (polygon, x, y) used for canonical representatives and for
/// deterministic output ordering.
inline std::ostream& operator<<(std::ostream& os, const SurfacePoint& p) {
    return os << "poly " << p.polygon << " " << p.position;
}

inline int compare_points(const SurfacePoint& a, const SurfacePoint& b) {
    if (a.polygon != b.polygon) return a.polygon < b.polygon ? -1 : 1;
    return compare_xy(a.position, b.position);
}

inline bool point_less(const SurfacePoint& a, const SurfacePoint& b) { return compare_points(a, b) < 0; }

enum class Location { Interior, Edge, Vertex, Outside };

struct LocatedPoint {
    Location kind = Location::Outside;
    int index = -1;  // edge or vertex index
};

class SurfaceDef {
public:
    int n = 0;
    FieldPtr field;
    std::vector<std::vector<Vec2>> polygons;  // counter-clockwise vertex cycles
    std::vector<std::vector<EdgeRef>> partners;
    std::vector<std::vector<Vec2>> translations;  // x on edge e  <->  x + T(e) on partner
    std::vector<ConeClass> cone_classes;
    std::vector<std::vector<int>> vertex_class;

    bool even() const { return n % 2 == 0; }
    int polygon_count() const { return static_cast<int>(polygons.size()); }
    int sides(int poly) const { return static_cast<int>(polygons[static_cast<std::size_t>(poly)].size()); }

    const Vec2& vertex(int poly, int k) const {
        const auto& p = polygons[static_cast<std::size_t>(poly)];
        return p[static_cast<std::size_t>(floor_mod(k, static_cast<long>(p.size())))];
    }
    const Vec2& edge_start(const EdgeRef& e) const { return vertex(e.poly, e.edge); }
    const Vec2& edge_end(const EdgeRef& e) const { return vertex(e.poly, e.edge + 1); }
    Vec2 edge_vector(const EdgeRef& e) const { return edge_end(e) - edge_start(e); }
    const EdgeRef& partner(const EdgeRef& e) const {
        return partners[static_cast<std::size_t>(e.poly)][static_cast<std::size_t>(e.edge)];
    }
    const Vec2& translation(const EdgeRef& e) const {
        return translations[static_cast<std::size_t>(e.poly)][static_cast<std::size_t>(e.edge)];
    }
    int class_of(const VertexRef& v) const {
        return vertex_class[static_cast<std::size_t>(v.poly)][static_cast<std::size_t>(v.vertex)];
    }

    CycElt constant(const Rational& r) const { return CycElt(field, r); }
    Vec2 origin() const { return Vec2::zero(field); }

    LocatedPoint locate(int poly, const Vec2& pos) const {
        const int k = sides(poly);
        int zeros = 0, first_zero = -1, last_zero = -1;
        for (int e = 0; e < k; ++e) {
            const int o = orientation(vertex(poly, e), vertex(poly, e + 1), pos);
            if (o < 0) return {Location::Outside, -1};
            if (o == 0) {
                if (first_zero < 0) first_zero = e;
                last_zero = e;
                ++zeros;
            }
        }
        if (zeros == 0) return {Location::Interior, -1};
        if (zeros == 1) return {Location::Edge, first_zero};
        // Two adjacent edges meet at their shared vertex.
        if (first_zero == 0 && last_zero == k - 1) return {Location::Vertex, 0};
        return {Location::Vertex, last_zero};
    }

    bool contains(int poly, const Vec2& pos) const { return locate(poly, pos).kind != Location::Outside; }

    CycElt polygon_area(int poly) const {
        CycElt twice(field);
        for (int e = 0; e < sides(poly); ++e) twice += cross(vertex(poly, e), vertex(poly, e + 1));
        return twice * Rational(1, 2);
    }

    CycElt area() const {
        CycElt a(field);
        for (int p = 0; p < polygon_count(); ++p) a += polygon_area(p);
        return a;
    }
};

inline FieldPtr surface_field(int n) { return CyclotomicField::get(lcm_long(4, 2L * n)); }

/// Genus by the closed forms floor(n/4) (n even) and (n-1)/2 (n odd).
inline int genus_formula(int n) { return n % 2 == 0 ? n / 4 : (n - 1) / 2; }

inline SurfaceDef build_surface(int n) {
    if (n < 5 || n == 6) throw DomainError("surface requires n >= 5 and n != 6, got " + std::to_string(n));
    SurfaceDef s;
    s.n = n;
    s.field = surface_field(n);

    // R1: vertex j at i * exp(2 pi i j / n), i.e. angle pi (1/2 + 2j/n).
    std::vector<Vec2> r1;
    for (int j = 0; j < n; ++j) {
        Rational t = make_rational(n + 4 * j, 2 * n);
        r1.push_back({cos_pi(t, s.field), sin_pi(t, s.field)});
    }
    s.polygons.push_back(r1);
    if (n % 2 == 1) {
        std::vector<Vec2> r2;
        for (const auto& v : r1) r2.push_back(-v);
        s.polygons.push_back(std::move(r2));
    }

    // Glue each edge to the unique other edge whose boundary vector is its
    // negative.
    const int P = s.polygon_count();
    s.partners.assign(static_cast<std::size_t>(P), std::vector<EdgeRef>(static_cast<std::size_t>(n)));
    s.translations.assign(static_cast<std::size_t>(P), std::vector<Vec2>(static_cast<std::size_t>(n)));
    for (int p = 0; p < P; ++p) {
        for (int e = 0; e < n; ++e) {
            const EdgeRef me{p, e};
            const Vec2 w = s.edge_vector(me);
            std::optional<EdgeRef> found;
            for (int q = 0; q < P; ++q)
                for (int f = 0; f < n; ++f) {
                    if (q == p && f == e) continue;
                    if (s.edge_vector({q, f}) == -w) {
                        if (found) throw VerificationError("edge has more than one antiparallel partner");
                        found = EdgeRef{q, f};
                    }
                }
            if (!found) throw VerificationError("edge has no antiparallel partner");
            s.partners[static_cast<std::size_t>(p)][static_cast<std::size_t>(e)] = *found;
            s.translations[static_cast<std::size_t>(p)][static_cast<std::size_t>(e)] = s.edge_end(*found) - s.edge_start(me);
        }
    }

    // Vertex classes: start(e) ~ end(partner), end(e) ~ start(partner).
    std::vector<int> parent(static_cast<std::size_t>(P * n));
    std::iota(parent.begin(), parent.end(), 0);
    auto id = [n](int p, int v) { return p * n + static_cast<int>(floor_mod(v, n)); };
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    for (int p = 0; p < P; ++p)
        for (int e = 0; e < n; ++e) {
            const EdgeRef o = s.partner({p, e});
            unite(id(p, e), id(o.poly, o.edge + 1));
            unite(id(p, e + 1), id(o.poly, o.edge));
        }
    s.vertex_class.assign(static_cast<std::size_t>(P), std::vector<int>(static_cast<std::size_t>(n), -1));
    std::vector<int> root_to_class(static_cast<std::size_t>(P * n), -1);
    const Rational interior_angle = make_rational(n - 2, n);
    for (int p = 0; p < P; ++p)
        for (int v = 0; v < n; ++v) {
            int r = find(id(p, v));
            int& c = root_to_class[static_cast<std::size_t>(r)];
            if (c < 0) {
                c = static_cast<int>(s.cone_classes.size());
                s.cone_classes.push_back({{}, Rational(0)});
            }
            s.vertex_class[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)] = c;
            s.cone_classes[static_cast<std::size_t>(c)].members.push_back({p, v});
            s.cone_classes[static_cast<std::size_t>(c)].angle += interior_angle;
        }
    return s;
}

/// Genus from the Euler characteristic of the glued cell complex.
inline int genus(const SurfaceDef& s) {
    int edges = 0;
    for (int p = 0; p < s.polygon_count(); ++p) edges += s.sides(p);
    const int chi = static_cast<int>(s.cone_classes.size()) - edges / 2 + s.polygon_count();
    return (2 - chi) / 2;
}

/// True when sum(cone angle - 2 pi) = 2 pi (2g - 2) exactly.
inline bool gauss_bonnet_holds(const SurfaceDef& s) {
    Rational excess = 0;
    for (const auto& c : s.cone_classes) excess += c.angle - 2;
    return excess == 2 * (2 * genus(s) - 2);
}

/// Every copy (polygon, position) of the point at pos in poly.
inline std::vector<SurfacePoint> copies(const SurfaceDef& s, int poly, const Vec2& pos) {
    const LocatedPoint loc = s.locate(poly, pos);
    switch (loc.kind) {
        case Location::Outside:
            throw DomainError("position outside polygon " + std::to_string(poly));
        case Location::Interior:
            return {{poly, pos, false}};
        case Location::Edge: {
            const EdgeRef e{poly, loc.index};
            const EdgeRef o = s.partner(e);
            return {{poly, pos, false}, {o.poly, pos + s.translation(e), false}};
        }
        case Location::Vertex: {
            std::vector<SurfacePoint> out;
            for (const auto& m : s.cone_classes[static_cast<std::size_t>(s.class_of({poly, loc.index}))].members)
                out.push_back({m.poly, s.vertex(m.poly, m.vertex), false});
            return out;
        }
    }
    return {};
}

inline SurfacePoint canonicalize(const SurfaceDef& s, int poly, const Vec2& pos) {
    if (poly < 0 || poly >= s.polygon_count()) throw DomainError("no such polygon " + std::to_string(poly));
    auto all = copies(s, poly, pos);
    SurfacePoint best = all.front();
    for (std::size_t i = 1; i < all.size(); ++i)
        if (point_less(all[i], best)) best = all[i];
    best.canonical = true;
    return best;
}

inline SurfacePoint canonicalize(const SurfaceDef& s, const SurfacePoint& p) {
    return canonicalize(s, p.polygon, p.position);
}

/// Cone-class index of p, if p is a vertex.
inline std::optional<int> cone_class_of(const SurfaceDef& s, const SurfacePoint& p) {
    const LocatedPoint loc = s.locate(p.polygon, p.position);
    if (loc.kind != Location::Vertex) return std::nullopt;
    return s.class_of({p.polygon, loc.index});
}

inline bool is_cone_point(const SurfaceDef& s, const SurfacePoint& p) { return cone_class_of(s, p).has_value(); }

inline SurfacePoint cone_point(const SurfaceDef& s, int cls) {
    const auto& m = s.cone_classes.at(static_cast<std::size_t>(cls)).members.front();
    return canonicalize(s, m.poly, s.vertex(m.poly, m.vertex));
}

/// The order-two affine map with derivative -Id: p -> -p in the same
/// polygon (n even) or in the other polygon (n odd).
inline SurfacePoint hyperelliptic_image(const SurfaceDef& s, const SurfacePoint& p) {
    const int target = s.even() ? p.polygon : 1 - p.polygon;
    return canonicalize(s, target, -p.position);
}

/// P_n: the polygon center (n even) or the unique cone point (n odd).
inline SurfacePoint distinguished_point(const SurfaceDef& s) {
    if (s.even()) return canonicalize(s, 0, s.origin());
    return cone_point(s, 0);
}

struct MarkedPointSet {
    std::vector<SurfacePoint> weierstrass;
    std::vector<SurfacePoint> cone;
    SurfacePoint center;

    bool is_weierstrass(const SurfacePoint& p) const {
        return std::find(weierstrass.begin(), weierstrass.end(), p) != weierstrass.end();
    }
    bool is_cone(const SurfacePoint& p) const { return std::find(cone.begin(), cone.end(), p) != cone.end(); }
};

/// Fixed points of the hyperelliptic involution, found among polygon
/// centers, edge midpoints and vertices (the only places -p can coincide
/// with p), sorted canonically.
inline MarkedPointSet weierstrass_points(const SurfaceDef& s) {
    MarkedPointSet out;
    auto consider = [&](int poly, const Vec2& pos) {
        SurfacePoint c = canonicalize(s, poly, pos);
        if (hyperelliptic_image(s, c) != c) return;
        if (std::find(out.weierstrass.begin(), out.weierstrass.end(), c) == out.weierstrass.end())
            out.weierstrass.push_back(c);
    };
    for (int p = 0; p < s.polygon_count(); ++p) {
        consider(p, s.origin());
        for (int e = 0; e < s.sides(p); ++e) {
            consider(p, Rational(1, 2) * (s.vertex(p, e) + s.vertex(p, e + 1)));
            consider(p, s.vertex(p, e));
        }
    }
    std::sort(out.weierstrass.begin(), out.weierstrass.end(), point_less);
    for (int c = 0; c < static_cast<int>(s.cone_classes.size()); ++c) out.cone.push_back(cone_point(s, c));
    out.center = distinguished_point(s);
    return out;
}

}  // namespace ngon
