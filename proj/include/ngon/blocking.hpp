/**
 * @file blocking.hpp
 * @brief Finite blocking on the surfaces and on the unfolded right triangle,
 * with an exact developing-map enumerator of straight segments.
 */
#pragma once

#include "develop.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <optional>
#include <unordered_set>

namespace ngon {

struct BlockingQuery {
    SurfacePoint p, q;
    bool blocked = false;
    std::vector<SurfacePoint> blocking_set;  // sorted; empty unless blocked
    std::string reason;
};

/// p and q are blocked from each other iff p is not a cone point and q is
/// its image under the hyperelliptic involution.
inline BlockingQuery is_blocked(const SurfaceDef& s, const SurfacePoint& p_in, const SurfacePoint& q_in) {
    BlockingQuery r;
    r.p = canonicalize(s, p_in.polygon, p_in.position);
    r.q = canonicalize(s, q_in.polygon, q_in.position);
    if (is_cone_point(s, r.p) || is_cone_point(s, r.q)) {
        r.reason = "a cone point is never finitely blocked";
        return r;
    }
    if (!(hyperelliptic_image(s, r.p) == r.q)) {
        r.reason = "q is not the hyperelliptic image of p";
        return r;
    }
    r.blocked = true;
    r.reason = "q is the hyperelliptic image of p";
    const MarkedPointSet m = weierstrass_points(s);
    std::vector<SurfacePoint> all = m.weierstrass;
    all.insert(all.end(), m.cone.begin(), m.cone.end());
    std::sort(all.begin(), all.end(), point_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& x : all)
        if (!(x == r.p) && !(x == r.q)) r.blocking_set.push_back(x);
    return r;
}

/// Straight segment from a copy of p to q with no cone point inside.
struct DevelopedSegment {
    Vec2 holonomy;
    CycElt length_sq;
    int start_poly = 0;
    Vec2 start_pos;
    std::vector<EdgeRef> path;                 // edges crossed, in order
    std::vector<TracePiece> pieces;
    std::vector<SurfacePoint> passes_through;  // marked points hit in the interior, sorted
};

struct EnumerateOptions {
    int root_copy = 0;                  // which copy of a non-vertex p roots the unfolding
    std::size_t max_copies = 5000000;   // guard on the number of unfolded polygon copies
};

namespace detail {

/// Closed ccw sweep of directions from a to b, span at most pi; full when
/// no edge has been crossed yet from an interior start.
struct Window {
    bool full = false;
    Vec2 a, b;

    bool contains(const Vec2& d) const {
        if (full) return true;
        return cross(a, d).sign() >= 0 && cross(d, b).sign() >= 0;
    }
    /// Intersection with a sweep of span at most pi; nullopt when empty or a single ray.
    std::optional<Window> meet(const Window& o) const {
        if (full) return o;
        std::optional<Vec2> start, end;
        if (o.contains(a)) start = a;
        else if (contains(o.a)) start = o.a;
        if (o.contains(b)) end = b;
        else if (contains(o.b)) end = o.b;
        if (!start || !end) return std::nullopt;
        const int c = cross(*start, *end).sign();
        if (c < 0) return std::nullopt;
        if (c == 0 && dot(*start, *end).sign() > 0) return std::nullopt;
        return Window{false, *start, *end};
    }
};

struct VecHash {
    std::size_t operator()(const Vec2& v) const {
        std::size_t h = std::hash<CycElt>{}(v.x);
        return h ^ (std::hash<CycElt>{}(v.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

inline double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(px - ax - t * dx, py - ay - t * dy);
}

/// Marked points of a piece hit strictly inside the whole segment.
inline void record_hits(const SurfaceDef& s, const std::vector<TracePiece>& pieces,
                        const std::vector<std::vector<Vec2>>& marked_by_poly, std::vector<SurfacePoint>& out) {
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const TracePiece& pc = pieces[k];
        const Vec2 d = pc.to - pc.from;
        for (const Vec2& m : marked_by_poly[static_cast<std::size_t>(pc.poly)]) {
            if (!cross(d, m - pc.from).is_zero()) continue;
            if (dot(m - pc.from, d).sign() < 0 || dot(m - pc.to, d).sign() > 0) continue;
            if ((k == 0 && m == pc.from) || (k + 1 == pieces.size() && m == pc.to)) continue;
            out.push_back(canonicalize(s, pc.poly, m));
        }
    }
    std::sort(out.begin(), out.end(), point_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace detail

/// Every straight segment from p to q of length at most radius * 2 (the
/// circumscribed diameter) whose interior avoids the cone points. Polygon
/// copies are unfolded in the plane around p, each carrying the window of
/// directions from p that reach it through the edges crossed so far; a copy
/// of q inside the window is a candidate, confirmed by an exact trace. A
/// cone point p roots one unfolding per corner, so every prong is covered.
/// Output is sorted by length, then holonomy, then start copy.
inline std::vector<DevelopedSegment> enumerate_segments(const SurfaceDef& s, const SurfacePoint& p_in,
                                                        const SurfacePoint& q_in, const Rational& radius,
                                                        const EnumerateOptions& opt = {}) {
    if (radius <= 0) throw DomainError("radius must be positive");
    const SurfacePoint p = canonicalize(s, p_in.polygon, p_in.position);
    const SurfacePoint q = canonicalize(s, q_in.polygon, q_in.position);
    const std::vector<SurfacePoint> p_copies = copies(s, p.polygon, p.position);
    const std::vector<SurfacePoint> q_copies = copies(s, q.polygon, q.position);
    const CycElt rho2 = s.constant(4 * radius * radius);
    const double rho_f = 2.0 * radius.get_d();

    struct Node {
        int poly;
        Vec2 offset;  // local point x sits at x + offset - p in the unfolded plane
        detail::Window window;
        int skip_edge;  // edge we entered through
    };
    struct Root {
        SurfacePoint start;
        Node node;
    };
    std::vector<Root> roots;
    const bool at_vertex = is_cone_point(s, p);
    if (at_vertex) {
        for (const auto& c : p_copies) {
            const int k = s.locate(c.polygon, c.position).index;
            const Vec2& v = s.vertex(c.polygon, k);
            roots.push_back({c, {c.polygon, Vec2::zero(s.field) - v,
                                 {false, s.vertex(c.polygon, k + 1) - v, s.vertex(c.polygon, k - 1) - v}, -1}});
        }
    } else {
        const SurfacePoint& r = p_copies.at(static_cast<std::size_t>(opt.root_copy) % p_copies.size());
        roots.push_back({r, {r.polygon, Vec2::zero(s.field) - r.position, {true, {}, {}}, -1}});
    }

    const MarkedPointSet marked = weierstrass_points(s);
    std::vector<std::vector<Vec2>> marked_by_poly(static_cast<std::size_t>(s.polygon_count()));
    for (const auto* set : {&marked.weierstrass, &marked.cone})
        for (const auto& m : *set)
            for (const auto& c : copies(s, m.polygon, m.position))
                marked_by_poly[static_cast<std::size_t>(c.polygon)].push_back(c.position);

    std::vector<DevelopedSegment> out;
    std::size_t nodes = 0;
    for (const Root& root : roots) {
        std::unordered_set<Vec2, detail::VecHash> found;
        std::vector<Node> stack{root.node};
        while (!stack.empty()) {
            const Node cur = std::move(stack.back());
            stack.pop_back();
            if (++nodes > opt.max_copies) throw VerificationError("unfolding exceeded copy bound");
            for (const auto& qc : q_copies) {
                if (qc.polygon != cur.poly) continue;
                Vec2 h = qc.position + cur.offset;
                if (h.is_zero() || compare(norm_sq(h), rho2) > 0 || !cur.window.contains(h)) continue;
                if (!found.insert(h).second) continue;
                TraceResult tr = trace(s, root.start.polygon, root.start.position, h);
                if (tr.hit_vertex || !(canonicalize(s, tr.poly, tr.end) == q)) continue;
                DevelopedSegment seg;
                seg.holonomy = std::move(h);
                seg.length_sq = norm_sq(seg.holonomy);
                seg.start_poly = root.start.polygon;
                seg.start_pos = root.start.position;
                seg.path = std::move(tr.crossings);
                seg.pieces = std::move(tr.pieces);
                detail::record_hits(s, seg.pieces, marked_by_poly, seg.passes_through);
                out.push_back(std::move(seg));
            }
            for (int e = 0; e < s.sides(cur.poly); ++e) {
                if (e == cur.skip_edge) continue;
                const Vec2 a = s.vertex(cur.poly, e) + cur.offset;
                const Vec2 b = s.vertex(cur.poly, e + 1) + cur.offset;
                if (a.is_zero() || b.is_zero()) continue;  // edge through p itself
                const auto [ax, ay] = a.shadow();
                const auto [bx, by] = b.shadow();
                if (detail::segment_distance(0.0, 0.0, ax, ay, bx, by) > rho_f + 1e-9) continue;
                auto w = cur.window.meet(detail::Window{false, a, b});
                if (!w) continue;
                const EdgeRef er{cur.poly, e};
                stack.push_back({s.partner(er).poly, cur.offset - s.translation(er), std::move(*w), s.partner(er).edge});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const DevelopedSegment& a, const DevelopedSegment& b) {
        if (int c = compare(a.length_sq, b.length_sq)) return c < 0;
        if (int c = compare_xy(a.holonomy, b.holonomy)) return c < 0;
        if (a.start_poly != b.start_poly) return a.start_poly < b.start_poly;
        return compare_xy(a.start_pos, b.start_pos) < 0;
    });
    return out;
}

/// True when the segment's interior meets one of the given points.
inline bool hits_any(const DevelopedSegment& seg, const std::vector<SurfacePoint>& pts) {
    for (const auto& x : seg.passes_through)
        if (std::find(pts.begin(), pts.end(), x) != pts.end()) return true;
    return false;
}

enum class TriangleVertex { Right, PiOverN, Obtuse };

inline const char* to_string(TriangleVertex v) {
    switch (v) {
        case TriangleVertex::Right: return "right";
        case TriangleVertex::PiOverN: return "pi/n";
        case TriangleVertex::Obtuse: return "(n-2)pi/2n";
    }
    return "?";
}

/// Right triangle with angles pi/2, pi/n, (n-2)pi/(2n): center, an edge
/// midpoint and a vertex of the polygon. Its unfolding is the surface.
struct TriangleModel {
    int n = 0;
    std::map<TriangleVertex, Rational> angles;  // multiples of pi
    std::map<TriangleVertex, std::vector<SurfacePoint>> vertex_preimages;
};

inline TriangleModel triangle_model(const SurfaceDef& s) {
    TriangleModel t;
    t.n = s.n;
    t.angles[TriangleVertex::Right] = Rational(1, 2);
    t.angles[TriangleVertex::PiOverN] = make_rational(1, s.n);
    t.angles[TriangleVertex::Obtuse] = make_rational(s.n - 2, 2 * s.n);
    for (int p = 0; p < s.polygon_count(); ++p) {
        Vec2 c = Vec2::zero(s.field);
        for (int j = 0; j < s.sides(p); ++j) c = c + s.vertex(p, j);
        c = make_rational(1, s.sides(p)) * c;
        t.vertex_preimages[TriangleVertex::PiOverN].push_back(canonicalize(s, p, c));
        for (int j = 0; j < s.sides(p); ++j) {
            const Vec2 mid = Rational(1, 2) * (s.vertex(p, j) + s.vertex(p, j + 1));
            t.vertex_preimages[TriangleVertex::Right].push_back(canonicalize(s, p, mid));
            t.vertex_preimages[TriangleVertex::Obtuse].push_back(canonicalize(s, p, s.vertex(p, j)));
        }
    }
    for (auto& [v, pts] : t.vertex_preimages) {
        std::sort(pts.begin(), pts.end(), point_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }
    return t;
}

struct TrianglePairReport {
    TriangleVertex a, b;
    bool blocked = false;
    std::vector<BlockingQuery> lifts;  // one per preimage pair
};

struct TriangleReport {
    TriangleModel model;
    std::vector<TrianglePairReport> pairs;  // every unordered vertex pair, self-pairs included
    std::vector<std::pair<TriangleVertex, TriangleVertex>> blocked;
};

/// Two triangle points are blocked iff every lift of the pair is blocked on
/// the surface: a trajectory between them lifts to a segment between some
/// preimages, so one unblocked preimage pair defeats any finite set.
inline TriangleReport triangle_blocked_pairs(int n) {
    const SurfaceDef s = build_surface(n);
    TriangleReport rep;
    rep.model = triangle_model(s);
    const TriangleVertex all[] = {TriangleVertex::Right, TriangleVertex::PiOverN, TriangleVertex::Obtuse};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            TrianglePairReport pr{all[i], all[j], true, {}};
            for (const auto& x : rep.model.vertex_preimages.at(all[i]))
                for (const auto& y : rep.model.vertex_preimages.at(all[j])) {
                    pr.lifts.push_back(is_blocked(s, x, y));
                    pr.blocked = pr.blocked && pr.lifts.back().blocked;
                }
            if (pr.blocked) rep.blocked.emplace_back(pr.a, pr.b);
            rep.pairs.push_back(std::move(pr));
        }
    return rep;
}

}  // namespace ngon
