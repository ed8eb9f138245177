/**
 * @file develop.hpp
 * @brief Straight-line flow on the glued polygons: exact traces across
 * edge identifications, stopping at cone points.
 */
#pragma once

#include "surface.hpp"

#include <optional>
#include <vector>

namespace ngon {

/// Portion of a trajectory inside one polygon.
struct TracePiece {
    int poly = 0;
    Vec2 from;
    Vec2 to;
};

struct TraceResult {
    int poly = 0;
    Vec2 end;
    bool hit_vertex = false;  // stopped early (or at t = 0) on a cone point
    int vertex = -1;          // index of the vertex hit inside poly
    CycElt fraction;          // fraction of the holonomy actually travelled
    std::vector<TracePiece> pieces;
    std::vector<EdgeRef> crossings;  // edges left, in order

    SurfacePoint endpoint() const { return {poly, end, false}; }
};

/// True when the ray from vertex k of poly in direction r starts inside the
/// corner of the polygon. The corner is half open: a ray along the outgoing
/// edge counts, a ray back along the incoming edge does not (it belongs to
/// the neighbouring polygon's corner), so every prong is seen once.
inline bool direction_enters(const SurfaceDef& s, int poly, int k, const Vec2& r) {
    const Vec2& v = s.vertex(poly, k);
    return cross(s.vertex(poly, k + 1) - v, r).sign() >= 0 && cross(r, s.vertex(poly, k - 1) - v).sign() > 0;
}

/// Flows from (poly, pos) along the holonomy vector h. The trace stops at
/// the end of h or on reaching a vertex, whichever comes first. A start on
/// an edge with h pointing outward crosses to the partner first; a start at a
/// vertex must point into the polygon's corner or it stops immediately.
inline TraceResult trace(const SurfaceDef& s, int poly, Vec2 pos, const Vec2& h, std::size_t max_crossings = 100000) {
    if (!s.contains(poly, pos)) throw DomainError("trace start outside polygon");
    TraceResult res;
    res.fraction = s.constant(0);
    if (h.is_zero()) {
        res.poly = poly;
        res.end = pos;
        return res;
    }
    const CycElt one = s.constant(1);
    Vec2 r = h;
    for (;;) {
        const int k = s.sides(poly);
        int best = -1;
        CycElt best_num, best_den;  // t = num / den, den > 0
        for (int e = 0; e < k; ++e) {
            const Vec2& a = s.vertex(poly, e);
            const Vec2 w = s.vertex(poly, e + 1) - a;
            CycElt c = cross(w, r);
            if (c.sign() >= 0) continue;
            CycElt num = cross(w, pos - a);
            CycElt den = -c;
            if (best < 0 || (num * best_den - best_num * den).sign() < 0) {
                best = e;
                best_num = std::move(num);
                best_den = std::move(den);
            }
        }
        if (best < 0) throw VerificationError("trace found no exit edge");
        if ((best_num - best_den).sign() >= 0) {
            // the remaining holonomy ends inside the closed polygon
            Vec2 end = pos + r;
            res.pieces.push_back({poly, pos, end});
            res.poly = poly;
            res.end = std::move(end);
            res.fraction = one;
            return res;
        }
        const CycElt t = best_num * best_den.inverse();
        const Vec2 exit = pos + t * r;
        res.fraction += t * (one - res.fraction);
        if (!(exit == pos)) res.pieces.push_back({poly, pos, exit});
        for (int corner : {best, best + 1}) {
            if (exit == s.vertex(poly, corner)) {
                res.poly = poly;
                res.end = exit;
                res.hit_vertex = true;
                res.vertex = static_cast<int>(floor_mod(corner, k));
                return res;
            }
        }
        const EdgeRef e{poly, best};
        res.crossings.push_back(e);
        if (res.crossings.size() > max_crossings) throw VerificationError("trace exceeded crossing bound");
        pos = exit + s.translation(e);
        poly = s.partner(e).poly;
        r = (one - t) * r;
    }
}

/// Corners (copies of cone points) from which direction r enters a polygon.
inline std::vector<VertexRef> entering_corners(const SurfaceDef& s, const Vec2& r) {
    std::vector<VertexRef> out;
    for (int p = 0; p < s.polygon_count(); ++p)
        for (int k = 0; k < s.sides(p); ++k)
            if (direction_enters(s, p, k, r)) out.push_back({p, k});
    return out;
}

/// Points z such that some translation automorphism carries the center of
/// the first polygon to z. Candidates come from tracing back from every
/// cone-point corner along (center - vertex 0); each is kept only if every
/// vertex of the first polygon lands exactly on a cone point. The group is
/// trivial iff the result is just the center itself.
inline std::vector<SurfacePoint> translation_automorphism_images(const SurfaceDef& s) {
    const Vec2 c0 = s.origin();
    const Vec2 back = c0 - s.vertex(0, 0);
    std::vector<SurfacePoint> out;
    for (const auto& corner : entering_corners(s, back)) {
        TraceResult tr = trace(s, corner.poly, s.vertex(corner.poly, corner.vertex), back);
        if (tr.hit_vertex) continue;
        const SurfacePoint z = canonicalize(s, tr.poly, tr.end);
        bool ok = !is_cone_point(s, z);
        for (int j = 0; ok && j < s.sides(0); ++j) {
            TraceResult out_j = trace(s, z.polygon, z.position, s.vertex(0, j) - c0);
            ok = !out_j.hit_vertex && s.locate(out_j.poly, out_j.end).kind == Location::Vertex;
        }
        if (ok && std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
    }
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

}  // namespace ngon
