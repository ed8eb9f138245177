/**
 * @file io.hpp
 * @brief JSON and SVG renderings of surfaces, decompositions, certificates
 * and segments. Key order is fixed, so output is byte-identical across runs.
 */
#pragma once

#include "blocking.hpp"
#include "periodic.hpp"
#include "sine_ratio.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>

namespace ngon::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Float rounded to 12 significant digits.
inline double approx(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const CycElt& x) {
    Json j;
    if (auto r = x.is_rational()) j["exact"] = to_string(*r);
    else j["exact"] = x.str();
    j["approx"] = approx(x.to_double());
    return j;
}

inline Json to_json(const Vec2& v) {
    Json j;
    j["x"] = to_json(v.x);
    j["y"] = to_json(v.y);
    return j;
}

inline Json to_json(const SurfacePoint& p) {
    Json j;
    j["polygon"] = p.polygon;
    j["x"] = to_json(p.position.x);
    j["y"] = to_json(p.position.y);
    return j;
}

inline Json to_json(const std::vector<SurfacePoint>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(to_json(p));
    return a;
}

inline Json envelope(const std::string& kind) {
    Json j;
    j["schema"] = "ngon/" + kind + "/v" + std::to_string(kSchemaVersion);
    return j;
}

inline Json surface_json(const SurfaceDef& s) {
    Json j = envelope("surface");
    j["n"] = s.n;
    j["family"] = s.even() ? "regular n-gon" : "double n-gon";
    j["field_conductor"] = s.field->conductor();
    j["genus"] = genus(s);
    j["area"] = to_json(s.area());
    Json polys = Json::array();
    for (int p = 0; p < s.polygon_count(); ++p) {
        Json verts = Json::array();
        for (int k = 0; k < s.sides(p); ++k) verts.push_back(to_json(s.vertex(p, k)));
        polys.push_back(verts);
    }
    j["polygons"] = polys;
    Json glue = Json::array();
    for (int p = 0; p < s.polygon_count(); ++p)
        for (int e = 0; e < s.sides(p); ++e) {
            const EdgeRef er{p, e};
            const EdgeRef q = s.partner(er);
            if (std::pair{q.poly, q.edge} < std::pair{p, e}) continue;
            Json g;
            g["edge"] = {p, e};
            g["partner"] = {q.poly, q.edge};
            g["translation"] = to_json(s.translation(er));
            glue.push_back(g);
        }
    j["gluings"] = glue;
    Json cones = Json::array();
    for (std::size_t c = 0; c < s.cone_classes.size(); ++c) {
        Json cj;
        cj["class"] = c;
        cj["angle_over_pi"] = to_json(s.cone_classes[c].angle);
        Json mem = Json::array();
        for (const auto& v : s.cone_classes[c].members) mem.push_back({v.poly, v.vertex});
        cj["corners"] = mem;
        cj["point"] = to_json(cone_point(s, static_cast<int>(c)));
        cones.push_back(cj);
    }
    j["cone_classes"] = cones;
    const MarkedPointSet m = weierstrass_points(s);
    j["weierstrass_points"] = to_json(m.weierstrass);
    j["distinguished_point"] = to_json(distinguished_point(s));
    return j;
}

inline Json decomposition_json(const SurfaceDef& s, const Decomposition& d) {
    Json j = envelope("decomposition");
    j["n"] = s.n;
    j["direction"] = to_json(d.direction);
    j["direction_scale"] = to_json(d.scale);
    Json cyl = Json::array();
    for (const auto& c : d.cylinders) {
        Json cj;
        cj["id"] = c.id;
        cj["height"] = to_json(c.height);
        cj["circumference"] = to_json(c.circumference);
        cj["modulus"] = to_json(c.modulus);
        cj["strips"] = c.strips.size();
        cyl.push_back(cj);
    }
    j["cylinders"] = cyl;
    Json ratios = Json::array();
    for (std::size_t a = 0; a < d.cylinders.size(); ++a)
        for (std::size_t b = a + 1; b < d.cylinders.size(); ++b) {
            Json r;
            r["pair"] = {a, b};
            const auto q = height_ratio_rational(d.cylinders[a], d.cylinders[b]);
            r["ratio"] = q ? Json(to_string(*q)) : Json("irrational");
            r["share_boundary"] = share_boundary(d.cylinders[a], d.cylinders[b]);
            ratios.push_back(r);
        }
    j["height_ratios"] = ratios;
    Json sc = Json::array();
    for (const auto& c : d.saddle_connections) {
        Json cj;
        cj["start_class"] = c.start_class;
        cj["end_class"] = c.end_class;
        cj["holonomy"] = to_json(c.holonomy);
        sc.push_back(cj);
    }
    j["saddle_connections"] = sc;
    return j;
}

inline Json orbit_json(const SurfaceDef& s, const SurfacePoint& p, const OrbitResult& o) {
    Json j = envelope("orbit");
    j["n"] = s.n;
    j["point"] = to_json(p);
    j["word_bound"] = o.word_bound;
    j["status"] = o.status == OrbitStatus::FiniteWithinBound ? "finite-within-bound" : "exceeded-bound";
    j["depth_reached"] = o.depth_reached;
    j["size"] = o.points.size();
    j["points"] = to_json(o.points);
    return j;
}

inline Json certificate_json(const PointCertificate& c) {
    Json j;
    j["point"] = to_json(c.point);
    j["verdict"] = to_string(c.verdict);
    j["evidence"] = c.evidence;
    if (c.verdict == Verdict::Periodic && c.orbit_size > 0) j["orbit_size"] = c.orbit_size;
    if (c.segment_index >= 0) {
        j["segment"] = c.segment_index;
        j["t"] = to_string(c.t);
    }
    if (c.cylinder_role > 0) {
        j["cylinder"] = "C" + std::to_string(c.cylinder_role);
        j["cylinder_id"] = c.cylinder_id;
        j["cylinder_angle_over_pi"] = to_string(c.cylinder_angle);
    }
    return j;
}

inline Json segment_json(const CandidateSegment& seg) {
    Json j;
    j["kind"] = to_string(seg.kind);
    j["start"] = to_json(seg.start);
    j["end"] = to_json(seg.end);
    j["holonomy"] = to_json(seg.holonomy);
    j["pieces"] = seg.carrier.size();
    return j;
}

inline Json config_json(const ExclusionConfig& c) {
    Json j;
    j["segment"] = c.segment_index;
    j["rule"] = c.rule;
    j["prescribed_directions"] = c.prescribed;
    if (c.twisted) j["twist"] = c.twist_word;
    j["C1"] = {{"angle_over_pi", to_string(c.angle1)}, {"cylinder", c.c1}};
    j["C2"] = {{"angle_over_pi", to_string(c.angle2)}, {"cylinder", c.c2}};
    j["C3"] = {{"angle_over_pi", to_string(c.angle2)}, {"cylinder", c.c3}};
    j["R"] = to_json(c.r);
    j["t_R"] = to_json(c.t_r);
    j["conditions"] = {{"oblique", c.oblique},
                       {"inside_C1", c.in_c1},
                       {"crosses_C2_C3_once", c.in_c2_c3},
                       {"proper_projections", c.proper_projections},
                       {"rational_endpoints", c.rational_ends},
                       {"C2_C3_ratio_irrational", c.c2_c3_irrational}};
    return j;
}

inline Json classification_json(const SurfaceDef& s, const Classification& c) {
    Json j = envelope("classification");
    j["n"] = s.n;
    j["word_bound"] = c.word_bound;
    j["denominator_bound"] = c.denominator_bound;
    Json per = Json::array();
    for (const auto& p : c.periodic) per.push_back(certificate_json(p));
    j["periodic"] = per;
    j["periodic_count"] = c.periodic.size();
    Json segs = Json::array();
    for (const auto& g : c.segments) segs.push_back(segment_json(g));
    j["candidate_segments"] = segs;
    Json cfgs = Json::array();
    for (const auto& g : c.configs) cfgs.push_back(config_json(g));
    j["exclusion_configs"] = cfgs;
    Json np = Json::array();
    for (const auto& p : c.not_periodic) np.push_back(certificate_json(p));
    j["not_periodic_samples"] = np;
    Json un = Json::array();
    for (const auto& p : c.undetermined) un.push_back(certificate_json(p));
    j["undetermined"] = un;
    return j;
}

inline Json blocking_json(const SurfaceDef& s, const BlockingQuery& b) {
    Json j = envelope("blocking");
    j["n"] = s.n;
    j["p"] = to_json(b.p);
    j["q"] = to_json(b.q);
    j["verdict"] = b.blocked ? "blocked" : "not-blocked";
    j["reason"] = b.reason;
    if (b.blocked) j["blocking_set"] = to_json(b.blocking_set);
    return j;
}

inline Json developed_json(const DevelopedSegment& g) {
    Json j;
    j["holonomy"] = to_json(g.holonomy);
    j["length_sq"] = to_json(g.length_sq);
    j["start"] = {{"polygon", g.start_poly}, {"position", to_json(g.start_pos)}};
    Json path = Json::array();
    for (const auto& e : g.path) path.push_back({e.poly, e.edge});
    j["crossings"] = path;
    j["passes_through"] = to_json(g.passes_through);
    return j;
}

inline Json segments_json(const SurfaceDef& s, const SurfacePoint& p, const SurfacePoint& q, const Rational& radius,
                          const std::vector<DevelopedSegment>& segs) {
    Json j = envelope("segments");
    j["n"] = s.n;
    j["p"] = to_json(p);
    j["q"] = to_json(q);
    j["radius_diameters"] = to_string(radius);
    const BlockingQuery b = is_blocked(s, p, q);
    std::size_t hit = 0;
    Json a = Json::array();
    for (const auto& g : segs) {
        a.push_back(developed_json(g));
        hit += hits_any(g, b.blocking_set) ? 1 : 0;
    }
    j["count"] = segs.size();
    j["blocked"] = b.blocked;
    if (b.blocked) j["hitting_blocking_set"] = hit;
    j["segments"] = a;
    return j;
}

inline Json triangle_json(const TriangleReport& r) {
    Json j = envelope("triangle");
    j["n"] = r.model.n;
    Json ang;
    for (const auto& [v, a] : r.model.angles) ang[to_string(v)] = to_string(a);
    j["angles_over_pi"] = ang;
    Json pre;
    for (const auto& [v, pts] : r.model.vertex_preimages) pre[to_string(v)] = to_json(pts);
    j["vertex_preimages"] = pre;
    Json pairs = Json::array();
    for (const auto& pr : r.pairs) {
        Json pj;
        pj["pair"] = {to_string(pr.a), to_string(pr.b)};
        pj["blocked"] = pr.blocked;
        Json lifts = Json::array();
        for (const auto& q : pr.lifts) lifts.push_back({{"blocked", q.blocked}, {"reason", q.reason}});
        pj["lifts"] = lifts;
        pairs.push_back(pj);
    }
    j["pairs"] = pairs;
    Json bl = Json::array();
    for (const auto& [a, b] : r.blocked) bl.push_back({to_string(a), to_string(b)});
    j["blocked_pairs"] = bl;
    return j;
}

inline Json section4_json(const Section4Report& r) {
    Json j = envelope("section4");
    j["n_max"] = r.n_max;
    Json e = Json::array();
    for (const auto& x : r.entries) {
        Json ej;
        ej["N"] = x.N;
        ej["tested"] = x.excluded;
        ej["reason"] = x.reason;
        if (x.excluded) {
            ej["nonzero_terms"] = x.nonzero_terms;
            ej["four_term_shape"] = x.four_term_shape;
        }
        e.push_back(ej);
    }
    j["entries"] = e;
    j["all_excluded"] = r.all_excluded();
    return j;
}

/// SVG of the polygons with marked points and, optionally, developed
/// segments drawn from their start copy.
inline std::string svg(const SurfaceDef& s, const std::vector<DevelopedSegment>& segs = {},
                       const std::vector<CandidateSegment>& candidates = {}) {
    // polygons side by side, unit circumradius, y up
    const double gap = 2.4;
    auto px = [&](int poly, double x) { return 1.2 + poly * gap + x; };
    auto py = [](double y) { return 1.2 - y; };
    double extent = 0;
    for (const auto& g : segs) extent = std::max(extent, std::sqrt(g.length_sq.to_double()));
    const double w = 2.4 * s.polygon_count() + 2 * extent, h = 2.4 + 2 * extent;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt12(-extent) << ' ' << fmt12(-extent) << ' '
      << fmt12(w) << ' ' << fmt12(h) << "\" width=\"" << fmt12(200 * w) << "\" height=\"" << fmt12(200 * h) << "\">\n";
    for (int p = 0; p < s.polygon_count(); ++p) {
        o << "  <polygon fill=\"#eef\" stroke=\"#336\" stroke-width=\"0.01\" points=\"";
        for (int k = 0; k < s.sides(p); ++k) {
            const auto [x, y] = s.vertex(p, k).shadow();
            o << (k ? " " : "") << fmt12(px(p, x)) << ',' << fmt12(py(y));
        }
        o << "\"/>\n";
    }
    auto dot_at = [&](const SurfacePoint& q, const char* color) {
        for (const auto& c : copies(s, q.polygon, q.position)) {
            const auto [x, y] = c.position.shadow();
            o << "  <circle cx=\"" << fmt12(px(c.polygon, x)) << "\" cy=\"" << fmt12(py(y))
              << "\" r=\"0.03\" fill=\"" << color << "\"/>\n";
        }
    };
    const MarkedPointSet m = weierstrass_points(s);
    for (const auto& q : m.weierstrass) dot_at(q, "#c00");
    for (const auto& q : m.cone)
        if (!m.is_weierstrass(q)) dot_at(q, "#000");
    for (const auto& c : candidates)
        for (const auto& pc : c.carrier) {
            const auto [x0, y0] = pc.from.shadow();
            const auto [x1, y1] = pc.to.shadow();
            o << "  <line x1=\"" << fmt12(px(pc.poly, x0)) << "\" y1=\"" << fmt12(py(y0)) << "\" x2=\""
              << fmt12(px(pc.poly, x1)) << "\" y2=\"" << fmt12(py(y1))
              << "\" stroke=\"#080\" stroke-width=\"0.015\" stroke-dasharray=\"0.05,0.03\"/>\n";
        }
    for (const auto& g : segs) {
        // developed plane: pieces laid end to end from the start copy
        auto [x, y] = g.start_pos.shadow();
        o << "  <polyline fill=\"none\" stroke=\"#a60\" stroke-width=\"0.008\" points=\"" << fmt12(px(g.start_poly, x))
          << ',' << fmt12(py(y));
        for (const auto& pc : g.pieces) {
            const auto [dx, dy] = (pc.to - pc.from).shadow();
            x += dx;
            y += dy;
            o << ' ' << fmt12(px(g.start_poly, x)) << ',' << fmt12(py(y));
        }
        o << "\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace ngon::io
