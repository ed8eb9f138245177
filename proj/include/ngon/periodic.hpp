/**
 * @file periodic.hpp
 * @brief Candidate line segments through P_n, the three-cylinder exclusion
 * configurations, and the classification of periodic points with exact
 * per-point certificates.
 */
#pragma once

#include "veech.hpp"

#include <sstream>

namespace ngon {

enum class SegmentKind { Horizontal, Rotated, Chord, Edge };

inline const char* to_string(SegmentKind k) {
    switch (k) {
        case SegmentKind::Horizontal: return "horizontal";
        case SegmentKind::Rotated: return "rotated";
        case SegmentKind::Chord: return "chord";
        case SegmentKind::Edge: return "edge";
    }
    return "?";
}

/// Straight segment from P_n, traced from a specific copy of its start.
struct CandidateSegment {
    SegmentKind kind = SegmentKind::Horizontal;
    SurfacePoint start;  // canonical P_n
    SurfacePoint end;    // canonical
    int start_poly = 0;
    Vec2 start_pos;
    Vec2 holonomy;
    std::vector<TracePiece> carrier;

    /// Point at parameter t in [0, 1] (canonical).
    SurfacePoint at(const SurfaceDef& s, const Rational& t) const {
        const TraceResult tr = trace(s, start_poly, start_pos, t * holonomy);
        if (tr.hit_vertex) throw VerificationError("segment meets a cone point");
        return canonicalize(s, tr.poly, tr.end);
    }
};

inline CandidateSegment make_segment(const SurfaceDef& s, SegmentKind kind, int poly, const Vec2& pos, const Vec2& h) {
    CandidateSegment seg;
    seg.kind = kind;
    seg.start = canonicalize(s, poly, pos);
    seg.start_poly = poly;
    seg.start_pos = pos;
    seg.holonomy = h;
    TraceResult tr = trace(s, poly, pos, h);
    if (tr.hit_vertex) throw VerificationError("candidate segment meets a cone point in its interior");
    seg.end = canonicalize(s, tr.poly, tr.end);
    seg.carrier = std::move(tr.pieces);
    return seg;
}

/// First boundary point of poly hit by the ray pos + t u, t > 0.
inline Vec2 ray_to_boundary(const SurfaceDef& s, int poly, const Vec2& pos, const Vec2& u) {
    std::optional<std::pair<CycElt, CycElt>> best;  // num / den
    for (int e = 0; e < s.sides(poly); ++e) {
        const Vec2& a = s.vertex(poly, e);
        const Vec2 w = s.vertex(poly, e + 1) - a;
        const CycElt c = cross(w, u);
        if (c.sign() >= 0) continue;
        CycElt num = cross(w, pos - a), den = -c;
        if (!best || (num * best->second - best->first * den).sign() < 0) best = {num, den};
    }
    if (!best) throw VerificationError("ray does not leave the polygon");
    return pos + (best->first * best->second.inverse()) * u;
}

/// n even: from the center along +x and along angle pi/n to the boundary.
/// n odd: horizontal chords of the second polygon between vertex pairs,
/// bottom to top, the last being its top edge; each runs left to right.
inline std::vector<CandidateSegment> candidate_segments(const SurfaceDef& s) {
    std::vector<CandidateSegment> out;
    if (s.even()) {
        const Vec2 c = s.origin();
        for (auto [kind, u] : {std::pair{SegmentKind::Horizontal, horizontal_direction(s)},
                               std::pair{SegmentKind::Rotated, rotated_direction(s)}}) {
            const Vec2 end = ray_to_boundary(s, 0, c, u);
            out.push_back(make_segment(s, kind, 0, c, end - c));
        }
        return out;
    }
    const int p = 1;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            if (i != j && s.vertex(p, i).y == s.vertex(p, j).y && compare(s.vertex(p, i).x, s.vertex(p, j).x) < 0)
                pairs.emplace_back(i, j);
    std::sort(pairs.begin(), pairs.end(), [&](auto& a, auto& b) {
        return compare(s.vertex(p, a.first).y, s.vertex(p, b.first).y) < 0;
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [i, j] = pairs[k];
        const Vec2& a = s.vertex(p, i);
        const bool edge = k + 1 == pairs.size();
        out.push_back(make_segment(s, edge ? SegmentKind::Edge : SegmentKind::Chord, p, a, s.vertex(p, j) - a));
    }
    return out;
}

/// Portion of a segment between consecutive level crossings of a
/// decomposition, all inside one cylinder.
struct Leg {
    CycElt t_begin, t_end;
    int cylinder = -1;
    int strip = -1;
    CycElt rise_begin;  // frame height above the strip's lower level at t_begin
    CycElt rise_end;
};

struct Itinerary {
    std::vector<Leg> legs;
    std::vector<CycElt> crossings;  // parameters in (0, 1) where a boundary is crossed
};

namespace detail {

inline std::vector<std::vector<CycElt>> strip_levels(const Decomposition& d, int polys) {
    std::vector<std::vector<CycElt>> lv(static_cast<std::size_t>(polys));
    for (const auto& st : d.strips) {
        lv[static_cast<std::size_t>(st.poly)].push_back(st.lo);
        lv[static_cast<std::size_t>(st.poly)].push_back(st.hi);
    }
    for (auto& l : lv) {
        std::sort(l.begin(), l.end(), cyc_less);
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return lv;
}

inline int strip_containing_level(const Decomposition& d, int poly, const CycElt& y) {
    for (std::size_t i = 0; i < d.strips.size(); ++i) {
        const Strip& st = d.strips[i];
        if (st.poly == poly && compare(st.lo, y) < 0 && compare(y, st.hi) < 0) return static_cast<int>(i);
    }
    throw VerificationError("level not strictly inside any strip");
}

}  // namespace detail

/// Splits a traced segment (pieces of start + t h) at the boundary levels of
/// a decomposition transverse to h.
inline Itinerary itinerary(const SurfaceDef& s, const Decomposition& d, const std::vector<TracePiece>& pieces, const Vec2& h) {
    const Vec2& u = d.direction;
    if (cross(u, h).is_zero()) throw DomainError("segment is parallel to the decomposition");
    const auto levels = detail::strip_levels(d, s.polygon_count());
    const CycElt inv_h2 = norm_sq(h).inverse();
    Itinerary it;
    CycElt t0 = s.constant(0);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const TracePiece& pc = pieces[k];
        const CycElt ya = frame_y(u, pc.from), yb = frame_y(u, pc.to);
        const CycElt dt = dot(pc.to - pc.from, h) * inv_h2;
        const CycElt t1 = t0 + dt;
        const bool up = compare(ya, yb) < 0;
        const CycElt& lo = up ? ya : yb;
        const CycElt& hi = up ? yb : ya;
        // levels strictly inside the piece, in travel order
        std::vector<CycElt> inside;
        for (const auto& L : levels[static_cast<std::size_t>(pc.poly)])
            if (compare(lo, L) < 0 && compare(L, hi) < 0) inside.push_back(L);
        if (!up) std::reverse(inside.begin(), inside.end());
        std::vector<CycElt> cuts{ya};
        cuts.insert(cuts.end(), inside.begin(), inside.end());
        cuts.push_back(yb);
        const CycElt inv_dy = (yb - ya).inverse();
        auto t_at = [&](const CycElt& y) { return t0 + (y - ya) * inv_dy * dt; };
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const CycElt mid = (cuts[c] + cuts[c + 1]) * Rational(1, 2);
            const int strip = detail::strip_containing_level(d, pc.poly, mid);
            const Strip& st = d.strips[static_cast<std::size_t>(strip)];
            Leg leg{c == 0 ? t0 : t_at(cuts[c]), c + 2 == cuts.size() ? t1 : t_at(cuts[c + 1]), st.cylinder, strip,
                    cuts[c] - st.lo, cuts[c + 1] - st.lo};
            if (c > 0) it.crossings.push_back(leg.t_begin);
            it.legs.push_back(std::move(leg));
        }
        // a level exactly at the end of a piece that the segment continues past
        if (k + 1 < pieces.size()) {
            const auto& l = levels[static_cast<std::size_t>(pc.poly)];
            if (std::binary_search(l.begin(), l.end(), yb, detail::cyc_less)) it.crossings.push_back(t1);
        }
        t0 = t1;
    }
    return it;
}

/// The three cylinders of the exclusion lemma for one candidate segment.
struct ExclusionConfig {
    int segment_index = -1;
    CandidateSegment segment;  // the candidate segment itself
    CandidateSegment working;  // segment the lemma is applied to (image under r^-1 s r for the odd edge)
    bool twisted = false;
    std::string twist_word;
    Rational angle1, angle2;  // cylinder directions, multiples of pi
    bool prescribed = true;   // first rule held
    std::string rule;         // which direction rule held
    std::shared_ptr<const Decomposition> d1, d2;
    int c1 = -1, c2 = -1, c3 = -1;
    CycElt t_r;  // parameter of R on the working segment
    SurfacePoint r;
    // condition checks, all exact
    bool oblique = false, in_c1 = false, in_c2_c3 = false, proper_projections = false, rational_ends = false;
    bool c2_c3_irrational = false;
    bool c2_c3_adjacent = false;

    bool holds() const {
        return oblique && in_c1 && in_c2_c3 && proper_projections && rational_ends && c2_c3_irrational;
    }
    std::string first_failure() const {
        if (!oblique) return "(1) segment parallel or perpendicular to a core curve";
        if (!in_c1) return "(2) segment interior meets the boundary of C1";
        if (!in_c2_c3) return "(3) segment does not cross from C2 to C3 exactly once";
        if (!proper_projections) return "(4) projection wraps around a core curve";
        if (!rational_ends) return "(5) endpoint with irrational height";
        if (!c2_c3_irrational) return "C2 and C3 heights have rational ratio";
        return "";
    }
};

inline Vec2 direction_at(const SurfaceDef& s, const Rational& angle) {
    return {cos_pi(angle, s.field), sin_pi(angle, s.field)};
}

namespace detail {

inline bool proper(const CycElt& proj, const CycElt& circumference) { return compare(abs(proj), circumference) < 0; }

/// Evaluates conditions (1)-(5) for a working segment and two directions.
inline ExclusionConfig try_config(const SurfaceDef& s, const CandidateSegment& w, const Rational& a1, const Rational& a2,
                                  std::map<Rational, std::shared_ptr<const Decomposition>>& cache) {
    auto get = [&](const Rational& a) -> std::shared_ptr<const Decomposition> {
        auto it = cache.find(a);
        if (it != cache.end()) return it->second;
        std::shared_ptr<const Decomposition> d;
        try {
            d = std::make_shared<const Decomposition>(decompose(s, direction_at(s, a)));
        } catch (const AperiodicDirection&) {
        }
        cache[a] = d;
        return d;
    };
    ExclusionConfig cfg;
    cfg.working = w;
    cfg.angle1 = a1;
    cfg.angle2 = a2;
    cfg.d1 = get(a1);
    cfg.d2 = get(a2);
    if (!cfg.d1 || !cfg.d2) return cfg;
    const Vec2& h = w.holonomy;
    const Vec2& u1 = cfg.d1->direction;
    const Vec2& u2 = cfg.d2->direction;
    cfg.oblique = !cross(u1, h).is_zero() && !dot(u1, h).is_zero() && !cross(u2, h).is_zero() && !dot(u2, h).is_zero();
    if (!cfg.oblique) return cfg;

    const Itinerary i1 = itinerary(s, *cfg.d1, w.carrier, h);
    const Itinerary i2 = itinerary(s, *cfg.d2, w.carrier, h);
    cfg.c1 = i1.legs.front().cylinder;
    cfg.in_c1 = i1.crossings.empty();
    if (i2.crossings.size() == 1) {
        cfg.t_r = i2.crossings.front();
        cfg.c2 = i2.legs.front().cylinder;
        cfg.c3 = i2.legs.back().cylinder;
        bool split_ok = cfg.c2 != cfg.c3;
        for (const auto& leg : i2.legs) {
            const bool before = compare(leg.t_end, cfg.t_r) <= 0;
            if (leg.cylinder != (before ? cfg.c2 : cfg.c3)) split_ok = false;
        }
        cfg.in_c2_c3 = split_ok && cfg.t_r.sign() > 0 && compare(cfg.t_r, s.constant(1)) < 0;
    }
    if (!cfg.in_c1 || !cfg.in_c2_c3) return cfg;

    const auto& C1 = cfg.d1->cylinders[static_cast<std::size_t>(cfg.c1)];
    const auto& C2 = cfg.d2->cylinders[static_cast<std::size_t>(cfg.c2)];
    const auto& C3 = cfg.d2->cylinders[static_cast<std::size_t>(cfg.c3)];
    const CycElt x2 = dot(u2, h);
    cfg.proper_projections = proper(dot(u1, h), C1.circumference) && proper(cfg.t_r * x2, C2.circumference) &&
                             proper((s.constant(1) - cfg.t_r) * x2, C3.circumference);

    auto rational_rise = [](const CycElt& rise, const Cylinder& c) { return rational_quotient(rise, c.height).has_value(); };
    cfg.rational_ends = rational_rise(i1.legs.front().rise_begin, C1) && rational_rise(i1.legs.back().rise_end, C1) &&
                        rational_rise(i2.legs.front().rise_begin, C2) && rational_rise(i2.legs.back().rise_end, C3);
    cfg.c2_c3_irrational = !height_ratio_rational(C2, C3).has_value();
    cfg.c2_c3_adjacent = share_boundary(C2, C3);
    return cfg;
}

/// Angle of a direction vector as a rational multiple of pi, when it is one
/// of the grid angles (j pi / n for even n, j pi / (2n) for odd n).
inline int angle_grid(const SurfaceDef& s) { return s.even() ? s.n : 2 * s.n; }

inline Rational segment_angle(const SurfaceDef& s, const Vec2& h) {
    const int g = angle_grid(s);
    for (int j = 0; j < 2 * g; ++j) {
        const Rational a = make_rational(j, g);
        const Vec2 u = direction_at(s, a);
        if (parallel(u, h) && dot(u, h).sign() > 0) return a;
    }
    throw DomainError("segment direction is not a multiple of pi/(2n)");
}

}  // namespace detail

/// Builds the exclusion configuration for a candidate segment of angle th:
/// C1 at th - pi/n and C2, C3 at th - 2pi/n, then the mirror image, then
/// th -+ 3pi/n for C2, C3 (needed when the segment ends at a vertex: at
/// th - 2pi/n it spans one cylinder from boundary to boundary). The odd-n
/// top edge is cut at its midpoint Q' and sheared by r^-1 s r, keeping C1 at
/// -pi/n. A brute-force search over grid angles is the last resort; the
/// result records which rule held.
inline ExclusionConfig exclusion_config(const SurfaceDef& s, const CandidateSegment& seg, const VeechAction* act = nullptr) {
    std::map<Rational, std::shared_ptr<const Decomposition>> cache;
    CandidateSegment work = seg;
    bool twisted = false;
    std::string word_text;
    struct Rule {
        Rational a1, a2;
        const char* name;
    };
    std::vector<Rule> rules;
    const Rational step = make_rational(1, s.n);
    auto norm = [](Rational a) {
        while (a < 0) a += 1;
        while (a >= 1) a -= 1;
        return a;
    };
    if (seg.kind == SegmentKind::Edge) {
        std::unique_ptr<VeechAction> own;
        if (!act) {
            own = std::make_unique<VeechAction>(s);
            act = own.get();
        }
        // P Q' is the first half of the edge
        const Vec2 half = Rational(1, 2) * seg.holonomy;
        const CandidateSegment pq_prime = make_segment(s, seg.kind, seg.start_poly, seg.start_pos, half);
        const GroupWord t = make_word(s, act->gens(), {~0, 1, 0});
        word_text = t.str(act->gens());
        const Vec2 th = t.matrix * half;
        // locate the image of the midpoint of P Q', then run back to P
        const SurfacePoint xm = act->act(t, canonicalize(s, seg.start_poly, seg.start_pos + Rational(1, 2) * half));
        const TraceResult back = trace(s, xm.polygon, xm.position, Rational(-1, 2) * th);
        if (back.hit_vertex || s.locate(back.poly, back.end).kind != Location::Vertex)
            throw VerificationError("sheared edge segment does not start at the cone point");
        work = make_segment(s, seg.kind, back.poly, back.end, th);
        if (!(work.end == act->act(t, pq_prime.end))) throw VerificationError("sheared segment misses the image of Q'");
        twisted = true;
        rules.push_back({norm(-step), norm(Rational(1, 2) - step), "C1 -pi/n, C2/C3 pi/2-pi/n"});
        rules.push_back({norm(-step), norm(step), "C1 -pi/n, C2/C3 pi/n"});
    } else {
        const Rational th = detail::segment_angle(s, seg.holonomy);
        rules.push_back({norm(th - step), norm(th - 2 * step), "C1 -pi/n, C2/C3 -2pi/n"});
        rules.push_back({norm(th + step), norm(th + 2 * step), "C1 +pi/n, C2/C3 +2pi/n"});
        rules.push_back({norm(th - step), norm(th - 3 * step), "C1 -pi/n, C2/C3 -3pi/n"});
        rules.push_back({norm(th + step), norm(th + 3 * step), "C1 +pi/n, C2/C3 +3pi/n"});
    }
    auto finish = [&](ExclusionConfig cfg, std::string rule, bool pres) {
        cfg.segment = seg;
        cfg.twisted = twisted;
        cfg.twist_word = word_text;
        cfg.prescribed = pres;
        cfg.rule = std::move(rule);
        const TraceResult tr = trace(s, work.start_poly, work.start_pos, cfg.t_r * work.holonomy);
        cfg.r = canonicalize(s, tr.poly, tr.end);
        return cfg;
    };
    ExclusionConfig first;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        ExclusionConfig cfg = detail::try_config(s, work, rules[i].a1, rules[i].a2, cache);
        if (cfg.holds()) return finish(std::move(cfg), rules[i].name, i == 0);
        if (i == 0) first = std::move(cfg);
    }
    const int g = detail::angle_grid(s);
    for (int j1 = 0; j1 < g; ++j1)
        for (int j2 = 0; j2 < g; ++j2) {
            if (j1 == j2) continue;
            ExclusionConfig cfg = detail::try_config(s, work, make_rational(j1, g), make_rational(j2, g), cache);
            if (cfg.holds()) return finish(std::move(cfg), "search", false);
        }
    throw VerificationError("no exclusion configuration: " + first.first_failure());
}

enum class Verdict { Periodic, NotPeriodic, Undetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Periodic: return "periodic";
        case Verdict::NotPeriodic: return "not-periodic";
        case Verdict::Undetermined: return "undetermined";
    }
    return "?";
}

struct PointCertificate {
    SurfacePoint point;
    Verdict verdict = Verdict::Undetermined;
    std::string evidence;
    // not-periodic evidence
    int segment_index = -1;
    Rational t;
    int cylinder_role = 0;  // 1, 2 or 3
    int cylinder_id = -1;
    Rational cylinder_angle;
    // periodic evidence
    std::size_t orbit_size = 0;
};

/// Certificate for the point at parameter t (0 < t < 1) of the candidate
/// segment: an exact irrational height in C1, C2 or C3 rules it out. On the
/// odd top edge, t = 1/2 is the Weierstrass midpoint Q' and t > 1/2 is
/// reduced to 1 - t by the hyperelliptic involution.
inline PointCertificate interior_point_excluded(const SurfaceDef& s, const ExclusionConfig& cfg, const Rational& t) {
    if (!(t > 0 && t < 1)) throw DomainError("parameter must satisfy 0 < t < 1");
    PointCertificate cert;
    cert.segment_index = cfg.segment_index;
    cert.t = t;
    cert.point = cfg.segment.at(s, t);
    Rational w = t;
    std::string via;
    if (cfg.twisted) {
        if (t == Rational(1, 2)) {
            cert.verdict = Verdict::Periodic;
            cert.evidence = "midpoint Q' of the edge segment is a Weierstrass point";
            return cert;
        }
        Rational half_t = t;
        if (t > Rational(1, 2)) {
            half_t = 1 - t;
            via = "hyperelliptic image at t=" + to_string(half_t) + ", ";
        }
        w = 2 * half_t;
        via += "image under " + cfg.twist_word + ", ";
    }
    const SurfacePoint x = cfg.working.at(s, w);
    const CycElt tw = s.constant(w);
    struct Role {
        int role;
        const Decomposition* d;
        int c;
        Rational angle;
    };
    const bool before_r = compare(tw, cfg.t_r) <= 0;
    const Role roles[] = {{1, cfg.d1.get(), cfg.c1, cfg.angle1},
                          {before_r ? 2 : 3, cfg.d2.get(), before_r ? cfg.c2 : cfg.c3, cfg.angle2}};
    for (const auto& r : roles) {
        if (!rational_height(s, *r.d, r.c, x).has_value()) {
            cert.verdict = Verdict::NotPeriodic;
            cert.cylinder_role = r.role;
            cert.cylinder_id = r.c;
            cert.cylinder_angle = r.angle;
            cert.evidence = via + "irrational height in C" + std::to_string(r.role) + " (direction " +
                            to_string(r.angle) + " pi, cylinder " + std::to_string(r.c) + ")";
            return cert;
        }
    }
    cert.verdict = Verdict::Undetermined;
    cert.evidence = via + "rational height in every cylinder of the configuration";
    return cert;
}

struct Classification {
    std::vector<PointCertificate> periodic;      // sorted canonically
    std::vector<PointCertificate> not_periodic;  // segment, then t
    std::vector<PointCertificate> undetermined;
    std::vector<CandidateSegment> segments;
    std::vector<ExclusionConfig> configs;
    int word_bound = 0;
    int denominator_bound = 0;
};

/// Periodic certificates for every non-singular Weierstrass point (finite
/// generator orbit within word_bound, inside the Weierstrass set) and
/// exclusion certificates for every parameter a/b, b <= denominator_bound,
/// interior to a candidate segment.
inline Classification classify(const SurfaceDef& s, int word_bound = 10, int denominator_bound = 12) {
    if (word_bound < 1 || denominator_bound < 1) throw DomainError("bounds must be >= 1");
    Classification out;
    out.word_bound = word_bound;
    out.denominator_bound = denominator_bound;
    const VeechAction act(s);
    const MarkedPointSet marked = weierstrass_points(s);
    for (const auto& p : marked.weierstrass) {
        if (is_cone_point(s, p)) continue;
        PointCertificate cert;
        cert.point = p;
        const OrbitResult o = orbit(act, p, word_bound);
        cert.orbit_size = o.points.size();
        bool inside = true;
        for (const auto& q : o.points) inside = inside && marked.is_weierstrass(q);
        if (o.status == OrbitStatus::FiniteWithinBound && inside) {
            cert.verdict = Verdict::Periodic;
            cert.evidence = "finite orbit of " + std::to_string(o.points.size()) + " Weierstrass points";
            out.periodic.push_back(cert);
        } else {
            cert.evidence = "orbit not closed within word bound";
            out.undetermined.push_back(cert);
        }
    }
    out.segments = candidate_segments(s);
    for (std::size_t i = 0; i < out.segments.size(); ++i) {
        ExclusionConfig cfg = exclusion_config(s, out.segments[i], &act);
        cfg.segment_index = static_cast<int>(i);
        out.configs.push_back(cfg);
        for (long b = 2; b <= denominator_bound; ++b)
            for (long a = 1; a < b; ++a) {
                if (gcd_long(a, b) != 1) continue;
                PointCertificate cert = interior_point_excluded(s, cfg, make_rational(a, b));
                if (cert.verdict == Verdict::NotPeriodic) out.not_periodic.push_back(std::move(cert));
                else if (cert.verdict == Verdict::Undetermined) out.undetermined.push_back(std::move(cert));
            }
    }
    return out;
}

}  // namespace ngon
