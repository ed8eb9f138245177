#include "ngon/periodic.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ngon;

namespace {

// Height fraction of a point of the working segment predicted by the
// itinerary: linear in t from the leg that contains it.
std::optional<Rational> itinerary_fraction(const SurfaceDef& s, const Decomposition& d, const CandidateSegment& w,
                                           const Rational& t) {
    const Itinerary it = itinerary(s, d, w.carrier, w.holonomy);
    const CycElt tt = s.constant(t);
    for (const auto& leg : it.legs) {
        if (compare(leg.t_begin, tt) <= 0 && compare(tt, leg.t_end) <= 0) {
            const auto& c = d.cylinders[static_cast<std::size_t>(leg.cylinder)];
            const CycElt frac_num = leg.rise_begin + (tt - leg.t_begin) * cross(d.direction, w.holonomy);
            return rational_quotient(frac_num, c.height);
        }
    }
    return std::nullopt;
}

}  // namespace

TEST(Periodic, CandidateSegmentInventory) {
    for (int n = 5; n <= 16; ++n) {
        if (n == 6) continue;
        const SurfaceDef s = build_surface(n);
        const auto segs = candidate_segments(s);
        const MarkedPointSet m = weierstrass_points(s);
        ASSERT_EQ(segs.size(), s.even() ? 2u : static_cast<std::size_t>((n - 1) / 2)) << n;
        for (const auto& seg : segs) {
            EXPECT_TRUE(seg.start == distinguished_point(s)) << n;
            EXPECT_TRUE(m.is_weierstrass(seg.end) || m.is_cone(seg.end)) << n;
        }
        if (!s.even()) {
            EXPECT_EQ(segs.back().kind, SegmentKind::Edge);
            // the edge's midpoint is a Weierstrass point
            EXPECT_TRUE(m.is_weierstrass(segs.back().at(s, Rational(1, 2))));
        }
    }
}

TEST(Periodic, SegmentEndsDependOnResidue) {
    // center-to-vertex exactly when the leaf meets a vertex
    for (int n : {8, 10, 12, 14}) {
        const SurfaceDef s = build_surface(n);
        const auto segs = candidate_segments(s);
        EXPECT_EQ(is_cone_point(s, segs[0].end), n % 4 == 0) << n;
        EXPECT_EQ(is_cone_point(s, segs[1].end), n % 4 == 2) << n;
    }
}

TEST(Periodic, ConfigurationsSatisfyAllConditions) {
    for (int n = 5; n <= 14; ++n) {
        if (n == 6) continue;
        const SurfaceDef s = build_surface(n);
        for (const auto& seg : candidate_segments(s)) {
            const ExclusionConfig cfg = exclusion_config(s, seg);
            EXPECT_TRUE(cfg.holds()) << n << " " << cfg.first_failure();
            EXPECT_TRUE(cfg.c2_c3_adjacent) << n;
            EXPECT_NE(cfg.rule, "search") << n;
            EXPECT_EQ(cfg.twisted, seg.kind == SegmentKind::Edge);
            // C1 sits at -pi/n from the segment (from the horizontal for the edge)
            const Rational th = seg.kind == SegmentKind::Edge ? Rational(0) : detail::segment_angle(s, seg.holonomy);
            Rational diff = th - cfg.angle1 - make_rational(1, n);
            while (diff < 0) diff += 1;
            while (diff >= 1) diff -= 1;
            EXPECT_EQ(diff, 0) << n;
            // segments ending at a midpoint use the unmodified rule
            if (!is_cone_point(s, seg.end)) { EXPECT_TRUE(cfg.prescribed) << n; }
            if (seg.kind == SegmentKind::Chord) { EXPECT_TRUE(cfg.prescribed) << n; }
        }
    }
}

TEST(Periodic, EndpointHeightsRationalByDirectLocation) {
    // independent of the itinerary: locate P, R and Q and ask the cylinders
    for (int n : {5, 7, 8, 10, 12}) {
        const SurfaceDef s = build_surface(n);
        for (const auto& seg : candidate_segments(s)) {
            const ExclusionConfig cfg = exclusion_config(s, seg);
            const SurfacePoint q = cfg.working.end;
            EXPECT_TRUE(rational_height(s, *cfg.d1, cfg.c1, q).has_value()) << n;
            EXPECT_TRUE(rational_height(s, *cfg.d2, cfg.c3, q).has_value()) << n;
            EXPECT_TRUE(rational_height(s, *cfg.d2, cfg.c2, cfg.r).has_value()) << n;
            EXPECT_TRUE(rational_height(s, *cfg.d2, cfg.c3, cfg.r).has_value()) << n;
            // R has irrational height in C1: the only rational point of PR is P
            EXPECT_FALSE(rational_height(s, *cfg.d1, cfg.c1, cfg.r).has_value()) << n;
        }
    }
}

TEST(Periodic, ItineraryAgreesWithDirectHeights) {
    for (int n : {5, 8, 10}) {
        const SurfaceDef s = build_surface(n);
        for (const auto& seg : candidate_segments(s)) {
            const ExclusionConfig cfg = exclusion_config(s, seg);
            for (const Rational& t : {make_rational(1, 3), make_rational(3, 4), make_rational(5, 7)}) {
                const SurfacePoint x = cfg.working.at(s, t);
                EXPECT_EQ(itinerary_fraction(s, *cfg.d1, cfg.working, t), rational_height(s, *cfg.d1, cfg.c1, x));
                const bool before = compare(s.constant(t), cfg.t_r) <= 0;
                EXPECT_EQ(itinerary_fraction(s, *cfg.d2, cfg.working, t),
                          rational_height(s, *cfg.d2, before ? cfg.c2 : cfg.c3, x));
            }
        }
    }
}

TEST(Periodic, CrossingParameterMatchesFloatGeometry) {
    // oracle: sample the segment in floating point and watch the C2/C3 label change
    const SurfaceDef s = build_surface(8);
    for (const auto& seg : candidate_segments(s)) {
        const ExclusionConfig cfg = exclusion_config(s, seg);
        const double tr = cfg.t_r.to_double();
        for (double t : {tr - 1e-3, tr + 1e-3}) {
            const Rational tq(static_cast<long>(std::lround(t * 1e6)), 1000000L);
            const SurfacePoint x = cfg.working.at(s, tq);
            const auto ids = cylinders_containing(s, *cfg.d2, x);
            ASSERT_EQ(ids.size(), 1u);
            EXPECT_EQ(ids[0], t < tr ? cfg.c2 : cfg.c3);
        }
    }
}

TEST(Periodic, InteriorSamplesExcluded) {
    for (int n : {5, 7, 8, 9, 10, 12}) {
        const SurfaceDef s = build_surface(n);
        for (const auto& seg : candidate_segments(s)) {
            const ExclusionConfig cfg = exclusion_config(s, seg);
            for (long b = 2; b <= 12; ++b)
                for (long a = 1; a < b; ++a) {
                    if (gcd_long(a, b) != 1) continue;
                    const Rational t = make_rational(a, b);
                    const PointCertificate c = interior_point_excluded(s, cfg, t);
                    if (seg.kind == SegmentKind::Edge && t == Rational(1, 2)) {
                        EXPECT_EQ(c.verdict, Verdict::Periodic);
                        continue;
                    }
                    ASSERT_EQ(c.verdict, Verdict::NotPeriodic) << n << " t=" << t;
                    EXPECT_GE(c.cylinder_role, 1);
                    EXPECT_LE(c.cylinder_role, 3);
                }
        }
    }
}

TEST(Periodic, EdgeUsesInvolutionPastMidpoint) {
    const SurfaceDef s = build_surface(7);
    const auto segs = candidate_segments(s);
    const ExclusionConfig cfg = exclusion_config(s, segs.back());
    const PointCertificate lo = interior_point_excluded(s, cfg, make_rational(1, 5));
    const PointCertificate hi = interior_point_excluded(s, cfg, make_rational(4, 5));
    EXPECT_EQ(hi.verdict, Verdict::NotPeriodic);
    EXPECT_NE(hi.evidence.find("hyperelliptic"), std::string::npos);
    EXPECT_TRUE(hyperelliptic_image(s, lo.point) == hi.point);
    EXPECT_EQ(lo.cylinder_role, hi.cylinder_role);
}

TEST(Periodic, RejectsEndpointParameters) {
    const SurfaceDef s = build_surface(8);
    const ExclusionConfig cfg = exclusion_config(s, candidate_segments(s)[0]);
    EXPECT_THROW(interior_point_excluded(s, cfg, Rational(0)), DomainError);
    EXPECT_THROW(interior_point_excluded(s, cfg, Rational(1)), DomainError);
}

TEST(Periodic, ClassificationCounts) {
    // periodic points are the non-singular Weierstrass points
    const std::pair<int, std::size_t> expected[] = {{5, 5}, {7, 7}, {8, 5}, {10, 6}, {12, 7}};
    for (auto [n, count] : expected) {
        const SurfaceDef s = build_surface(n);
        const Classification c = classify(s, 10, 12);
        EXPECT_EQ(c.periodic.size(), count) << n;
        EXPECT_TRUE(c.undetermined.empty()) << n;
        EXPECT_FALSE(c.not_periodic.empty()) << n;
        for (const auto& p : c.periodic) {
            EXPECT_FALSE(is_cone_point(s, p.point));
            EXPECT_GE(p.orbit_size, 1u);
        }
    }
}

TEST(Periodic, NonSingularWeierstrassCountFormula) {
    for (int n = 5; n <= 14; ++n) {
        if (n == 6) continue;
        const SurfaceDef s = build_surface(n);
        const MarkedPointSet m = weierstrass_points(s);
        std::size_t nonsingular = 0;
        for (const auto& p : m.weierstrass) nonsingular += is_cone_point(s, p) ? 0 : 1;
        const std::size_t g = static_cast<std::size_t>(genus(s));
        const std::size_t expected = n % 4 == 2 ? 2 * g + 2 : 2 * g + 1;
        EXPECT_EQ(nonsingular, expected) << n;
    }
}
