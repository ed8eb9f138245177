// Shared helpers for the test executables.
#pragma once

#include "ngon/surface.hpp"

#include <random>

namespace ngon::testkit {

/// Random non-cone point with small rational coordinates: interior of a
/// polygon, or an edge point when on_edge is set.
inline SurfacePoint random_point(const SurfaceDef& s, std::mt19937& rng, bool on_edge = false) {
    std::uniform_int_distribution<int> coord(-40, 40);
    std::uniform_int_distribution<int> poly(0, s.polygon_count() - 1);
    std::uniform_int_distribution<int> edge(0, s.n - 1);
    std::uniform_int_distribution<int> frac(1, 36);
    for (;;) {
        const int k = poly(rng);
        Vec2 pos;
        if (on_edge) {
            const int e = edge(rng);
            const Rational t = make_rational(frac(rng), 37);
            pos = s.vertex(k, e) + t * (s.vertex(k, e + 1) - s.vertex(k, e));
        } else {
            pos = Vec2(s.constant(make_rational(coord(rng), 50)), s.constant(make_rational(coord(rng), 50)));
            if (!s.contains(k, pos)) continue;
        }
        const SurfacePoint p = canonicalize(s, k, pos);
        if (!is_cone_point(s, p)) return p;
    }
}

}  // namespace ngon::testkit
