/**
 * @file veech.hpp
 * @brief Veech-group generators, their affine action on surface points,
 * orbits, and reduction of directions to the cusp directions.
 *
 * Two realizations of the action are provided. Words act generator by
 * generator: rotations act on polygon coordinates and the parabolic
 * generators act as multi-twists in their cylinder decompositions. A bare
 * matrix acts by developing: the image of a polygon center is found among
 * the straight-line images of the center-to-vertex spokes, and every other
 * point follows by flowing from that image. Translation automorphisms are
 * trivial, so both give the same map.
 */
#pragma once

#include "cylinders.hpp"

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_set>

namespace ngon {

struct Generator {
    std::string name;
    Mat2 matrix;
};

inline Mat2 rotation_matrix(const SurfaceDef& s, const Rational& turns_of_pi) {
    CycElt c = cos_pi(turns_of_pi, s.field), sn = sin_pi(turns_of_pi, s.field);
    return {c, -sn, sn, c};
}

/// 2 cot(pi/n).
inline CycElt twist_parameter(const SurfaceDef& s) {
    const Rational a = make_rational(1, s.n);
    return Rational(2) * cos_pi(a, s.field) * sin_pi(a, s.field).inverse();
}

inline Mat2 shear_matrix(const SurfaceDef& s) {
    return {s.constant(1), twist_parameter(s), s.constant(0), s.constant(1)};
}

/// n even: r^2, s, r s r^-1. n odd: r, s.
inline std::vector<Generator> generators(const SurfaceDef& s) {
    const Mat2 r = rotation_matrix(s, make_rational(1, s.n));
    const Mat2 sh = shear_matrix(s);
    if (s.even()) return {{"r2", r * r}, {"s", sh}, {"rsr", r * sh * r.inverse()}};
    return {{"r", r}, {"s", sh}};
}

/// Word in the generators; letter k >= 0 is generator k, ~k its inverse.
/// The word g1 g2 ... acts as g1 after g2 after ...
struct GroupWord {
    std::vector<int> letters;
    Mat2 matrix;

    static GroupWord identity(const SurfaceDef& s) { return {{}, Mat2::identity(s.field)}; }

    std::size_t length() const { return letters.size(); }

    std::string str(const std::vector<Generator>& gens) const {
        if (letters.empty()) return "id";
        std::string out;
        for (int l : letters) {
            if (!out.empty()) out += ' ';
            out += gens[static_cast<std::size_t>(l >= 0 ? l : ~l)].name;
            if (l < 0) out += "^-1";
        }
        return out;
    }
};

inline Mat2 letter_matrix(const std::vector<Generator>& gens, int l) {
    const Mat2& m = gens[static_cast<std::size_t>(l >= 0 ? l : ~l)].matrix;
    return l >= 0 ? m : m.inverse();
}

inline GroupWord make_word(const SurfaceDef& s, const std::vector<Generator>& gens, std::vector<int> letters) {
    GroupWord w = GroupWord::identity(s);
    for (int l : letters) w.matrix = w.matrix * letter_matrix(gens, l);
    w.letters = std::move(letters);
    return w;
}

/// Parses "s r2^-1 rsr" style words against the generator names.
inline GroupWord parse_word(const SurfaceDef& s, const std::vector<Generator>& gens, const std::string& text) {
    std::vector<int> letters;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '*') {
            ++i;
            continue;
        }
        std::size_t j = text.find_first_of(" *", i);
        if (j == std::string::npos) j = text.size();
        std::string tok = text.substr(i, j - i);
        i = j;
        bool inv = false;
        if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
            inv = true;
            tok.resize(tok.size() - 3);
        }
        if (tok == "id") continue;
        int found = -1;
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (gens[g].name == tok) found = static_cast<int>(g);
        if (found < 0) throw DomainError("unknown generator '" + tok + "'");
        letters.push_back(inv ? ~found : found);
    }
    return make_word(s, gens, std::move(letters));
}

/// Precomputed data for acting with words on one surface.
class VeechAction {
public:
    explicit VeechAction(const SurfaceDef& s) : s_(s), gens_(generators(s)), t_(twist_parameter(s)) {
        horizontal_ = std::make_unique<Decomposition>(decompose(s, horizontal_direction(s)));
        twist_counts(*horizontal_, h_counts_);
        if (s.even()) {
            rotated_ = std::make_unique<Decomposition>(decompose(s, rotated_direction(s)));
            twist_counts(*rotated_, r_counts_);
        }
    }

    const SurfaceDef& surface() const { return s_; }
    const std::vector<Generator>& gens() const { return gens_; }
    const Decomposition& horizontal() const { return *horizontal_; }
    const Decomposition& rotated() const { return *rotated_; }
    /// Number of Dehn twists the shear performs in each cylinder.
    const std::vector<Integer>& twist_counts_horizontal() const { return h_counts_; }
    const std::vector<Integer>& twist_counts_rotated() const { return r_counts_; }

    SurfacePoint apply_letter(int letter, const SurfacePoint& p) const {
        const int g = letter >= 0 ? letter : ~letter;
        const int sign = letter >= 0 ? 1 : -1;
        const std::string& name = gens_[static_cast<std::size_t>(g)].name;
        if (name == "r") {
            // rotation by +-pi/n exchanges the two polygons
            const Mat2& m = letter >= 0 ? gens_[0].matrix : rot_inverse();
            return canonicalize(s_, 1 - p.polygon, m * p.position);
        }
        if (name == "r2") {
            const Mat2 m = letter >= 0 ? gens_[0].matrix : rot_inverse();
            return canonicalize(s_, p.polygon, m * p.position);
        }
        if (name == "s") return twist(*horizontal_, h_counts_, sign, p);
        return twist(*rotated_, r_counts_, sign, p);
    }

    SurfacePoint act(const GroupWord& w, const SurfacePoint& p) const {
        SurfacePoint q = canonicalize(s_, p);
        for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) q = apply_letter(*it, q);
        return q;
    }

private:
    const Mat2& rot_inverse() const {
        if (!rot_inv_) rot_inv_ = std::make_shared<Mat2>(gens_[0].matrix.inverse());
        return *rot_inv_;
    }

    void twist_counts(const Decomposition& d, std::vector<Integer>& out) const {
        for (const auto& c : d.cylinders) {
            auto k = (t_ * c.modulus).is_rational();
            if (!k || k->get_den() != 1 || *k <= 0)
                throw VerificationError("shear is not a multi-twist in cylinder " + std::to_string(c.id));
            out.push_back(k->get_num());
        }
    }

    /// Multi-twist fixing every boundary: a point at height fraction f in a
    /// cylinder with k twists moves frac(sign k f) circumferences along u.
    SurfacePoint twist(const Decomposition& d, const std::vector<Integer>& counts, int sign, const SurfacePoint& p) const {
        for (const auto& cp : copies(s_, p.polygon, p.position)) {
            const CycElt y = frame_y(d.direction, cp.position);
            for (const auto& st : d.strips) {
                if (st.poly != cp.polygon || compare(st.lo, y) > 0 || compare(y, st.hi) > 0) continue;
                const Cylinder& c = d.cylinders[static_cast<std::size_t>(st.cylinder)];
                const CycElt k = s_.constant(Rational(counts[static_cast<std::size_t>(st.cylinder)] * sign));
                const CycElt kf = k * (y - st.lo) * c.height.inverse();
                const CycElt shift = kf - s_.constant(Rational(kf.floor()));
                if (shift.is_zero()) return canonicalize(s_, p);
                const TraceResult tr = trace(s_, cp.polygon, cp.position, (shift * c.circumference) * d.direction);
                if (tr.hit_vertex) throw VerificationError("twist leaf ran into a cone point");
                return canonicalize(s_, tr.poly, tr.end);
            }
        }
        throw VerificationError("point not found in any cylinder");
    }

    const SurfaceDef& s_;
    std::vector<Generator> gens_;
    CycElt t_;
    std::unique_ptr<Decomposition> horizontal_, rotated_;
    std::vector<Integer> h_counts_, r_counts_;
    mutable std::shared_ptr<Mat2> rot_inv_;
};

/// Images of the first polygon's center under affine maps with derivative m:
/// every prong in the direction m (center - v0) is traced back, and a
/// candidate survives if all spokes m (v_j - center) end exactly on cone
/// points. Empty when m is not realized by an affine map.
inline std::vector<SurfacePoint> center_images(const SurfaceDef& s, const Mat2& m) {
    const Vec2 c0 = s.origin();
    const Vec2 back = m * (c0 - s.vertex(0, 0));
    std::vector<SurfacePoint> out;
    for (const auto& corner : entering_corners(s, back)) {
        const TraceResult tr = trace(s, corner.poly, s.vertex(corner.poly, corner.vertex), back);
        if (tr.hit_vertex) continue;
        const SurfacePoint z = canonicalize(s, tr.poly, tr.end);
        if (is_cone_point(s, z)) continue;
        bool ok = true;
        for (int j = 0; ok && j < s.sides(0); ++j) {
            const TraceResult spoke = trace(s, z.polygon, z.position, m * (s.vertex(0, j) - c0));
            ok = !spoke.hit_vertex && s.locate(spoke.poly, spoke.end).kind == Location::Vertex;
        }
        if (ok && std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
    }
    return out;
}

/// Point image under the affine map with derivative m, by development from
/// the image of the polygon center.
inline SurfacePoint act(const SurfaceDef& s, const Mat2& m, const SurfacePoint& p) {
    auto anchors = center_images(s, m);
    if (anchors.empty()) throw VerificationError("matrix is not the derivative of an affine map of the surface");
    if (anchors.size() > 1) throw VerificationError("affine map with this derivative is not unique");
    SurfacePoint z = anchors.front();
    const Vec2 c0 = s.origin();
    if (p.polygon != 0) {
        // reach the other polygon's center through the copy glued on edge 0
        const Vec2 hop = -s.translation({0, 0});
        const TraceResult tr = trace(s, z.polygon, z.position, m * hop);
        if (tr.hit_vertex) throw VerificationError("development hit a cone point");
        z = {tr.poly, tr.end, false};
    }
    const TraceResult tr = trace(s, z.polygon, z.position, m * (p.position - c0));
    if (tr.hit_vertex && !(tr.fraction == s.constant(1)))
        throw VerificationError("development hit a cone point");
    return canonicalize(s, tr.poly, tr.end);
}

enum class OrbitStatus { FiniteWithinBound, ExceededBound };

struct OrbitResult {
    std::vector<SurfacePoint> points;  // sorted canonically
    OrbitStatus status = OrbitStatus::ExceededBound;
    int word_bound = 0;
    int depth_reached = 0;
};

/// Breadth-first closure under the generators. Finite when no new point
/// appears at depth word_bound + 1.
inline OrbitResult orbit(const VeechAction& act, const SurfacePoint& p, int word_bound) {
    const SurfaceDef& s = act.surface();
    if (word_bound < 1) throw DomainError("word bound must be >= 1");
    if (is_cone_point(s, p)) throw DomainError("orbit of a cone point is not defined here");
    struct Less {
        bool operator()(const SurfacePoint& a, const SurfacePoint& b) const { return point_less(a, b); }
    };
    std::set<SurfacePoint, Less> seen;
    std::vector<SurfacePoint> frontier{canonicalize(s, p)};
    seen.insert(frontier.front());
    OrbitResult res;
    res.word_bound = word_bound;
    for (int depth = 1; depth <= word_bound + 1 && !frontier.empty(); ++depth) {
        std::vector<SurfacePoint> next;
        for (const auto& q : frontier)
            for (int g = 0; g < static_cast<int>(act.gens().size()); ++g) {
                SurfacePoint img = act.apply_letter(g, q);
                if (seen.insert(img).second) next.push_back(img);
            }
        if (!next.empty()) res.depth_reached = depth;
        if (depth == word_bound + 1 && !next.empty()) {
            frontier.clear();
            res.status = OrbitStatus::ExceededBound;
            res.points.assign(seen.begin(), seen.end());
            return res;
        }
        frontier = std::move(next);
    }
    res.status = OrbitStatus::FiniteWithinBound;
    res.points.assign(seen.begin(), seen.end());
    return res;
}

struct DirectionReduction {
    GroupWord word;
    int cusp = 0;  // 0 horizontal, 1 angle pi/n
};

/// Searches words of length <= max_length (breadth first, each direction
/// line visited once, at most max_nodes lines) for g with g v parallel to a
/// cusp direction.
inline std::optional<DirectionReduction> reduce_direction(const SurfaceDef& s, const Vec2& v, int max_length = 14,
                                                          std::size_t max_nodes = 20000) {
    if (v.is_zero()) throw DomainError("direction must be nonzero");
    const auto gens = generators(s);
    std::vector<Vec2> cusps{horizontal_direction(s)};
    if (s.even()) cusps.push_back(rotated_direction(s));
    auto cusp_of = [&](const Vec2& w) -> int {
        for (std::size_t c = 0; c < cusps.size(); ++c)
            if (parallel(w, cusps[c])) return static_cast<int>(c);
        return -1;
    };
    // Direction lines keyed by slope (vertical lines share one key).
    auto key = [&](const Vec2& w) -> std::optional<CycElt> {
        if (w.x.is_zero()) return std::nullopt;
        return w.y * w.x.inverse();
    };
    std::unordered_set<CycElt> seen;
    bool vertical_seen = false;
    auto visit = [&](const Vec2& w) {
        auto k = key(w);
        if (!k) {
            if (vertical_seen) return false;
            return vertical_seen = true;
        }
        return seen.insert(*k).second;
    };
    struct Node {
        Vec2 dir;
        std::vector<int> letters;  // applied so far; word = reverse order
    };
    std::deque<Node> queue{{v, {}}};
    visit(v);
    std::vector<int> alphabet;
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
        alphabet.push_back(g);
        alphabet.push_back(~g);
    }
    std::vector<Mat2> mats;
    for (int l : alphabet) mats.push_back(letter_matrix(gens, l));
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (int c = cusp_of(cur.dir); c >= 0) {
            std::vector<int> word(cur.letters.rbegin(), cur.letters.rend());
            return DirectionReduction{make_word(s, gens, std::move(word)), c};
        }
        if (static_cast<int>(cur.letters.size()) >= max_length) continue;
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            if (seen.size() >= max_nodes) break;
            Vec2 w = mats[a] * cur.dir;
            if (!visit(w)) continue;
            Node nxt{std::move(w), cur.letters};
            nxt.letters.push_back(alphabet[a]);
            queue.push_back(std::move(nxt));
        }
    }
    return std::nullopt;
}

}  // namespace ngon
