/**
 * @file cli.hpp
 * @brief Command-line front end. Exit codes: 0 success, 1 domain or usage
 * error, 2 verification failure.
 */
#pragma once

#include "io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <random>
#include <regex>

namespace ngon::cli {

/// Parses "a/b", "-3", or "[c0,c1,...]" (sum of c_k zeta^k in the surface field).
inline CycElt parse_value(const SurfaceDef& s, const std::string& text) {
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw DomainError("unterminated coefficient list: " + text);
        CycElt x(s.field);
        std::stringstream ss(text.substr(1, text.size() - 2));
        std::string tok;
        long k = 0;
        while (std::getline(ss, tok, ',')) {
            x += parse_rational(tok) * CycElt::zeta(s.field, k);
            ++k;
        }
        if (!x.is_real()) throw DomainError("coordinate " + text + " is not real");
        return x;
    }
    return s.constant(parse_rational(text));
}

/// Point specs: center[:poly], cone:<k>, midpoint:<k>, vertex:<k>, or
/// poly:<id>;x=<value>;y=<value>. Edge and vertex indices run over all
/// polygons in order (k = poly * n + local index).
inline SurfacePoint parse_point(const SurfaceDef& s, const std::string& spec) {
    static const std::regex named(R"(^(center|cone|midpoint|vertex)(?::(-?\d+))?$)");
    static const std::regex explicit_pt(R"(^poly:(\d+);x=([^;]+);y=([^;]+)$)");
    std::smatch m;
    if (std::regex_match(spec, m, named)) {
        const std::string kind = m[1];
        const bool has_k = m[2].matched;
        const long k = has_k ? std::stol(m[2]) : 0;
        const long total = static_cast<long>(s.polygon_count()) * s.n;
        if (kind == "center") {
            if (k < 0 || k >= s.polygon_count()) throw DomainError("no polygon " + std::to_string(k));
            Vec2 c = Vec2::zero(s.field);
            for (int j = 0; j < s.sides(static_cast<int>(k)); ++j) c = c + s.vertex(static_cast<int>(k), j);
            return canonicalize(s, static_cast<int>(k), make_rational(1, s.n) * c);
        }
        if (!has_k) throw DomainError("point spec '" + spec + "' needs an index");
        if (kind == "cone") {
            if (k < 0 || k >= static_cast<long>(s.cone_classes.size())) throw DomainError("no cone class " + std::to_string(k));
            return cone_point(s, static_cast<int>(k));
        }
        if (k < 0 || k >= total) throw DomainError("index out of range in '" + spec + "'");
        const int poly = static_cast<int>(k / s.n), j = static_cast<int>(k % s.n);
        if (kind == "vertex") return canonicalize(s, poly, s.vertex(poly, j));
        return canonicalize(s, poly, Rational(1, 2) * (s.vertex(poly, j) + s.vertex(poly, j + 1)));
    }
    if (std::regex_match(spec, m, explicit_pt)) {
        const int poly = std::stoi(m[1]);
        if (poly >= s.polygon_count()) throw DomainError("no polygon " + std::string(m[1]));
        return canonicalize(s, poly, Vec2(parse_value(s, m[2]), parse_value(s, m[3])));
    }
    throw DomainError("unrecognised point spec '" + spec + "'");
}

/// horizontal, rotated, angle:<a/b> (multiple of pi), or x,y.
inline Vec2 parse_direction(const SurfaceDef& s, const std::string& text) {
    if (text == "horizontal") return horizontal_direction(s);
    if (text == "rotated") return rotated_direction(s);
    if (text.rfind("angle:", 0) == 0) {
        const Rational a = parse_rational(text.substr(6));
        if (s.field->conductor() % (2 * a.get_den().get_si()) != 0)
            throw DomainError("angle " + to_string(a) + " pi is not in the surface field");
        return {cos_pi(a, s.field), sin_pi(a, s.field)};
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw DomainError("direction must be horizontal, rotated, angle:<a/b> or x,y");
    Vec2 v(parse_value(s, text.substr(0, comma)), parse_value(s, text.substr(comma + 1)));
    if (v.is_zero()) throw DomainError("direction must be nonzero");
    return v;
}

/// n-range "a-b" or a single n; skips 6 and values below 5.
inline std::vector<int> parse_range(const std::string& text) {
    static const std::regex re(R"(^(\d+)(?:-(\d+))?$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw DomainError("n-range must look like 5-14 or 8");
    const int a = std::stoi(m[1]), b = m[2].matched ? std::stoi(m[2]) : a;
    if (a > b) throw DomainError("empty n-range " + text);
    std::vector<int> out;
    for (int n = a; n <= b; ++n)
        if (n >= 5 && n != 6) out.push_back(n);
    if (out.empty()) throw DomainError("n-range " + text + " contains no admissible n");
    return out;
}

namespace detail {

inline void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

inline std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

/// One line per check; returns false when any check fails.
inline bool verify_surface(int n, std::ostream& out) {
    const SurfaceDef s = build_surface(n);
    bool all = true;
    auto check = [&](const std::string& name, bool ok) {
        out << "n=" << n << ' ' << name << ": " << (ok ? "ok" : "FAIL") << '\n';
        all = all && ok;
    };
    const int g = genus(s);
    check("genus " + std::to_string(g), g == genus_formula(n) && gauss_bonnet_holds(s));
    const MarkedPointSet m = weierstrass_points(s);
    check("weierstrass count " + std::to_string(m.weierstrass.size()),
          m.weierstrass.size() == static_cast<std::size_t>(2 * g + 2));
    {
        std::mt19937 rng(static_cast<unsigned>(n));
        std::uniform_int_distribution<int> d(-40, 40);
        bool ok = true;
        int done = 0;
        while (done < 20) {
            const int poly = done % s.polygon_count();
            const Vec2 p(s.constant(make_rational(d(rng), 50)), s.constant(make_rational(d(rng), 50)));
            if (!s.contains(poly, p)) continue;
            const SurfacePoint a = canonicalize(s, poly, p);
            ok = ok && hyperelliptic_image(s, hyperelliptic_image(s, a)) == a;
            ++done;
        }
        for (const auto& w : m.weierstrass) ok = ok && hyperelliptic_image(s, w) == w;
        check("involution squared is identity", ok);
    }
    {
        bool ok = true;
        std::vector<Vec2> dirs{horizontal_direction(s)};
        if (s.even()) dirs.push_back(rotated_direction(s));
        for (const auto& u : dirs) {
            const Decomposition d = decompose(s, u);
            CycElt total(s.field);
            for (const auto& c : d.cylinders) total += c.height * c.circumference;
            ok = ok && total == d.scale * s.area();
        }
        check("area conserved by decompositions", ok);
    }
    {
        const auto hs = closed_form_heights(s, false);
        const Decomposition d = decompose(s, horizontal_direction(s));
        bool ok = hs.size() == d.cylinders.size();
        for (const auto& [k, h] : hs) {
            bool found = false;
            for (const auto& c : d.cylinders) found = found || c.height == h;
            ok = ok && found;
        }
        check("horizontal heights match closed form", ok);
    }
    {
        const auto gens = generators(s);
        bool ok = true;
        for (const auto& gen : gens) ok = ok && gen.matrix.det() == s.constant(1);
        for (std::size_t a = 0; a < gens.size(); ++a)
            for (std::size_t b = 0; b < gens.size(); ++b)
                ok = ok && (gens[a].matrix * gens[b].matrix).det() == s.constant(1);
        check("generator determinants are 1", ok);
    }
    {
        const auto imgs = translation_automorphism_images(s);
        check("translation automorphisms trivial", imgs.size() == 1 && imgs[0] == canonicalize(s, 0, s.origin()));
    }
    {
        const Classification c = classify(s, 10, 6);
        std::size_t expected = 0;
        for (const auto& w : m.weierstrass) expected += is_cone_point(s, w) ? 0 : 1;
        check("classification (" + std::to_string(c.periodic.size()) + " periodic, " +
                  std::to_string(c.not_periodic.size()) + " excluded samples)",
              c.periodic.size() == expected && c.undetermined.empty());
    }
    {
        const TriangleReport r = triangle_blocked_pairs(n);
        const bool ok = s.even() ? (r.blocked.size() == 1 && r.blocked[0].first == TriangleVertex::PiOverN &&
                                    r.blocked[0].second == TriangleVertex::PiOverN)
                                 : r.blocked.empty();
        check("triangle blocked pairs", ok);
    }
    return all;
}

}  // namespace detail

/// Runs the command line; output goes to out, diagnostics to err.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact computations on regular n-gon and double n-gon translation surfaces", "ngon"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    int n = 0;
    std::string out_path, svg_path, direction = "horizontal", point, p_spec, q_spec, format, range;
    int bound = 10, word_bound = 10, denom_bound = 12;
    long n_max = 45;
    std::string radius_text = "3";
    std::string alpha_text, beta_text;

    auto add_n = [&](CLI::App* c) { c->add_option("n", n, "polygon side count (n >= 5, n != 6)")->required(); };
    auto add_out = [&](CLI::App* c) { c->add_option("--out", out_path, "write output to a file instead of stdout"); };
    auto add_format = [&](CLI::App* c, const char* def) {
        format = def;
        c->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    };

    auto* c_surface = app.add_subcommand("surface", "polygons, gluings, cone points and Weierstrass points");
    add_n(c_surface);
    add_out(c_surface);
    c_surface->add_option("--svg", svg_path, "also write an SVG drawing");

    auto* c_cyl = app.add_subcommand("cylinders", "cylinder decomposition in a direction");
    add_n(c_cyl);
    add_out(c_cyl);
    c_cyl->add_option("--direction", direction, "horizontal | rotated | angle:<a/b> | x,y");

    auto* c_heights = app.add_subcommand("heights", "horizontal (and rotated) cylinder heights against the closed form");
    add_n(c_heights);
    add_out(c_heights);

    auto* c_sine = app.add_subcommand("sine-ratio", "is sin(pi a) / sin(pi b) rational?");
    c_sine->add_option("alpha", alpha_text, "a as a fraction, 0 < a <= b <= 1/2")->required();
    c_sine->add_option("beta", beta_text, "b as a fraction")->required();

    auto* c_s4 = app.add_subcommand("verify-section4", "exclude every odd N below N_max from the four-term shape");
    c_s4->add_option("--nmax", n_max, "upper bound N_max (>= 45)");
    add_out(c_s4);

    auto* c_orbit = app.add_subcommand("orbit", "orbit of a point under the generators");
    add_n(c_orbit);
    add_out(c_orbit);
    c_orbit->add_option("--point", point, "point spec")->required();
    c_orbit->add_option("--bound", bound, "word-length bound")->check(CLI::PositiveNumber);

    auto* c_classify = app.add_subcommand("classify", "periodic points with certificates");
    add_n(c_classify);
    add_out(c_classify);
    c_classify->add_option("--word-bound", word_bound, "orbit word-length bound")->check(CLI::PositiveNumber);
    c_classify->add_option("--denominator-bound", denom_bound, "sample parameter denominator bound")
        ->check(CLI::PositiveNumber);
    c_classify->add_option("--svg", svg_path, "also write the candidate segments as SVG");

    auto* c_blocked = app.add_subcommand("blocked", "is q finitely blocked from p?");
    add_n(c_blocked);
    add_out(c_blocked);
    c_blocked->add_option("--p", p_spec, "point spec")->required();
    c_blocked->add_option("--q", q_spec, "point spec")->required();

    auto* c_segments = app.add_subcommand("segments", "straight segments from p to q within a radius");
    add_n(c_segments);
    add_out(c_segments);
    c_segments->add_option("--p", p_spec, "point spec")->required();
    c_segments->add_option("--q", q_spec, "point spec")->required();
    c_segments->add_option("--radius", radius_text, "radius in circumscribed diameters (fraction)");
    c_segments->add_option("--svg", svg_path, "also write the developed segments as SVG");

    auto* c_triangle = app.add_subcommand("triangle", "finitely blocked vertex pairs of the right triangle");
    add_n(c_triangle);
    add_out(c_triangle);
    add_format(c_triangle, "text");

    auto* c_all = app.add_subcommand("verify-all", "run the invariant suite over an n-range such as 5-14");
    c_all->add_option("range", range, "n-range")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*c_sine) {
            const auto r = sine_ratio_rational(parse_rational(alpha_text), parse_rational(beta_text));
            out << (r ? to_string(*r) : std::string("irrational")) << '\n';
            return 0;
        }
        if (*c_s4) {
            const Section4Report r = verify_section4(n_max);
            detail::emit(out, out_path, detail::dump(io::section4_json(r)));
            return r.all_excluded() ? 0 : 2;
        }
        if (*c_all) {
            bool ok = true;
            for (int k : parse_range(range)) ok = detail::verify_surface(k, out) && ok;
            out << (ok ? "verify-all: all checks passed\n" : "verify-all: FAILURES\n");
            return ok ? 0 : 2;
        }
        const SurfaceDef s = build_surface(n);
        if (*c_surface) {
            detail::emit(out, out_path, detail::dump(io::surface_json(s)));
            if (!svg_path.empty()) detail::emit(out, svg_path, io::svg(s));
        } else if (*c_cyl) {
            const Decomposition d = decompose(s, parse_direction(s, direction));
            detail::emit(out, out_path, detail::dump(io::decomposition_json(s, d)));
        } else if (*c_heights) {
            io::Json j = io::envelope("heights");
            j["n"] = n;
            bool ok = true;
            io::Json tables = io::Json::array();
            for (bool rot : {false, true}) {
                if (rot && !s.even()) continue;
                const Decomposition d = decompose(s, rot ? rotated_direction(s) : horizontal_direction(s));
                io::Json rows = io::Json::array();
                for (const auto& [k, h] : closed_form_heights(s, rot)) {
                    int match = -1;
                    for (const auto& c : d.cylinders)
                        if (c.height == h) match = c.id;
                    ok = ok && match >= 0;
                    rows.push_back({{"k", k}, {"closed_form", io::to_json(h)}, {"cylinder", match}});
                }
                io::Json t;
                t["direction"] = rot ? "rotated" : "horizontal";
                t["cylinder_count"] = d.cylinders.size();
                t["rows"] = rows;
                t["all_match"] = ok;
                tables.push_back(t);
            }
            j["tables"] = tables;
            detail::emit(out, out_path, detail::dump(j));
            return ok ? 0 : 2;
        } else if (*c_orbit) {
            const SurfacePoint p = parse_point(s, point);
            const VeechAction act(s);
            detail::emit(out, out_path, detail::dump(io::orbit_json(s, p, orbit(act, p, bound))));
        } else if (*c_classify) {
            const Classification c = classify(s, word_bound, denom_bound);
            detail::emit(out, out_path, detail::dump(io::classification_json(s, c)));
            if (!svg_path.empty()) detail::emit(out, svg_path, io::svg(s, {}, c.segments));
            if (!c.undetermined.empty()) return 2;
        } else if (*c_blocked) {
            const BlockingQuery b = is_blocked(s, parse_point(s, p_spec), parse_point(s, q_spec));
            detail::emit(out, out_path, detail::dump(io::blocking_json(s, b)));
        } else if (*c_segments) {
            const SurfacePoint p = parse_point(s, p_spec), q = parse_point(s, q_spec);
            const Rational radius = parse_rational(radius_text);
            const auto segs = enumerate_segments(s, p, q, radius);
            detail::emit(out, out_path, detail::dump(io::segments_json(s, p, q, radius, segs)));
            if (!svg_path.empty()) detail::emit(out, svg_path, io::svg(s, segs));
        } else if (*c_triangle) {
            const TriangleReport r = triangle_blocked_pairs(n);
            if (format == "json") {
                detail::emit(out, out_path, detail::dump(io::triangle_json(r)));
            } else {
                std::ostringstream t;
                if (r.blocked.empty()) t << "no finitely blocked pairs\n";
                for (const auto& [a, b] : r.blocked) t << "finitely blocked: (" << to_string(a) << " vertex, " << to_string(b) << " vertex)\n";
                detail::emit(out, out_path, t.str());
            }
        }
        return 0;
    } catch (const VerificationError& e) {
        err << "verification failure: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ngon::cli
