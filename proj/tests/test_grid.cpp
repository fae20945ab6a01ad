#include "fracseq/catalog.hpp"
#include "fracseq/gray_hilbert.hpp"
#include "fracseq/grid.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace fracseq;

namespace {

Point pt(std::initializer_list<long long> xs) {
    Point p;
    for (long long x : xs) p.push_back(Quad(x));
    return p;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + needle.size())) ++n;
    return n;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// Oracle points to square-grid digits.
Digits steps(const std::vector<std::pair<long long, long long>>& pts) {
    Digits d;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        long long dx = pts[i].first - pts[i - 1].first, dy = pts[i].second - pts[i - 1].second;
        d.push_back(dx ? (dx > 0 ? 1 : -1) : (dy > 0 ? 2 : -2));
    }
    return d;
}

Point sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

double dist(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double t = (a[i] - b[i]).to_double();
        s += t * t;
    }
    return std::sqrt(s);
}

}  // namespace

TEST_SUITE("grid-render") {

TEST_CASE("built-in grids") {
    const Quad h(0, 0, Rational(1, 2));  // sqrt3 / 2
    Grid tri = triangular_grid();
    CHECK(tri.generators == std::vector<Point>{{Quad(1), Quad(0)}, {Quad(Rational(1, 2)), h}, {Quad(Rational(-1, 2)), h}});
    Grid sd = square_diagonal_grid();
    CHECK(sd.generators == std::vector<Point>{pt({1, 0}), pt({1, 1}), pt({0, 1}), pt({-1, 1})});
    Grid e8 = eighth_roots_grid();
    for (int k = 1; k <= 4; ++k) CHECK(e8.length(k) == Quad(1));
    CHECK(sd.length(2) == Quad::sqrt2());
    CHECK(cubic_grid(4).dim == 4);
    CHECK_THROWS(Grid("bad", {pt({1, 0}), pt({2, 0})}));
    CHECK_THROWS(Grid("bad", {pt({1, 0}), pt({0, 1, 0})}));
    CHECK_THROWS(grid_by_name("pentagonal"));
    for (const auto& n : grid_names())
        if (n.find('<') == std::string::npos) CHECK(grid_by_name(n).name == n);
    CHECK(grid_by_name("cubic3").dim == 3);
}

TEST_CASE("trace") {
    Polyline p = trace({1, 2, -1}, square_grid());
    CHECK(p.vertices == std::vector<Point>{pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})});
    CHECK(p.edge_count() == 3);
    CHECK_FALSE(p.closed);
    Polyline island = trace({1, 2, -1, -2}, square_grid());
    CHECK(island.closed);
    CHECK(island.vertices.front() == island.vertices.back());
    CHECK_THROWS(trace({1, 3}, square_grid()));
    std::vector<Quad> two{Quad(1), Quad(1)};
    CHECK_THROWS(trace({1, 2, 1}, square_grid(), &two));
}

TEST_CASE("orientation") {
    CHECK(orientation({1, 2, -1}, square_grid()) == pt({0, 1}));
    CHECK(orientation(gray_sequence(4), cubic_grid(4)) == pt({0, 0, 0, 1}));
    CHECK(orientation({1, 2, -1, -2}, square_grid()) == pt({0, 0}));
    Curve c = generate_level("flowsnake-island", 2);
    CHECK(orientation(c.digits, triangular_grid()) == pt({0, 0}));
}

TEST_CASE("V1 dragon vertices lie on Z2 on the square-diagonal grid") {
    Curve c = generate_level("v1-dragon-square-diagonal", 5);
    REQUIRE(c.lengths.size() == c.digits.size());
    Polyline p = trace(c.digits, entry_grid(find_entry("v1-dragon-square-diagonal")), &c.lengths);
    for (const auto& v : p.vertices)
        for (const auto& x : v) REQUIRE(x.is_integer());
}

TEST_CASE("self-avoidance, Hilbert") {
    Digits h = generate_level("hilbert-original", 3).digits;
    SelfAvoidanceReport r = self_avoidance_report(trace(h, square_grid()));
    CHECK(r.vertex_covering);
    CHECK(r.max_vertex_multiplicity == 1);
    CHECK_FALSE(r.overlap);
}

TEST_CASE("self-avoidance, Arndt edge cover") {
    Digits a = arndt_system().iterate(2);
    Polyline p = trace(a, square_grid());
    SelfAvoidanceReport r = self_avoidance_report(p);
    CHECK(r.max_edge_multiplicity == 1);
    CHECK(r.max_vertex_multiplicity == 2);
    CHECK_FALSE(r.vertex_covering);
    CHECK(r.edge_covering);
    LatticeEdgeReport le = lattice_edge_report(p);
    CHECK(le.all_edges_once);
    CHECK(le.saturated_vertices > 0);
    CHECK(le.saturated_bad == 0);
}

TEST_CASE("self-avoidance, V1 dragon on the eighth-roots grid overlaps partially") {
    // unit edges on the dense grid; with the length stream it is the square-diagonal picture again
    Curve c = generate_level("v1-dragon", 4);
    REQUIRE(find_entry("v1-dragon").unit_edges);
    Grid g = entry_grid(find_entry("v1-dragon"));
    SelfAvoidanceReport r = self_avoidance_report(trace(c.digits, g));
    CHECK(r.partial_overlaps > 0);
    CHECK(r.overlap);
    CHECK(r.max_edge_multiplicity == 1);
    for (int k = 1; k <= 3; ++k) CHECK(self_avoidance_report(trace(generate_level("v1-dragon", k).digits, g)).partial_overlaps == 0);
    SelfAvoidanceReport lat = self_avoidance_report(trace(c.digits, g, &c.lengths));
    CHECK(lat.partial_overlaps == 0);
}

TEST_CASE("self-avoidance, repeated edge") {
    SelfAvoidanceReport r = self_avoidance_report(trace({1, -1}, square_grid()));
    CHECK(r.max_edge_multiplicity == 2);
    CHECK(r.overlap);
}

TEST_CASE("coverage") {
    Polyline h = trace(generate_level("hilbert-original", 3).digits, square_grid());
    Box b8{{0, 0}, {7, 7}};
    CoverageReport c = coverage_report(h, b8);
    CHECK(c.total == 64);
    CHECK(c.visited == 64);

    // brute-force set comparison against the d2xy oracle
    auto pts = oracle::hilbert_points(3);
    std::set<std::pair<long long, long long>> want(pts.begin(), pts.end());
    std::set<std::pair<long long, long long>> got;
    for (const auto& v : h.vertices) got.emplace(v[0].a().numerator(), v[1].a().numerator());
    CHECK(got == want);
    Digits od = steps(pts);
    CHECK(minimal_normalized(SignedSequence(od)).items() ==
          minimal_normalized(SignedSequence(generate_level("hilbert-original", 3).digits)).items());

    Polyline g = trace(gray_sequence(3), cubic_grid(3));
    CoverageReport gc = coverage_report(g, Box{{0, 0, 0}, {1, 1, 1}});
    CHECK(gc.total == 8);
    CHECK(gc.complete());

    // 16 edges, 17 vertices: the exit vertex leaves the 4x4 box the first 16 fill
    Polyline bo = trace(generate_level("beta-omega", 2).digits, square_grid());
    REQUIRE(bo.vertices.size() == 17);
    Polyline head{2, {bo.vertices.begin(), bo.vertices.end() - 1}, false};
    Box b4 = bounding_box(head);
    CHECK(b4.hi[0] - b4.lo[0] == 3);
    CHECK(b4.hi[1] - b4.lo[1] == 3);
    CoverageReport bc = coverage_report(bo, b4);
    CHECK(bc.total == 16);
    CHECK(bc.visited == 16);

    CoverageReport partial = coverage_report(trace({1}, square_grid()), Box{{0, 0}, {1, 1}});
    CHECK(partial.visited == 2);
    CHECK(partial.fraction() == doctest::Approx(0.5));
    CHECK(partial.missed.size() == 2);
}

TEST_CASE("successor constraint on the truncated-square lift") {
    Digits lifted = generate_level("peano-truncated-square", 2).digits;
    CHECK(satisfies_successor_constraint(lifted, truncated_square_grid()));
    CHECK_FALSE(satisfies_successor_constraint({1, 3}, truncated_square_grid()));
}

TEST_CASE("inverse retraces") {
    for (int i = 0; i < 200; ++i) {
        Digits s = oracle::random_seq(2, 30);
        Polyline a = trace(s, square_grid());
        Polyline b = trace(inverse(SignedSequence(s)).items(), square_grid());
        Point exit = a.vertices.back();
        REQUIRE(a.vertices.size() == b.vertices.size());
        for (std::size_t k = 0; k < a.vertices.size(); ++k)
            REQUIRE(b.vertices[k] == sub(a.vertices[a.vertices.size() - 1 - k], exit));
    }
}

TEST_CASE("reverse keeps steps and exit") {
    for (int i = 0; i < 200; ++i) {
        Digits s = oracle::random_seq(3, 30);
        Digits r = reverse(SignedSequence(s)).items();
        CHECK(orientation(s, cubic_grid(3)) == orientation(r, cubic_grid(3)));
        std::multiset<int> x(s.begin(), s.end()), y(r.begin(), r.end());
        CHECK(x == y);
    }
}

TEST_CASE("isometries give congruent curves") {
    struct Case {
        Grid g;
        std::vector<int> p;
    };
    for (const auto& cs : {Case{square_grid(), {2, -1}}, Case{square_grid(), {1, -2}}, Case{eighth_roots_grid(), {2, 3, 4, -1}},
                           Case{triangular_grid(), {2, 3, -1}}, Case{cubic_grid(3), {3, -1, 2}}}) {
        SignedPermutation p(cs.p);
        REQUIRE(is_grid_isometry(p, cs.g, true));
        for (int i = 0; i < 20; ++i) {
            Digits s = oracle::random_seq(cs.g.size(), 24);
            Polyline a = trace(s, cs.g), b = trace(p.apply(s), cs.g);
            for (std::size_t u = 0; u < a.vertices.size(); ++u)
                for (std::size_t v = u + 1; v < a.vertices.size(); ++v)
                    REQUIRE(std::fabs(dist(a.vertices[u], a.vertices[v]) - dist(b.vertices[u], b.vertices[v])) < 1e-9);
        }
    }
}

TEST_CASE("svg export") {
    Polyline sq = trace({1, 2, -1, -2}, square_grid());
    std::string svg = svg_export(sq);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count(svg, "<path") == 1);
    CHECK(count(svg, " L ") == 4);
    CHECK(count(svg, " Z") == 1);
    CHECK(svg == svg_export(sq));

    Polyline h = trace(generate_level("hilbert-original", 3).digits, square_grid());
    RenderOptions round;
    round.rounded_corners = true;
    std::string r = svg_export(h, round);
    CHECK(count(r, " Q ") > 0);
    CHECK(count(svg_export(h), " Q ") == 0);
    CHECK(r == svg_export(h, round));

    RenderOptions bad;
    bad.scale = 0;
    CHECK_THROWS(svg_export(sq, bad));
    CHECK_THROWS(svg_export(trace(gray_sequence(4), cubic_grid(4))));
    CHECK_THROWS(svg_export(trace(gray_sequence(3), cubic_grid(3))));
}

TEST_CASE("svg export, projected 3D Hilbert 2-curve") {
    Digits s = generate_level("hilbert-3d-origin", 2).digits;
    Polyline p = trace(s, cubic_grid(3));
    REQUIRE(p.vertices.size() == 64);
    RenderOptions iso;
    iso.projection = Projection::Isometric;
    std::string svg = svg_export(p, iso);
    CHECK(count(svg, "<path") == 1);
    CHECK(count(svg, " L ") == 63);
    RenderOptions ortho;
    ortho.projection = Projection::Orthographic;
    CHECK(svg_export(p, ortho) != svg);
}

TEST_CASE("csv and obj export") {
    auto two = lines(export_csv(trace({2}, square_grid())));
    CHECK(two == std::vector<std::string>{"x1,x2", "0,0", "0,1"});

    auto g = lines(export_csv(trace(gray_sequence(4), cubic_grid(4))));
    REQUIRE(g.size() == 17);
    CHECK(g[0] == "x1,x2,x3,x4");
    std::set<std::string> rows;
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i].size() == 7);
        for (std::size_t c = 0; c < g[i].size(); c += 2) CHECK((g[i][c] == '0' || g[i][c] == '1'));
        rows.insert(g[i]);
    }
    CHECK(rows.size() == 16);

    Polyline h = trace(generate_level("hilbert-3d-origin", 2).digits, cubic_grid(3));
    auto obj = lines(export_obj(h));
    std::size_t v = 0, l = 0;
    for (const auto& x : obj) {
        v += x.rfind("v ", 0) == 0;
        l += x.rfind("l ", 0) == 0;
    }
    CHECK(v == 64);
    CHECK(l == 1);
    CHECK(export_obj(h) == export_obj(h));

    auto sd = lines(export_csv(trace({2}, square_diagonal_grid())));
    CHECK(sd.back() == "1,1");
    auto e8 = lines(export_csv(trace({2}, eighth_roots_grid())));
    CHECK(e8.back().find("0.7071") != std::string::npos);
}

}
