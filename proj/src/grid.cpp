#include "fracseq/grid.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace fracseq {

namespace {

Quad dot(const Point& x, const Point& y) {
    Quad s;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Point scaled(const Point& x, const Quad& f) {
    Point out = x;
    for (auto& v : out) v *= f;
    return out;
}

Point sub(const Point& x, const Point& y) {
    Point out = x;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] -= y[i];
    return out;
}

const Quad kHalf = Quad(Rational(1, 2));
const Quad kHalfSqrt2 = Quad(0, Rational(1, 2));
const Quad kHalfSqrt3 = Quad(0, 0, Rational(1, 2));

struct EdgeKey {
    Point a, b;
    bool operator==(const EdgeKey&) const = default;
};

struct EdgeHash {
    std::size_t operator()(const EdgeKey& e) const {
        PointHash h;
        return h(e.a) * 31 + h(e.b);
    }
};

EdgeKey undirected(const Point& p, const Point& q) {
    return PointLess{}(q, p) ? EdgeKey{q, p} : EdgeKey{p, q};
}

bool all_integer(const Point& p) {
    return std::all_of(p.begin(), p.end(), [](const Quad& q) { return q.is_integer(); });
}

std::vector<long long> to_lattice(const Point& p) {
    std::vector<long long> out;
    out.reserve(p.size());
    for (const auto& q : p) out.push_back(q.a().numerator());
    return out;
}

struct LatticeHash {
    std::size_t operator()(const std::vector<long long>& v) const {
        std::size_t h = v.size();
        for (long long x : v) h ^= std::hash<long long>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

Grid::Grid(std::string n, std::vector<Point> gens, std::optional<Quad> turn)
    : name(std::move(n)), generators(std::move(gens)), turn_cosine(std::move(turn)) {
    if (generators.empty()) throw std::invalid_argument("grid needs at least one generator");
    dim = static_cast<int>(generators.front().size());
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != dim) throw std::invalid_argument("grid generators differ in dimension");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            Quad gij = dot(generators[i], generators[j]);
            Quad cross = gij * gij - dot(generators[i], generators[i]) * dot(generators[j], generators[j]);
            if (cross.is_zero())
                throw std::invalid_argument("grid generators " + std::to_string(i + 1) + " and " +
                                            std::to_string(j + 1) + " are parallel");
        }
    }
}

Quad Grid::length(int k) const {
    const Point& u = generator(k);
    return sqrt_exact(dot(u, u));
}

Point Grid::unit(int k) const { return scaled(generator(k), length(k).inverse()); }

Grid square_grid() { return Grid("square", {{1, 0}, {0, 1}}); }

Grid cubic_grid(int d) {
    if (d < 1) throw std::invalid_argument("cubic grid dimension must be positive");
    std::vector<Point> gens;
    for (int i = 0; i < d; ++i) {
        Point p(d, Quad(0));
        p[i] = 1;
        gens.push_back(p);
    }
    return Grid(d == 2 ? "square" : "cubic" + std::to_string(d), gens);
}

Grid triangular_grid() { return Grid("triangular", {{1, 0}, {kHalf, kHalfSqrt3}, {-kHalf, kHalfSqrt3}}); }

Grid square_diagonal_grid() { return Grid("square-diagonal", {{1, 0}, {1, 1}, {0, 1}, {-1, 1}}); }

Grid eighth_roots_grid() {
    return Grid("eighth-roots", {{1, 0}, {kHalfSqrt2, kHalfSqrt2}, {0, 1}, {-kHalfSqrt2, kHalfSqrt2}});
}

Grid truncated_square_grid() {
    return Grid("truncated-square", {{1, 0}, {kHalfSqrt2, kHalfSqrt2}, {0, 1}, {kHalfSqrt2, -kHalfSqrt2}},
                kHalfSqrt2);
}

Grid honeycomb_grid() {
    return Grid("honeycomb", {{1, 0}, {kHalf, kHalfSqrt3}, {-kHalf, kHalfSqrt3}}, kHalf);
}

Grid tri_hexagonal_grid() { return Grid("tri-hexagonal", {{1, 0}, {kHalf, kHalfSqrt3}, {-kHalf, kHalfSqrt3}}); }

Grid grid_by_name(std::string_view name) {
    std::string key = detail::lower(name);
    if (key == "square") return square_grid();
    if (key == "triangular") return triangular_grid();
    if (key == "square-diagonal") return square_diagonal_grid();
    if (key == "eighth-roots") return eighth_roots_grid();
    if (key == "truncated-square") return truncated_square_grid();
    if (key == "honeycomb") return honeycomb_grid();
    if (key == "tri-hexagonal") return tri_hexagonal_grid();
    if (key.rfind("cubic", 0) == 0) return cubic_grid(key.size() == 5 ? 3 : detail::parse_int(key.substr(5)));
    throw std::invalid_argument("unknown grid '" + std::string(name) + "'");
}

std::vector<std::string> grid_names() {
    return {"square", "cubic<d>", "triangular", "square-diagonal", "eighth-roots", "truncated-square", "honeycomb",
            "tri-hexagonal"};
}

bool is_grid_isometry(const SignedPermutation& p, const Grid& g, bool strict_lengths) {
    const int n = g.size();
    if (p.size() != n)
        throw std::invalid_argument("perm size " + std::to_string(p.size()) + " differs from grid size " +
                                    std::to_string(n));
    std::vector<std::vector<double>> v(n);
    for (int k = 1; k <= n; ++k) v[k - 1] = to_doubles(strict_lengths ? g.generator(k) : g.unit(k));
    auto gram = [&](int i, int j) {
        double s = 0;
        for (int c = 0; c < g.dim; ++c) s += v[i][c] * v[j][c];
        return s;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int pi = p.images()[i], pj = p.images()[j];
            double sign = (pi < 0) == (pj < 0) ? 1.0 : -1.0;
            double moved = sign * gram(std::abs(pi) - 1, std::abs(pj) - 1);
            if (std::fabs(moved - gram(i, j)) > 1e-9) return false;
        }
    }
    return true;
}

Polyline trace(const Digits& s, const Grid& g, const std::vector<Quad>* lengths) {
    if (lengths && lengths->size() != s.size())
        throw std::invalid_argument("length stream has " + std::to_string(lengths->size()) + " entries for " +
                                    std::to_string(s.size()) + " digits");
    const int n = g.size();
    std::vector<Point> steps(n + 1);
    for (int k = 1; k <= n; ++k) steps[k] = lengths ? g.unit(k) : g.generator(k);

    Polyline out;
    out.dim = g.dim;
    out.vertices.reserve(s.size() + 1);
    out.vertices.emplace_back(g.dim, Quad(0));
    for (std::size_t i = 0; i < s.size(); ++i) {
        int x = s[i];
        int m = std::abs(x);
        if (x == 0 || m > n)
            throw std::out_of_range("digit " + std::to_string(x) + " at position " + std::to_string(i + 1) +
                                    " outside grid of " + std::to_string(n) + " generators");
        Point v = out.vertices.back();
        if (lengths) {
            Quad f = x < 0 ? -(*lengths)[i] : (*lengths)[i];
            for (int c = 0; c < g.dim; ++c) v[c] += steps[m][c] * f;
        } else if (x > 0) {
            for (int c = 0; c < g.dim; ++c) v[c] += steps[m][c];
        } else {
            for (int c = 0; c < g.dim; ++c) v[c] -= steps[m][c];
        }
        out.vertices.push_back(std::move(v));
    }
    out.closed = !s.empty() && out.vertices.front() == out.vertices.back();
    return out;
}

Point orientation(const Digits& s, const Grid& g) {
    Polyline p = trace(s, g);
    return sub(p.vertices.back(), p.vertices.front());
}

SelfAvoidanceReport self_avoidance_report(const Polyline& p) {
    SelfAvoidanceReport r;
    const auto& vs = p.vertices;
    std::size_t nvis = vs.size();
    if (p.closed && nvis > 1) --nvis;
    std::unordered_map<Point, int, PointHash> vmult;
    for (std::size_t i = 0; i < nvis; ++i) {
        int m = ++vmult[vs[i]];
        r.max_vertex_multiplicity = std::max(r.max_vertex_multiplicity, m);
    }
    r.vertex_count = nvis;
    r.distinct_vertices = vmult.size();

    std::unordered_map<EdgeKey, int, EdgeHash> emult;
    bool lattice_unit = true;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        int m = ++emult[undirected(vs[i], vs[i + 1])];
        r.max_edge_multiplicity = std::max(r.max_edge_multiplicity, m);
        if (lattice_unit) {
            Point d = sub(vs[i + 1], vs[i]);
            lattice_unit = all_integer(vs[i]) && dot(d, d) == Quad(1);
        }
    }
    r.edge_count = p.edge_count();
    r.distinct_edges = emult.size();

    // Unit lattice steps either coincide or meet in an endpoint; other grids need the collinear sweep.
    if (!lattice_unit) {
        struct Interval {
            Quad lo, hi;
        };
        std::map<Point, std::vector<Interval>, PointLess> lines;
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
            Point d = sub(vs[i + 1], vs[i]);
            std::size_t i0 = 0;
            while (i0 < d.size() && d[i0].is_zero()) ++i0;
            if (i0 == d.size()) continue;
            Point dn = scaled(d, d[i0].inverse());
            Quad t0 = vs[i][i0], t1 = vs[i + 1][i0];
            Point key = sub(vs[i], scaled(dn, t0));
            key.insert(key.end(), dn.begin(), dn.end());
            if (t1 < t0) std::swap(t0, t1);
            lines[key].push_back({t0, t1});
        }
        for (auto& [key, iv] : lines) {
            if (iv.size() < 2) continue;
            std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) {
                int c = (x.lo - y.lo).sign();
                return c != 0 ? c < 0 : x.hi < y.hi;
            });
            const Interval* best = &iv[0];
            for (std::size_t k = 1; k < iv.size(); ++k) {
                const Interval& cur = iv[k];
                if (cur.lo < best->hi && !(cur.lo == best->lo && cur.hi == best->hi)) ++r.partial_overlaps;
                if (cur.hi > best->hi) best = &cur;
            }
        }
    }
    r.vertex_covering = r.max_vertex_multiplicity <= 1 && r.max_edge_multiplicity <= 1 && r.partial_overlaps == 0;
    r.edge_covering = r.max_edge_multiplicity <= 1 && r.max_vertex_multiplicity <= 2 && r.partial_overlaps == 0;
    r.overlap = r.max_edge_multiplicity >= 2 || r.partial_overlaps > 0;
    return r;
}

Box bounding_box(const Polyline& p) {
    Box b;
    if (p.vertices.empty()) return b;
    b.lo.assign(p.dim, 0);
    b.hi.assign(p.dim, 0);
    for (int c = 0; c < p.dim; ++c) {
        double lo = p.vertices[0][c].to_double(), hi = lo;
        for (const auto& v : p.vertices) {
            double x = v[c].to_double();
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        b.lo[c] = static_cast<long long>(std::ceil(lo - 1e-9));
        b.hi[c] = static_cast<long long>(std::floor(hi + 1e-9));
    }
    return b;
}

CoverageReport coverage_report(const Polyline& p, const Box& region, std::size_t missed_cap) {
    CoverageReport r;
    if (region.lo.size() != static_cast<std::size_t>(p.dim) || region.hi.size() != region.lo.size())
        throw std::invalid_argument("coverage region dimension differs from polyline");
    std::unordered_set<std::vector<long long>, LatticeHash> seen;
    for (const auto& v : p.vertices)
        if (all_integer(v)) seen.insert(to_lattice(v));
    const std::size_t d = region.lo.size();
    for (std::size_t c = 0; c < d; ++c)
        if (region.hi[c] < region.lo[c]) return r;
    std::vector<long long> cur = region.lo;
    while (true) {
        ++r.total;
        if (seen.count(cur)) {
            ++r.visited;
        } else if (r.missed.size() < missed_cap) {
            r.missed.push_back(cur);
        }
        std::size_t c = 0;
        while (c < d && cur[c] == region.hi[c]) {
            cur[c] = region.lo[c];
            ++c;
        }
        if (c == d) break;
        ++cur[c];
    }
    return r;
}

LatticeEdgeReport lattice_edge_report(const Polyline& p) {
    LatticeEdgeReport r;
    const auto& vs = p.vertices;
    std::size_t nvis = vs.size();
    if (p.closed && nvis > 1) --nvis;
    std::unordered_map<std::vector<long long>, int, LatticeHash> vmult;
    for (std::size_t i = 0; i < nvis; ++i) {
        if (!all_integer(vs[i])) throw std::invalid_argument("lattice_edge_report needs integer vertices");
        r.max_vertex_multiplicity = std::max(r.max_vertex_multiplicity, ++vmult[to_lattice(vs[i])]);
    }
    std::unordered_map<std::vector<long long>, int, LatticeHash> degree;
    std::unordered_set<std::vector<long long>, LatticeHash> edges;
    r.all_edges_once = true;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        auto a = to_lattice(vs[i]), b = to_lattice(vs[i + 1]);
        auto key = std::min(a, b);
        auto other = std::max(a, b);
        key.insert(key.end(), other.begin(), other.end());
        if (!edges.insert(key).second) {
            r.all_edges_once = false;
            continue;
        }
        ++degree[a];
        ++degree[b];
    }
    for (const auto& [v, deg] : degree) {
        if (deg == 2 * p.dim) {
            ++r.saturated_vertices;
            if (vmult[v] != 2) ++r.saturated_bad;
        }
    }
    return r;
}

std::vector<Quad> turn_cosines(const Digits& s, const Grid& g) {
    std::vector<Point> units(g.size() + 1);
    for (int k = 1; k <= g.size(); ++k) units[k] = g.unit(k);
    std::vector<Quad> out;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        Quad c = dot(units.at(std::abs(s[i])), units.at(std::abs(s[i + 1])));
        out.push_back((s[i] < 0) != (s[i + 1] < 0) ? -c : c);
    }
    return out;
}

bool satisfies_successor_constraint(const Digits& s, const Grid& g) {
    if (!g.turn_cosine) return true;
    for (const auto& c : turn_cosines(s, g))
        if (!(c == *g.turn_cosine)) return false;
    return true;
}

}  // namespace fracseq
