#include "fracseq/catalog.hpp"
#include "fracseq/gray_hilbert.hpp"
#include "fracseq/rule_file.hpp"
#include "text.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace fracseq {

namespace {

std::vector<Term> terms(const std::string& list, int n) {
    std::vector<Term> out;
    std::istringstream in(list);
    std::string w;
    while (in >> w) out.push_back(parse_term(w, n));
    return out;
}

SubstitutionSystem single_state(std::string name, const std::string& list, int n, Digits start = {1}) {
    SubstitutionSystem sys;
    sys.name = std::move(name);
    sys.kind = RuleKind::Wholecurve;
    sys.digiset = Digiset::bounded(n);
    int s = sys.whole.add_state("S", std::move(start));
    for (auto& t : terms(list, n)) {
        Atom a;
        a.state = s;
        a.term = std::move(t);
        sys.whole.productions[s].push_back(std::move(a));
    }
    return sys;
}

SubstitutionSystem edgewise(std::string name, const std::string& list, int n, Digits start) {
    SubstitutionSystem sys;
    sys.name = std::move(name);
    sys.kind = RuleKind::Edgewise;
    sys.digiset = Digiset::bounded(n);
    sys.edgewise.terms = terms(list, n);
    sys.start = std::move(start);
    return sys;
}

Atom state_atom(int state, const std::string& term, int n) {
    Atom a;
    a.state = state;
    a.term = parse_term(term, n);
    return a;
}

Atom connector(int digit, std::optional<LevelPower> power = std::nullopt) {
    Atom a;
    a.kind = Atom::Kind::Connector;
    a.digit = digit;
    a.power = std::move(power);
    return a;
}

void digit(DigitRule& r, const char* lhs, const char* rhs) { r.add(parse_token(lhs), parse_tokens(rhs)); }

SubstitutionSystem hilbert_normalized() {
    SubstitutionSystem sys;
    sys.name = "hilbert-original";
    sys.kind = RuleKind::Wholecurve;
    sys.digiset = Digiset::bounded(2);
    int h = sys.whole.add_state("H", {1, 2, -1});
    LevelPower td{SignedPermutation({2, 1}), Exponent::K};
    auto& p = sys.whole.productions[h];
    p = {state_atom(h, "id", 2), connector(1, td),  state_atom(h, "td", 2), connector(2, td),
         state_atom(h, "td", 2), connector(-1, td), state_atom(h, "-id", 2)};
    sys.start_level = 1;
    return sys;
}

SubstitutionSystem beta_omega_digits() {
    SubstitutionSystem sys;
    sys.name = "beta-omega";
    sys.kind = RuleKind::Digitwise;
    sys.digiset = Digiset::bounded(2);
    auto& r = sys.digitwise;
    digit(r, "1", "1,2'',-1'',-1'");
    digit(r, "1'", "-2'',-1,2',-1''");
    digit(r, "1''", "-2,-1,2',-1''");
    digit(r, "2", "1,2'',-1'',2'");
    digit(r, "2'", "1',2'',-1'',2'");
    digit(r, "2''", "-2'',-1,2',2");
    sys.start = {1};
    return sys;
}

SubstitutionSystem truncated_square_lift() {
    SubstitutionSystem sys;
    sys.name = "peano-truncated-square";
    sys.kind = RuleKind::Pairlift;
    sys.digiset = Digiset::bounded(4);
    sys.pair.add(1, 2, 1, 2);
    sys.pair.add(1, -2, 1, 4);
    sys.pair.add(2, 1, 3, 2);
    sys.pair.add(2, -1, 3, -4);
    sys.source = std::make_shared<const SubstitutionSystem>(arndt_system());
    return sys;
}

SubstitutionSystem v1_dragon() {
    SubstitutionSystem sys = single_state("v1-dragon", "id [-4,3,-1,-2]^2*R [-4,3,-1,-2]^3", 4);
    sys.length_terms = terms("id R id*sqrt2", 4);
    return sys;
}

Grid v1_eighth_roots() {
    const Quad h(0, Rational(1, 2));
    return Grid("v1-eighth-roots", {{1, 0}, {0, 1}, {-h, h}, {-h, -h}});
}

Grid v1_square_diagonal() { return Grid("v1-square-diagonal", {{1, 0}, {0, 1}, {-1, 1}, {-1, -1}}); }

// Signs (-1)^k and (-1)^(k+1) on two blocks, k the input level.
SubstitutionSystem box4_system() {
    SubstitutionSystem sys = single_state("box4", "id mu.ty*R ty mu*R", 2);
    auto& atoms = sys.whole.productions[0];
    atoms[1].power = LevelPower{named_perm("negation", 2), Exponent::K};
    atoms[3].power = LevelPower{named_perm("negation", 2), Exponent::KPlus1};
    return sys;
}

std::shared_ptr<const SubstitutionSystem> shared(SubstitutionSystem s) {
    return std::make_shared<const SubstitutionSystem>(std::move(s));
}

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> c;
    auto add = [&](CatalogEntry e) { c.push_back(std::move(e)); };

    add({.id = "dekking-flowsnake",
         .title = "Dekking's flowsnake",
         .grid = square_grid(),
         .system = shared(single_state("dekking-flowsnake",
                                       "id id mu*R -R mu id mu*R -R -id mu*R id id R mu R -mu -mu -R -mu -mu*R R mu "
                                       "id -mu*R -mu*R",
                                       2)),
         .expected_prefix = {1, 1, 2, -1, 2, 1, 2, -1, -1, 2, 1, 1, 1, 2, 1, -2, -2, -1, -2, -2, 1, 2, 1, -2, -2, 1},
         .notes = "side flips read as reversal",
         .checks = {GeoCheck::SelfAvoiding},
         .check_level = 3});
    add({.id = "mandelbrot-flowsnake",
         .title = "Mandelbrot's 4x3 flowsnake",
         .grid = square_grid(),
         .system = shared(single_state("mandelbrot-flowsnake",
                                       "id mu*R id mu*R id mu*R id -mu R -mu R -mu -id -mu*R -id mu mu*R -R -mu -R "
                                       "-mu*R id -mu*R id -mu*R",
                                       2)),
         .expected_prefix = {1, 2, 1, 2, 1, 2, 1, -2, 1, -2, 1, -2, -1, -2, -1, 2, 2, -1, -2, -1, -2, 1, -2, 1},
         .notes = "side flips read as reversal",
         .checks = {GeoCheck::SelfAvoiding},
         .check_level = 3});
    add({.id = "flowsnake-island",
         .title = "Mandelbrot's 4x3 flowsnake island",
         .grid = square_grid(),
         .system = shared(edgewise("flowsnake-island", "id mu id mu id mu id", 2, {1, 2, -1, -2})),
         .expected_prefix = {1, 2, 1, 2, 1, 2, 1, 2, -1, 2, -1, 2, -1, 2, 1, 2, 1, 2, 1, 2, 1, 2, -1, 2, -1, 2, -1, 2, 1},
         .notes = "rule (id,mu,id,mu,id,mu,id) derived from the reference sequence; closed curve",
         .extending = false,
         .checks = {GeoCheck::Closed},
         .check_level = 4});
    add({.id = "box4",
         .title = "Ventrella's Box4",
         .grid = square_grid(),
         .system = shared(box4_system()),
         .expected_prefix = {1, 2, 1, -2, 1, -2, -1, -2, 1, -2, 1, 2, 1, 2, -1, 2, 1, -2, 1, 2, 1, 2, -1, 2, -1, -2},
         .notes = "block signs alternate with the level",
         .checks = {},
         .check_level = 3});
    add({.id = "arndt-peano",
         .title = "Arndt's Peano curve",
         .grid = square_grid(),
         .system = shared(arndt_system()),
         .expected_prefix = {1, 2, 1, -2, -1, -2, 1, 2, 1, 2, -1, 2, 1, -2, 1, 2, -1, 2, 1, 2, 1, -2, -1, -2, 1, 2, 1},
         .checks = {GeoCheck::EdgeCover},
         .check_level = 4});
    add({.id = "peano-truncated-square",
         .title = "Arndt's Peano curve on the truncated square grid",
         .grid = truncated_square_grid(),
         .system = shared(truncated_square_lift()),
         .expected_prefix = {1, 2, 3, 2, 1, 4, -3, -2, -1, -2, -3, 4, 1, 2, 3, 2,
                             1, 2, 3, -4, -1, -4, 3, 2, 1, 4, -3, 4, 1, 2, 3},
         .notes = "pair lift of arndt-peano; fourth generator sign corrected",
         .checks = {GeoCheck::Successor, GeoCheck::SelfAvoiding},
         .check_level = 3});
    add({.id = "v1-dragon",
         .title = "Ventrella's V1 dragon, 8th-root grid",
         .grid = v1_eighth_roots(),
         .system = shared(v1_dragon()),
         .expected_prefix = {1, 2, 3, 4, -1, 2, 3, 4, -2, 1, -3, 4, -1, -2, -3, 4, -1, 2, 3, 4, -2, 1, -3, 4, -2, 1},
         .notes = "length stream (id, R, id*sqrt2); drawn with unit edges, which overlap in part",
         .checks = {GeoCheck::PartialOverlap},
         .check_level = 4,
         .unit_edges = true});
    add({.id = "v1-dragon-square-diagonal",
         .title = "Ventrella's V1 dragon, square-diagonal grid",
         .grid = v1_square_diagonal(),
         .system = shared(v1_dragon()),
         .expected_prefix = {1, 2, 3, 4, -1, 2, 3, 4, -2, 1, -3, 4, -1, -2, -3, 4, -1, 2, 3, 4, -2, 1, -3, 4, -2, 1},
         .notes = "length stream (id, R, id*sqrt2)",
         .checks = {GeoCheck::LatticeVertices},
         .check_level = 5});
    add({.id = "hilbert-original",
         .title = "Hilbert's original curve, normalized",
         .grid = square_grid(),
         .system = shared(hilbert_normalized()),
         .expected_prefix = {1, 2, -1, 2, 2, 1, -2, 1, 2, 1, -2, -2, -1, -2, 1, 1, 2, 1, -2, 1, 1, 2, -1, 2, 1, 2, -1},
         .checks = {GeoCheck::VertexCover},
         .check_level = 5});
    add({.id = "hilbert-3d-origin",
         .title = "3D hyper-orthogonal Hilbert curve, origin entry",
         .grid = cubic_grid(3),
         .system = shared(hilbert_system(hilbert_spec(3, EntryClass::Origin))),
         .expected_prefix = {1, 2, -1, 3, 1, -2, -1, 3, 1, 3, -1, 2, 1, -3, -1, 2, 1, 3, -1, 2, 1, -3, -1, -3, -2},
         .checks = {GeoCheck::VertexCover, GeoCheck::HyperOrthogonal},
         .check_level = 3});
    add({.id = "hilbert-4d-origin",
         .title = "4D hyper-orthogonal Hilbert curve, origin entry",
         .grid = cubic_grid(4),
         .system = shared(hilbert_system(hilbert_spec(4, EntryClass::Origin))),
         .expected_prefix = {1, 2, -1, 3, 1, -2, -1, 4, 1, 2, -1, -3, 1, -2, -1, 4,
                             1, 3, -1, 4, 1, -3, -1, 2, 1, 3, -1, -4, 1},
         .checks = {GeoCheck::VertexCover, GeoCheck::HyperOrthogonal},
         .check_level = 2});
    add({.id = "gray",
         .title = "Gray curve",
         .grid = Grid(),
         .system = shared(gray_system_uniform()),
         .expected_prefix = {1, 2, -1, 3, 1, -2, -1, 4, 1, 2, -1, -3, 1, -2, -1, 5,
                             1, 2, -1, 3, 1, -2, -1, -4, 1, 2, -1, -3, 1},
         .oeis = "A164677",
         .checks = {GeoCheck::Hamiltonian, GeoCheck::HyperOrthogonal},
         .check_level = 8});
    add({.id = "hilbert-4d-other",
         .title = "4D hyper-orthogonal Hilbert curve, non-origin entry",
         .grid = cubic_grid(4),
         .system = shared(hilbert_system(hilbert_spec(4, EntryClass::NonOrigin))),
         .expected_prefix = {1, 2, -1, 3, 1, -2, -1, 4, 1, 2, -1, -3, 1, -2, -1, -3,
                             1, -4, -1, 2, 1, 4, -1, -3, 1, -4, -1},
         .notes = "types inferred from exit edges; row 4 of H'' corrected",
         .checks = {GeoCheck::VertexCover, GeoCheck::HyperOrthogonal},
         .check_level = 2});
    add({.id = "hilbert-3d-other",
         .title = "3D hyper-orthogonal Hilbert curve, non-origin entry",
         .grid = cubic_grid(3),
         .system = shared(hilbert_system(hilbert_spec(3, EntryClass::NonOrigin))),
         .expected_prefix = {1, 2, -1, 3, 1, -2, -1, -2, -3, 1, 3, -2, -3, -1,
                             3, -1, -3, -1, 3, 2, -3, 1, 3, 2, -1, -3, 1},
         .checks = {GeoCheck::VertexCover, GeoCheck::HyperOrthogonal},
         .check_level = 3});
    add({.id = "beta-omega",
         .title = "beta-Omega curve",
         .grid = square_grid(),
         .system = shared(beta_omega_digits()),
         .expected_prefix = {1, 2, -1, -1, -2, -1, 2, 2, 2, 1, -2, 1, 2, 1, -2, 1,
                             2, 1, -2, -2, -1, -2, 1, 1, 1, 2, -1, 2, 1, 2},
         .notes = "six-token digit rule",
         .checks = {GeoCheck::VertexCover},
         .check_level = 5});

    std::stable_sort(c.begin(), c.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        return compare(a.expected_prefix, b.expected_prefix) < 0;
    });
    return c;
}

CheckResult geometric(const CatalogEntry& e, GeoCheck check) {
    CheckResult r{geo_check_name(check), false, ""};
    const SubstitutionSystem& sys = *e.system;
    const int k = e.check_level;
    Curve curve;
    if (check == GeoCheck::Hamiltonian || (check == GeoCheck::HyperOrthogonal && e.grid.dim == 0)) {
        curve = sys.prefix((std::size_t{1} << k) - 1);
    } else {
        curve = sys.iterate_curve(k);
    }
    const Digits& s = curve.digits;
    int dim = 0;
    for (int x : s) dim = std::max(dim, std::abs(x));
    Grid g = entry_grid(e, dim);
    auto lengths = curve.lengths.empty() ? nullptr : &curve.lengths;
    Polyline p = trace(s, g, check == GeoCheck::LatticeVertices ? lengths : nullptr);
    std::ostringstream detail;
    switch (check) {
        case GeoCheck::VertexCover: {
            long long side = 1;
            for (int j = 0; j < k; ++j) side *= e.cover_base;
            std::size_t want = 1;
            for (int j = 0; j < g.dim; ++j) want *= static_cast<std::size_t>(side);
            if (p.vertices.size() < want) {
                detail << "curve has " << p.vertices.size() << " vertices, need " << want;
                break;
            }
            Polyline head{p.dim, {p.vertices.begin(), p.vertices.begin() + static_cast<std::ptrdiff_t>(want)}, false};
            Box box = bounding_box(head);
            auto cov = coverage_report(head, box);
            auto sa = self_avoidance_report(head);
            bool cube = true;
            for (int c = 0; c < p.dim; ++c) cube = cube && box.hi[c] - box.lo[c] + 1 == side;
            r.pass = cube && cov.complete() && sa.max_vertex_multiplicity == 1;
            detail << "level " << k << ": " << cov.visited << "/" << cov.total << " box vertices, max multiplicity "
                   << sa.max_vertex_multiplicity;
            break;
        }
        case GeoCheck::EdgeCover: {
            auto le = lattice_edge_report(p);
            r.pass = le.all_edges_once && le.saturated_bad == 0 && le.max_vertex_multiplicity <= 2;
            detail << "level " << k << ": edges once " << (le.all_edges_once ? "yes" : "no") << ", "
                   << le.saturated_vertices << " interior vertices, " << le.saturated_bad << " without multiplicity 2";
            break;
        }
        case GeoCheck::Closed: {
            r.pass = true;
            for (int j = 0; j <= k; ++j) {
                Polyline q = trace(sys.iterate(j), g);
                if (!q.closed) {
                    r.pass = false;
                    detail << "level " << j << " is open";
                    break;
                }
            }
            if (r.pass) detail << "levels 0.." << k << " closed";
            break;
        }
        case GeoCheck::SelfAvoiding: {
            auto sa = self_avoidance_report(p);
            r.pass = sa.max_vertex_multiplicity == 1 && sa.max_edge_multiplicity == 1 && sa.partial_overlaps == 0;
            detail << "level " << k << ": max vertex multiplicity " << sa.max_vertex_multiplicity
                   << ", max edge multiplicity " << sa.max_edge_multiplicity << ", partial overlaps "
                   << sa.partial_overlaps;
            break;
        }
        case GeoCheck::HyperOrthogonal: {
            int order = e.grid.dim == 0 ? k - 1 : g.dim - 2;
            r.pass = is_hyper_orthogonal(s, order);
            detail << "order " << order << " on " << s.size() << " edges";
            break;
        }
        case GeoCheck::Hamiltonian: {
            Box unit{std::vector<long long>(static_cast<std::size_t>(g.dim), 0),
                     std::vector<long long>(static_cast<std::size_t>(g.dim), 1)};
            auto cov = coverage_report(p, unit);
            auto sa = self_avoidance_report(p);
            Box box = bounding_box(p);
            bool inside = box.lo == unit.lo && box.hi == unit.hi;
            r.pass = inside && cov.complete() && sa.max_vertex_multiplicity == 1;
            detail << "d=" << g.dim << ": " << cov.visited << "/" << cov.total << " cube vertices";
            break;
        }
        case GeoCheck::Successor: {
            r.pass = satisfies_successor_constraint(s, g);
            detail << "level " << k << " on " << g.name;
            break;
        }
        case GeoCheck::PartialOverlap: {
            auto sa = self_avoidance_report(p);
            r.pass = sa.partial_overlaps > 0;
            detail << "level " << k << ": " << sa.partial_overlaps << " partial overlaps";
            break;
        }
        case GeoCheck::LatticeVertices: {
            if (!lengths) {
                detail << "no length stream";
                break;
            }
            r.pass = std::all_of(p.vertices.begin(), p.vertices.end(), [](const Point& v) {
                return std::all_of(v.begin(), v.end(), [](const Quad& q) { return q.is_integer(); });
            });
            detail << "level " << k << ": " << p.vertices.size() << " vertices";
            break;
        }
    }
    r.detail = detail.str();
    return r;
}

}  // namespace

std::string geo_check_name(GeoCheck c) {
    switch (c) {
        case GeoCheck::VertexCover: return "vertex-cover";
        case GeoCheck::EdgeCover: return "edge-cover";
        case GeoCheck::Closed: return "closed";
        case GeoCheck::SelfAvoiding: return "self-avoiding";
        case GeoCheck::HyperOrthogonal: return "hyper-orthogonal";
        case GeoCheck::Hamiltonian: return "hamiltonian";
        case GeoCheck::Successor: return "successor-constraint";
        case GeoCheck::LatticeVertices: return "lattice-vertices";
        case GeoCheck::PartialOverlap: return "partial-overlap";
    }
    return "?";
}

SubstitutionSystem arndt_system() {
    return edgewise("arndt-peano", "id mu id -mu -id -mu id mu id", 2, {1});
}

SubstitutionSystem gray_system_uniform() {
    SubstitutionSystem sys;
    sys.name = "gray-t1";
    sys.kind = RuleKind::Digitwise;
    sys.digiset = Digiset::unbounded();
    digit(sys.digitwise, "1", "1,2");
    digit(sys.digitwise, "-1", "1,-2");
    sys.digitwise.set_tail({-1}, 1);
    sys.start = {1};
    return sys;
}

SubstitutionSystem gray_system_nonuniform() {
    SubstitutionSystem sys;
    sys.name = "gray-t2";
    sys.kind = RuleKind::Digitwise;
    sys.digiset = Digiset::unbounded();
    digit(sys.digitwise, "1", "1,2,-1");
    digit(sys.digitwise, "-1", "1,-2,-1");
    sys.digitwise.set_tail({}, 1);
    sys.start = {1};
    sys.start_level = 1;
    return sys;
}

SubstitutionSystem hilbert_digit_system() {
    SubstitutionSystem sys;
    sys.name = "hilbert-digits";
    sys.kind = RuleKind::Digitwise;
    sys.digiset = Digiset::bounded(2);
    digit(sys.digitwise, "1", "1,2,-1',2'");
    digit(sys.digitwise, "1'", "-2,-1,2',2");
    digit(sys.digitwise, "2", "2,1,-2',1'");
    digit(sys.digitwise, "2'", "-1,-2,1',1");
    sys.start = {1};
    sys.drop_tail = 1;
    return sys;
}

SubstitutionSystem hilbert_drawing_system() {
    SubstitutionSystem sys;
    sys.name = "hilbert-drawing";
    sys.kind = RuleKind::Wholecurve;
    sys.digiset = Digiset::bounded(2);
    int h = sys.whole.add_state("H", {1, 2, -1});
    sys.whole.productions[h] = {state_atom(h, "td", 2), connector(1), state_atom(h, "id", 2), connector(2),
                                state_atom(h, "id", 2), connector(-1), state_atom(h, "-td", 2)};
    sys.start_level = 1;
    return sys;
}

SubstitutionSystem beta_omega_whole_system() {
    SubstitutionSystem sys;
    sys.name = "beta-omega-whole";
    sys.kind = RuleKind::Wholecurve;
    sys.digiset = Digiset::bounded(2);
    int b = sys.whole.add_state("beta", {1, 2, -1, -1});
    int bp = sys.whole.add_state("beta'", {1, -2, -1, -2});
    int o = sys.whole.add_state("Omega", {1, 2, -1, 2});
    sys.whole.productions[b] = {state_atom(b, "tx", 2), state_atom(b, "-mu", 2), state_atom(bp, "td", 2),
                                state_atom(o, "mu", 2)};
    sys.whole.productions[bp] = {state_atom(o, "td", 2), state_atom(b, "td", 2), state_atom(bp, "-mu", 2),
                                 state_atom(bp, "tx", 2)};
    sys.whole.productions[o] = {state_atom(b, "tx", 2), state_atom(b, "-mu", 2), state_atom(bp, "td", 2),
                                state_atom(bp, "-id", 2)};
    sys.start_level = 1;
    sys.output_state = b;
    sys.normalizer = LevelPower{SignedPermutation({-1, 2}), Exponent::KMinus1};
    return sys;
}

const std::vector<CatalogEntry>& catalog_list() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

const CatalogEntry& find_entry(std::string_view id) {
    for (const auto& e : catalog_list())
        if (e.id == id) return e;
    throw std::out_of_range("unknown catalog entry '" + std::string(id) + "'");
}

Polyline draw_level(std::string_view id, int level) {
    const CatalogEntry& e = find_entry(id);
    Curve c = generate_level(id, level);
    int dim = 0;
    for (int x : c.digits) dim = std::max(dim, std::abs(x));
    return trace(c.digits, entry_grid(e, dim), c.lengths.empty() || e.unit_edges ? nullptr : &c.lengths);
}

Grid entry_grid(const CatalogEntry& e, int dim_hint) {
    if (e.grid.dim > 0) return e.grid;
    return cubic_grid(std::max(1, dim_hint));
}

Curve generate_entry(std::string_view id, std::size_t count) {
    if (count == 0) return {};
    const CatalogEntry& e = find_entry(id);
    const SubstitutionSystem& sys = *e.system;
    if (e.extending) return sys.prefix(count);
    // Not extending: take the first level whose first `count` terms survive the next step.
    for (int k = sys.level_for(count);; ++k) {
        Curve c = sys.iterate_curve(k);
        Digits next = sys.iterate(k + 1);
        if (std::equal(c.digits.begin(), c.digits.begin() + static_cast<std::ptrdiff_t>(count), next.begin())) {
            c.digits.resize(count);
            if (!c.lengths.empty()) c.lengths.resize(count);
            return c;
        }
    }
}

Curve generate_level(std::string_view id, int level) { return find_entry(id).system->iterate_curve(level); }

bool VerificationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerificationReport verify_entry(std::string_view id) {
    const CatalogEntry& e = find_entry(id);
    const SubstitutionSystem& sys = *e.system;
    VerificationReport rep;
    rep.id = e.id;
    auto run = [&](const std::string& name, auto&& fn) {
        CheckResult r{name, false, ""};
        try {
            fn(r);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("error: ") + ex.what();
        }
        rep.checks.push_back(std::move(r));
    };
    const std::size_t n = e.expected_prefix.size();
    run("prefix", [&](CheckResult& r) {
        Digits got = generate_entry(e.id, n).digits;
        r.pass = got == e.expected_prefix;
        if (r.pass) {
            r.detail = std::to_string(n) + " terms match";
        } else {
            std::size_t i = 0;
            while (i < n && got[i] == e.expected_prefix[i]) ++i;
            r.detail = "first difference at term " + std::to_string(i + 1) + ": got " + std::to_string(got[i]) +
                       ", expected " + std::to_string(e.expected_prefix[i]);
        }
    });
    run("normalized", [&](CheckResult& r) {
        r.pass = is_normalized(generate_entry(e.id, n).digits);
        r.detail = r.pass ? "first occurrences ascend" : "prefix is not normalized";
    });
    if (sys.kind != RuleKind::Pairlift) {
        run("expansive", [&](CheckResult& r) {
            r.pass = sys.is_expansive();
            r.detail = r.pass ? "every image has length >= 2" : "an image is shorter than 2";
        });
    }
    if (e.extending) {
        run("extending", [&](CheckResult& r) {
            int k = sys.level_for(n) + 1;
            r.pass = check_extending(sys, k);
            r.detail = "levels " + std::to_string(sys.start_level) + ".." + std::to_string(k);
        });
    }
    for (GeoCheck c : e.checks) {
        run(geo_check_name(c), [&](CheckResult& r) { r = geometric(e, c); });
    }
    return rep;
}

int log_sqrt2(const Quad& q) {
    if (q.c() != 0 || q.d() != 0) throw std::invalid_argument("length " + q.to_string() + " is not a power of sqrt2");
    Rational v;
    int odd = 0;
    if (q.b() == 0 && q.a() > 0) {
        v = q.a();
    } else if (q.a() == 0 && q.b() > 0) {
        v = q.b();
        odd = 1;
    } else {
        throw std::invalid_argument("length " + q.to_string() + " is not a power of sqrt2");
    }
    auto pow2 = [](long long x) { return x > 0 && (x & (x - 1)) == 0; };
    long long num = v.numerator(), den = v.denominator();
    if (!pow2(num) || !pow2(den)) throw std::invalid_argument("length " + q.to_string() + " is not a power of sqrt2");
    int e = std::countr_zero(static_cast<unsigned long long>(num)) - std::countr_zero(static_cast<unsigned long long>(den));
    return 2 * e + odd;
}

std::string export_bfile(const Digits& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += std::to_string(i + 1) + " " + std::to_string(values[i]) + "\n";
    return out;
}

std::string export_bfile(std::string_view id, std::size_t count) {
    constexpr std::string_view suffix = "-lengths";
    if (id.size() > suffix.size() && id.substr(id.size() - suffix.size()) == suffix) {
        std::string_view base = id.substr(0, id.size() - suffix.size());
        if (!find_entry(base).system->length_terms)
            throw std::invalid_argument("entry '" + std::string(base) + "' has no length stream");
        Curve c = generate_entry(base, count);
        Digits logs;
        for (const auto& l : c.lengths) logs.push_back(log_sqrt2(l));
        return export_bfile(logs);
    }
    return export_bfile(generate_entry(id, count).digits);
}

std::vector<std::pair<long long, long long>> parse_bfile(std::string_view text) {
    std::vector<std::pair<long long, long long>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string_view t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::istringstream ls{std::string(t)};
        long long n = 0, v = 0;
        std::string extra;
        if (!(ls >> n >> v) || (ls >> extra))
            throw std::invalid_argument("b-file line " + std::to_string(no) + ": expected 'n value'");
        if (!out.empty() && n != out.back().first + 1)
            throw std::invalid_argument("b-file line " + std::to_string(no) + ": index " + std::to_string(n) +
                                        " is not contiguous");
        out.emplace_back(n, v);
    }
    return out;
}

Digits bfile_values(std::string_view text) {
    Digits out;
    for (const auto& [n, v] : parse_bfile(text)) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace fracseq
