// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
// usage: acceptance <path-to-fracseq-cli>

#include "cli_run.hpp"
#include "fracseq/catalog.hpp"
#include "fracseq/gray_hilbert.hpp"
#include "fracseq/grid.hpp"
#include "oracles.hpp"
#include "properties.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace fracseq;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail.str("");
        if (pass) detail << why;
        pass = false;
    }
};

using Criterion = std::function<void(Outcome&)>;

void golden_prefixes(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    int n = 0;
    for (const auto& e : catalog_list()) {
        const Digits& want = e.expected_prefix;
        if (want.size() < 20) o.fail(e.id + ": stored prefix shorter than 20");
        if (generate_entry(e.id, want.size()).digits != want) o.fail(e.id + ": prefix mismatch");
        ++n;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (n != 15) o.fail("expected 15 entries, have " + std::to_string(n));
    if (secs >= 10) o.fail("took " + std::to_string(secs) + " s");
    if (o.pass) o.detail << n << " entries match, " << secs << " s";
}

void gray_ruler(Outcome& o) {
    Digits g = gray_sequence(16);
    for (std::size_t n = 1; n < (std::size_t{1} << 16); ++n)
        if (std::abs(g[n - 1]) != oracle::ruler(n)) {
            o.fail("ruler mismatch at n=" + std::to_string(n));
            break;
        }
    for (int d = 1; d <= 12; ++d) {
        std::vector<int> xs(d);
        for (int i = 0; i < d; ++i) xs[i] = i + 1;
        if (fold(xs).items() != oracle::gray(d)) o.fail("fold(1.." + std::to_string(d) + ") != G(d)");
    }
    Digits a = gray_system_uniform().prefix(4096).digits;
    Digits b = gray_system_nonuniform().prefix(4096).digits;
    if (a.size() != 4096 || a != b) o.fail("T1 and T2 differ within 4096 terms");
    if (o.pass) o.detail << "ruler to 2^16, fold d<=12, T1=T2 on 4096 terms";
}

void report_tally(Outcome& o, const props::Tally& t, long long want, const char* what) {
    if (t.cases != want) o.fail(std::string(what) + ": ran " + std::to_string(t.cases));
    if (t.failures) o.fail(std::string(what) + ": " + std::to_string(t.failures) + " failures, first " + t.first);
}

void parity_theorem(Outcome& o) {
    props::Tally ex = props::parity_exhaustive(4), rnd = props::parity_random(10000, 8);
    report_tally(o, ex, 440, "exhaustive");
    report_tally(o, rnd, 10000, "random");
    if (o.pass) o.detail << ex.cases << " exhaustive + " << rnd.cases << " random";
}

void group_sizes(Outcome& o) {
    using P = SignedPermutation;
    auto g3 = generate_group({P({3, -2, -1}), P({-1, -3, 2})});
    auto g4 = generate_group({P({4, 3, 1, 2}), P({4, -2, -1, 3})});
    auto g2 = generate_group({named_perm("mu", 2), named_perm("tau_y", 2)});
    if (g3.size() != 24) o.fail("3D order " + std::to_string(g3.size()));
    if (g4.size() != 192) o.fail("4D order " + std::to_string(g4.size()));
    if (g2.size() != 8) o.fail("2D order " + std::to_string(g2.size()));
    if (oracle::group_order({{3, -2, -1}, {-1, -3, 2}}) != 24 || oracle::group_order({{4, 3, 1, 2}, {4, -2, -1, 3}}) != 192)
        o.fail("oracle disagrees");
    // Cayley table: closure plus agreement with matrix products
    for (const auto& a : g2)
        for (const auto& b : g2) {
            P c = compose(a, b);
            if (std::find(g2.begin(), g2.end(), c) == g2.end()) o.fail("not closed");
            auto ma = oracle::matrix(a.images()), mb = oracle::matrix(b.images());
            for (int x : {1, 2})
                if (c(x) != oracle::mat_apply(ma, oracle::mat_apply(mb, x))) o.fail("table entry " + c.to_string());
        }
    if (compose(named_perm("mu", 2), named_perm("tau_y", 2)) != named_perm("tau_d", 2)) o.fail("mu.tau_y != tau_d");
    if (o.pass) o.detail << "orders 24, 192, 8; 64 table entries";
}

void space_filling(Outcome& o) {
    for (int k = 1; k <= 8; ++k) {
        Polyline p = trace(generate_level("hilbert-original", k).digits, square_grid());
        long long side = 1LL << k;
        CoverageReport c = coverage_report(p, Box{{0, 0}, {side - 1, side - 1}});
        if (!c.complete() || c.total != side * side || p.vertices.size() != static_cast<std::size_t>(side * side))
            o.fail("hilbert k=" + std::to_string(k));
    }
    for (int k = 1; k <= 5; ++k) {
        Polyline p = trace(arndt_system().iterate(k), square_grid());
        LatticeEdgeReport le = lattice_edge_report(p);
        if (!le.all_edges_once || le.saturated_bad != 0) o.fail("arndt k=" + std::to_string(k));
    }
    for (int k = 1; k <= 6; ++k) {
        Polyline p = trace(generate_level("beta-omega", k).digits, square_grid());
        long long side = 1LL << k;
        if (p.vertices.size() != static_cast<std::size_t>(side * side) + 1) {
            o.fail("beta-omega k=" + std::to_string(k) + ": vertex count");
            continue;
        }
        // the exit vertex sits outside the square the others fill
        Polyline head{2, {p.vertices.begin(), p.vertices.end() - 1}, false};
        Box b = bounding_box(head);
        CoverageReport c = coverage_report(head, b);
        if (b.hi[0] - b.lo[0] + 1 != side || b.hi[1] - b.lo[1] + 1 != side || !c.complete() ||
            self_avoidance_report(head).max_vertex_multiplicity != 1)
            o.fail("beta-omega k=" + std::to_string(k));
    }
    if (o.pass) o.detail << "hilbert k<=8, arndt k<=5, beta-omega k<=6";
}

void hyper_orthogonality(Outcome& o) {
    struct Case {
        int d;
        EntryClass c;
        int max_k;
        const char* name;
    };
    for (Case cs : {Case{3, EntryClass::Origin, 4, "3D origin"}, Case{3, EntryClass::NonOrigin, 4, "3D other"},
                    Case{4, EntryClass::Origin, 3, "4D origin"}, Case{4, EntryClass::NonOrigin, 3, "4D other"}}) {
        SubstitutionSystem sys = hilbert_system(hilbert_spec(cs.d, cs.c));
        for (int k = 1; k <= cs.max_k; ++k)
            if (!is_hyper_orthogonal(sys.iterate(k), cs.d - 2))
                o.fail(std::string(cs.name) + " k=" + std::to_string(k));
    }
    for (int d = 2; d <= 10; ++d)
        if (!is_hyper_orthogonal(gray_sequence(d), d - 1)) o.fail("G(" + std::to_string(d) + ")");
    if (o.pass) o.detail << "3D order 1 to k=4, 4D order 2 to k=3, G(d) d<=10";
}

void geometry(Outcome& o) {
    const CatalogEntry& island = find_entry("flowsnake-island");
    Grid tri = entry_grid(island);
    for (int k = 0; k <= 4; ++k) {
        Point end = orientation(generate_level(island.id, k).digits, tri);
        for (const auto& x : end)
            if (x != Quad(0)) o.fail("island level " + std::to_string(k) + " not closed");
    }

    const CatalogEntry& v1 = find_entry("v1-dragon-square-diagonal");
    for (int k = 1; k <= 5; ++k) {
        Curve c = generate_level(v1.id, k);
        Polyline p = trace(c.digits, entry_grid(v1), &c.lengths);
        for (const auto& v : p.vertices)
            for (const auto& x : v)
                if (!x.is_integer()) o.fail("V1 vertex off Z^2 at level " + std::to_string(k));
    }

    const std::vector<int> reference = {0, 0, 1, 1, 0, 0, 1, 1, 2, 2, 1, 1, 0,
                                      0, 1, 1, 0, 0, 1, 1, 2, 2, 1, 1, 2, 2};
    Curve c = generate_entry("v1-dragon", 200);
    if (c.lengths.size() != 200) o.fail("length stream has " + std::to_string(c.lengths.size()) + " terms");
    for (std::size_t i = 0; i < c.lengths.size(); ++i) {
        int got = log_sqrt2(c.lengths[i]);
        if (got != oracle::ternary_ones(i / 2)) o.fail("log length mismatch at " + std::to_string(i + 1));
        if (i < reference.size() && got != reference[i]) o.fail("reference term " + std::to_string(i + 1));
    }
    if (o.pass) o.detail << "island closed k<=4, V1 on Z^2 k<=5, 200 log-lengths incl. 26 reference terms";
}

void algebra(Outcome& o) {
    props::Tally all;
    const char* names[] = {"involution", "anti-morphism", "commutation", "normalization", "order"};
    props::Tally parts[] = {props::involution(20000), props::anti_morphism(20000), props::commutation(20000),
                            props::normalization(20000), props::order_totality(20000)};
    for (int i = 0; i < 5; ++i) {
        report_tally(o, parts[i], 20000, names[i]);
        all += parts[i];
    }
    if (o.pass) o.detail << all.cases << " cases, 0 failures";
}

Criterion determinism(const std::string& cli) {
    return [cli](Outcome& o) {
        auto tmp = [](const std::string& n) {
            return (std::filesystem::temp_directory_path() / ("fracseq-accept-" + n)).string();
        };
        auto same = [&](const std::string& what, const std::string& a, const std::string& b) {
            if (a.empty() || a != b) o.fail(what + " differs or is empty");
        };
        const std::string ids = "dekking-flowsnake flowsnake-island gray hilbert-4d-origin beta-omega v1-dragon";
        auto g1 = clitest::run(cli, "gen " + ids + " -n 2000 -j 1");
        auto g2 = clitest::run(cli, "gen " + ids + " -n 2000 -j 1");
        auto g4 = clitest::run(cli, "gen " + ids + " -n 2000 -j 4");
        if (g1.code != 0) o.fail("gen exit " + std::to_string(g1.code) + ": " + g1.err);
        same("gen across runs", g1.out, g2.out);
        same("gen across thread counts", g1.out, g4.out);

        for (const char* id : {"hilbert-original", "beta-omega", "v1-dragon"}) {
            std::string a = tmp(std::string(id) + "-a.svg"), b = tmp(std::string(id) + "-b.svg");
            int ra = clitest::run(cli, std::string("render ") + id + " --level 4 --out " + a).code;
            int rb = clitest::run(cli, std::string("render ") + id + " --level 4 --out " + b).code;
            if (ra || rb) o.fail(std::string("render ") + id + " failed");
            same(std::string("render ") + id, clitest::slurp(a), clitest::slurp(b));
        }
        std::string obj_a = tmp("h3-a.obj"), obj_b = tmp("h3-b.obj");
        clitest::run(cli, "render hilbert-3d-origin --level 3 --out " + obj_a);
        clitest::run(cli, "render hilbert-3d-origin --level 3 --out " + obj_b);
        same("render obj", clitest::slurp(obj_a), clitest::slurp(obj_b));

        std::string b1 = tmp("b1.txt"), b2 = tmp("b2.txt"), b4 = tmp("b4.txt");
        clitest::run(cli, "gen gray -n 10000 --bfile " + b1 + " -j 1");
        clitest::run(cli, "gen gray -n 10000 --bfile " + b2 + " -j 1");
        clitest::run(cli, "gen gray -n 10000 --bfile " + b4 + " -j 4");
        same("bfile across runs", clitest::slurp(b1), clitest::slurp(b2));
        same("bfile across thread counts", clitest::slurp(b1), clitest::slurp(b4));
        if (o.pass) o.detail << "gen, render (svg, obj), bfile identical";
    };
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <fracseq-cli>\n", argv[0]);
        return 2;
    }
    const std::vector<Criterion> criteria = {golden_prefixes, gray_ruler, parity_theorem,
                                             group_sizes,     space_filling, hyper_orthogonality,
                                             geometry,        algebra,    determinism(argv[1])};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i](o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("criterion %zu: %s %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
