// fracseq: command line front end for the curve catalog and the sequence algebra.
#include "fracseq/catalog.hpp"
#include "fracseq/grid.hpp"
#include "fracseq/perm.hpp"
#include "fracseq/rule_file.hpp"
#include "fracseq/sequence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace fracseq;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Usage problems detected after parsing (bad ids, bad literals).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const CatalogEntry& entry_or_usage(const std::string& id) {
    try {
        return find_entry(id);
    } catch (const std::out_of_range&) {
        throw UsageError("unknown entry '" + id + "' (see 'fracseq list')");
    }
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

// Runs fn(i) for i < n on up to `threads` workers; results land by index.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
    std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1, n ? n : 1);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    // lowest index first, so the reported error does not depend on scheduling
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string prefix_text(const Digits& d, std::size_t show) {
    Digits head(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(std::min(show, d.size())));
    std::string s = format_digits(head);
    if (d.size() > show) s.insert(s.size() - 1, ",...");
    return s;
}

std::string lengths_text(const std::vector<Quad>& ls) {
    std::string s = "<";
    for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? "," : "") + ls[i].to_string();
    return s + ">";
}

int cmd_list() {
    std::printf("%-28s %-10s %-9s %-8s %s\n", "id", "kind", "digiset", "oeis", "prefix");
    for (const auto& e : catalog_list()) {
        std::printf("%-28s %-10s %-9s %-8s %s\n", e.id.c_str(), kind_text(e.system->kind).c_str(),
                    e.digiset().to_string().c_str(), e.oeis.empty() ? "-" : e.oeis.c_str(),
                    prefix_text(e.expected_prefix, 12).c_str());
    }
    return kOk;
}

struct GenOpts {
    std::vector<std::string> ids;
    std::size_t terms = 0;
    int level = -1;
    std::string bfile;
    bool lengths = false;
    int threads = 1;
};

// "<id>-lengths" names the length stream of <id>.
std::pair<std::string, bool> split_lengths(const std::string& id, bool flag) {
    constexpr std::string_view suffix = "-lengths";
    if (id.ends_with(suffix) && id.size() > suffix.size()) return {id.substr(0, id.size() - suffix.size()), true};
    return {id, flag};
}

int cmd_gen(const GenOpts& o) {
    if (o.terms > 0 && o.level >= 0) throw UsageError("--terms and --level are exclusive");
    if (!o.bfile.empty() && o.ids.size() != 1) throw UsageError("--bfile takes a single entry");
    for (const auto& id : o.ids) entry_or_usage(split_lengths(id, false).first);

    std::vector<std::string> out(o.ids.size());
    parallel_for(o.ids.size(), o.threads, [&](std::size_t i) {
        auto [base, lengths] = split_lengths(o.ids[i], o.lengths);
        const CatalogEntry& e = find_entry(base);
        Curve c = o.level >= 0 ? generate_level(e.id, o.level)
                               : generate_entry(e.id, o.terms ? o.terms : e.expected_prefix.size());
        if (lengths && c.lengths.empty()) throw std::invalid_argument("entry '" + e.id + "' has no length stream");
        if (!o.bfile.empty()) {
            out[i] = export_bfile(lengths ? e.id + "-lengths" : e.id, c.digits.size());
            return;
        }
        out[i] = format_digits(c.digits) + "\n";
        if (lengths) out[i] += lengths_text(c.lengths) + "\n";
    });
    if (!o.bfile.empty()) {
        write_file(o.bfile, out[0]);
        return kOk;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (o.ids.size() > 1) std::cout << o.ids[i] << ": ";
        std::cout << out[i];
    }
    return kOk;
}

struct RenderOpts {
    std::string id;
    int level = 3;
    std::string out;
    bool rounded = false;
    std::string projection = "none";
    std::string format;
    double scale = 10.0;
    double stroke = 1.0;
};

int cmd_render(const RenderOpts& o) {
    const CatalogEntry& e = entry_or_usage(o.id);
    std::string fmt = o.format;
    if (fmt.empty()) {
        auto dot = o.out.rfind('.');
        fmt = dot == std::string::npos ? "svg" : o.out.substr(dot + 1);
    }
    if (fmt != "svg" && fmt != "csv" && fmt != "obj") throw UsageError("unknown format '" + fmt + "'");
    Polyline p = draw_level(e.id, o.level);
    std::string data;
    if (fmt == "csv") {
        data = export_csv(p);
    } else if (fmt == "obj") {
        data = export_obj(p);
    } else {
        RenderOptions ro;
        ro.rounded_corners = o.rounded;
        ro.scale = o.scale;
        ro.stroke_width = o.stroke;
        if (o.projection == "iso") ro.projection = Projection::Isometric;
        else if (o.projection == "ortho") ro.projection = Projection::Orthographic;
        else if (o.projection != "none") throw UsageError("unknown projection '" + o.projection + "'");
        if (p.dim == 3 && ro.projection == Projection::Identity) ro.projection = Projection::Isometric;
        if (p.dim > 3) throw UsageError(std::to_string(p.dim) + "D curves export as csv or obj, not svg");
        data = svg_export(p, ro);
    }
    if (o.out.empty() || o.out == "-") std::cout << data;
    else write_file(o.out, data);
    return kOk;
}

json report_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"id", r.id}, {"ok", r.ok()}, {"checks", checks}};
}

int cmd_verify(const std::string& id, bool all, bool as_json, int threads) {
    std::vector<std::string> ids;
    if (!id.empty()) {
        if (all) throw UsageError("give an id or --all, not both");
        ids.push_back(entry_or_usage(id).id);
    } else {
        for (const auto& e : catalog_list()) ids.push_back(e.id);
    }
    std::vector<VerificationReport> reps(ids.size());
    parallel_for(ids.size(), threads, [&](std::size_t i) { reps[i] = verify_entry(ids[i]); });
    bool ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.ok(); });
    if (as_json) {
        json arr = json::array();
        for (const auto& r : reps) arr.push_back(report_json(r));
        std::cout << json{{"ok", ok}, {"entries", arr}}.dump(2) << "\n";
    } else {
        for (const auto& r : reps) {
            std::cout << (r.ok() ? "PASS " : "FAIL ") << r.id << "\n";
            for (const auto& c : r.checks)
                std::cout << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
        }
    }
    return ok ? kOk : kFailed;
}

SignedPermutation perm_arg(const std::string& s) {
    try {
        return parse_perm(s);
    } catch (const std::exception& ex) {
        throw UsageError(std::string("bad perm: ") + ex.what());
    }
}

SignedSequence seq_arg(const std::string& s) {
    try {
        return parse_sequence(s);
    } catch (const std::exception& ex) {
        throw UsageError(std::string("bad sequence: ") + ex.what());
    }
}

int cmd_perm(const std::string& op, const std::vector<std::string>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw UsageError("perm " + op + " takes " + std::to_string(n) + " argument(s)");
    };
    if (op == "compose") {
        if (args.size() < 2) throw UsageError("perm compose takes two or more perms");
        SignedPermutation acc = perm_arg(args[0]);
        for (std::size_t i = 1; i < args.size(); ++i) acc = compose(acc, perm_arg(args[i]));
        std::cout << acc.to_string() << "\n";
    } else if (op == "invert") {
        need(1);
        std::cout << invert(perm_arg(args[0])).to_string() << "\n";
    } else if (op == "parity") {
        need(1);
        std::cout << (parity(perm_arg(args[0])) > 0 ? "+1" : "-1") << "\n";
    } else if (op == "apply") {
        need(2);
        SignedPermutation p = perm_arg(args[0]);
        SignedSequence s = seq_arg(args[1]);
        if (s.max_magnitude() > p.size()) throw UsageError("sequence uses digits beyond the perm size");
        std::cout << apply(p, s).to_string() << "\n";
    } else {
        throw UsageError("unknown perm operation '" + op + "'");
    }
    return kOk;
}

int cmd_seq(const std::string& op, const std::vector<std::string>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw UsageError("seq " + op + " takes " + std::to_string(n) + " argument(s)");
    };
    if (op == "normalize") {
        need(1);
        SignedSequence s = seq_arg(args[0]);
        CharacteristicPerm cp = characteristic_perm(s);
        std::cout << apply(cp.perm, s).to_string() << "\n";
        std::cout << "perm " << cp.perm.to_string() << (cp.completed ? " (completed)" : "") << "\n";
    } else if (op == "minimal") {
        need(1);
        std::cout << minimal_normalized(seq_arg(args[0])).to_string() << "\n";
    } else if (op == "compare") {
        need(2);
        auto c = compare(seq_arg(args[0]), seq_arg(args[1]));
        std::cout << (c < 0 ? "<" : c > 0 ? ">" : "=") << "\n";
    } else if (op == "fold") {
        if (args.empty()) throw UsageError("seq fold takes a list of digits");
        std::vector<int> xs;
        for (const auto& a : args) {
            Digits d = seq_arg(a).items();
            xs.insert(xs.end(), d.begin(), d.end());
        }
        std::cout << fold(xs).to_string() << "\n";
    } else {
        throw UsageError("unknown seq operation '" + op + "'");
    }
    return kOk;
}

int cmd_rule_check(const std::string& path, int levels) {
    SubstitutionSystem sys;
    try {
        sys = load_rule_file(path);
    } catch (const RuleError& ex) {
        std::cerr << ex.what() << "\n";
        return kFailed;
    }
    RuleDiagnostics d = diagnose(sys, levels);
    std::cout << "name: " << sys.name << "\n";
    std::cout << "kind: " << kind_text(sys.kind) << "\n";
    std::cout << "digiset: " << sys.digiset.to_string() << "\n";
    std::cout << "expansive: " << (d.expansive ? "yes" : "no") << "\n";
    if (sys.kind == RuleKind::Digitwise) std::cout << "negation symmetric: " << (d.negation_symmetric ? "yes" : "no") << "\n";
    for (const auto& [name, ok] : d.commutation) std::cout << "commutes with " << name << ": " << (ok ? "yes" : "no") << "\n";
    if (!d.undefined.empty()) {
        std::cout << "undefined tokens:";
        for (const auto& t : d.undefined) std::cout << " " << t;
        std::cout << "\n";
    }
    std::cout << "extending to level " << d.extending_levels << ": " << (d.extending ? "yes" : "no") << "\n";
    std::cout << "lengths:";
    for (auto n : d.lengths) std::cout << " " << n;
    std::cout << "\n";
    bool ok = d.undefined.empty() && (d.expansive || sys.kind == RuleKind::Pairlift);
    return ok ? kOk : kFailed;
}

int cmd_rule_gen(const std::string& path, int level, std::size_t terms) {
    SubstitutionSystem sys;
    try {
        sys = load_rule_file(path);
    } catch (const RuleError& ex) {
        std::cerr << ex.what() << "\n";
        return kFailed;
    }
    Curve c = terms ? sys.prefix(terms) : sys.iterate_curve(level);
    std::cout << format_digits(c.digits) << "\n";
    if (!c.lengths.empty()) std::cout << lengths_text(c.lengths) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracseq: fractal curves as signed integer sequences"};
    app.require_subcommand(1);
    app.allow_extras(false);

    app.add_subcommand("list", "catalog in index order");

    GenOpts gen;
    auto* g = app.add_subcommand("gen", "print a catalog sequence");
    g->add_option("id", gen.ids, "entry id(s); <id>-lengths for the length stream")->required();
    g->add_option("--terms,-n", gen.terms, "number of terms (default: the stored prefix length)");
    g->add_option("--level,-k", gen.level, "full k-curve instead of a prefix");
    g->add_option("--bfile", gen.bfile, "write a b-file instead of printing");
    g->add_flag("--lengths", gen.lengths, "also print the length stream");
    g->add_option("--threads,-j", gen.threads, "worker threads for several ids")->check(CLI::PositiveNumber);

    RenderOpts ren;
    auto* r = app.add_subcommand("render", "draw a k-curve");
    r->add_option("id", ren.id)->required();
    r->add_option("--level,-k", ren.level)->required();
    r->add_option("--out,-o", ren.out, "output path, '-' for stdout")->required();
    r->add_flag("--rounded", ren.rounded, "cut corners");
    r->add_option("--projection", ren.projection, "none, iso or ortho (3D curves)");
    r->add_option("--format", ren.format, "svg, csv or obj (default from the extension)");
    r->add_option("--scale", ren.scale)->check(CLI::PositiveNumber);
    r->add_option("--stroke", ren.stroke)->check(CLI::PositiveNumber);

    std::string vid;
    bool vall = false, vjson = false;
    int vthreads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto* v = app.add_subcommand("verify", "check catalog entries");
    v->add_option("id", vid);
    v->add_flag("--all", vall);
    v->add_flag("--json", vjson);
    v->add_option("--threads,-j", vthreads)->check(CLI::PositiveNumber);

    std::string pop;
    // operands are taken raw: CLI11 would split [..] literals and read -2,1 as an option
    auto* p = app.add_subcommand("perm", "signed permutation arithmetic");
    p->add_option("op", pop, "compose, invert, parity or apply")->required();
    p->allow_extras();

    std::string sop;
    auto* s = app.add_subcommand("seq", "sequence algebra");
    s->add_option("op", sop, "normalize, minimal, compare or fold")->required();
    s->allow_extras();

    auto* rule = app.add_subcommand("rule", "rule files");
    rule->require_subcommand(1);
    std::string rfile;
    int rlevels = 4;
    auto* rc = rule->add_subcommand("check", "parse and diagnose a rule file");
    rc->add_option("file", rfile)->required();
    rc->add_option("--levels", rlevels)->check(CLI::NonNegativeNumber);
    int rlevel = 3;
    std::size_t rterms = 0;
    auto* rg = rule->add_subcommand("gen", "iterate a rule file");
    rg->add_option("file", rfile)->required();
    rg->add_option("--level,-k", rlevel)->check(CLI::NonNegativeNumber);
    rg->add_option("--terms,-n", rterms);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand(g)) return cmd_gen(gen);
        if (app.got_subcommand(r)) return cmd_render(ren);
        if (app.got_subcommand(v)) return cmd_verify(vid, vall, vjson, vthreads);
        if (app.got_subcommand(p)) return cmd_perm(pop, p->remaining());
        if (app.got_subcommand(s)) return cmd_seq(sop, s->remaining());
        if (rule->got_subcommand(rc)) return cmd_rule_check(rfile, rlevels);
        if (rule->got_subcommand(rg)) return cmd_rule_gen(rfile, rlevel, rterms);
    } catch (const UsageError& e) {
        std::cerr << "fracseq: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "fracseq: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
