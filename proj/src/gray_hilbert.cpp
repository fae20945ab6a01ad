#include "fracseq/gray_hilbert.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace fracseq {

namespace {

Digits negated_reverse(const Digits& s) {
    Digits out(s.rbegin(), s.rend());
    for (auto& x : out) x = -x;
    return out;
}

using Lattice = std::vector<std::vector<long long>>;

Lattice walk(const Digits& s, int d) {
    Lattice out;
    out.reserve(s.size() + 1);
    out.emplace_back(static_cast<std::size_t>(d), 0);
    for (int x : s) {
        if (x == 0 || std::abs(x) > d) throw std::invalid_argument("digit " + std::to_string(x) + " outside dimension " +
                                                                   std::to_string(d));
        auto v = out.back();
        v[static_cast<std::size_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
        out.push_back(std::move(v));
    }
    return out;
}

struct RawRow {
    std::vector<int> perm;
    int type;
};

std::vector<HilbertRow> rows_of(const std::vector<RawRow>& raw) {
    std::vector<HilbertRow> out;
    for (const auto& r : raw) out.push_back({SignedPermutation(r.perm), r.type});
    return out;
}

// Reference tables.  The 4D non-origin tables carry no type column.
const std::vector<RawRow> k3_origin_1 = {
    {{2, 3, 1}, 2},   {{3, 1, 2}, 2},   {{3, 1, 2}, 1},   {{-2, -1, 3}, 2},
    {{-2, -1, 3}, 1}, {{-3, 1, -2}, 2}, {{-3, 1, -2}, 1}, {{-3, 2, -1}, 1},
};
const std::vector<RawRow> k3_origin_2 = {
    {{3, 2, 1}, 2},   {{3, 1, 2}, 2},   {{3, 1, 2}, 1},   {{-2, -1, 3}, 2},
    {{-2, -1, 3}, 1}, {{-3, 1, -2}, 2}, {{-3, 1, -2}, 1}, {{2, -3, -1}, 1},
};
const std::vector<RawRow> k3_other_1 = {
    {{-2, -1, 3}, 1}, {{-3, -2, 1}, 1}, {{-3, 2, -1}, 2}, {{2, -3, -1}, 1},
    {{2, 3, 1}, 2},   {{3, 2, 1}, 1},   {{3, -2, -1}, 2}, {{3, -1, -2}, 2},
};
const std::vector<RawRow> k3_other_2 = {
    {{-3, -1, 2}, 1}, {{-3, -2, 1}, 1}, {{-3, 2, -1}, 2}, {{2, -3, -1}, 1},
    {{2, 3, 1}, 2},   {{3, 2, 1}, 1},   {{3, -2, -1}, 2}, {{-2, -1, 3}, 2},
};
const std::vector<RawRow> k4_origin_1 = {
    {{3, 2, 4, 1}, 2},    {{3, 4, 1, 2}, 2},    {{4, 3, 1, 2}, 1},    {{4, -2, -1, 3}, 2},
    {{4, -2, -1, 3}, 1},  {{4, -3, 1, -2}, 2},  {{-3, 4, 1, -2}, 1},  {{-3, 2, -1, 4}, 2},
    {{-3, 2, -1, 4}, 1},  {{-3, -4, 1, 2}, 2},  {{-4, -3, 1, 2}, 1},  {{-4, -2, -1, -3}, 2},
    {{-4, -2, -1, -3}, 1}, {{-4, 3, 1, -2}, 2}, {{-4, 3, 1, -2}, 1},  {{-4, 2, 3, -1}, 1},
};
const std::vector<RawRow> k4_origin_2 = {
    {{4, 2, 3, 1}, 2},    {{4, 3, 1, 2}, 2},    {{4, 3, 1, 2}, 1},    {{4, -2, -1, 3}, 2},
    {{4, -2, -1, 3}, 1},  {{4, -3, 1, -2}, 2},  {{-3, 4, 1, -2}, 1},  {{-3, 2, -1, 4}, 2},
    {{-3, 2, -1, 4}, 1},  {{-3, -4, 1, 2}, 2},  {{-4, -3, 1, 2}, 1},  {{-4, -2, -1, -3}, 2},
    {{-4, -2, -1, -3}, 1}, {{-4, 3, 1, -2}, 2}, {{3, -4, 1, -2}, 1},  {{3, 2, -4, -1}, 1},
};
const std::vector<RawRow> k4_other_1 = {
    {{-3, -2, -1, 4}, 0}, {{-3, -4, -2, 1}, 0}, {{-4, -3, 2, -1}, 0}, {{-4, 2, -3, -1}, 0},
    {{-4, 2, 3, 1}, 0},   {{-4, 3, 2, 1}, 0},   {{3, -4, -2, -1}, 0}, {{3, -2, -4, -1}, 0},
    {{3, -2, 4, 1}, 0},   {{3, 4, -2, 1}, 0},   {{4, 3, 2, -1}, 0},   {{4, 2, 3, -1}, 0},
    {{4, 2, -3, 1}, 0},   {{4, -3, 2, 1}, 0},   {{4, -3, -2, -1}, 0}, {{4, -2, -1, -3}, 0},
};
const std::vector<RawRow> k4_other_2 = {
    {{-4, -2, -1, 3}, 0}, {{-4, -3, -2, 1}, 0}, {{-4, -3, 2, -1}, 0}, {{4, -2, -1, 3}, 0},
    {{-4, 2, 3, 1}, 0},   {{-4, 3, 2, 1}, 0},   {{3, -4, -2, -1}, 0}, {{3, -2, -4, -1}, 0},
    {{3, -2, 4, 1}, 0},   {{3, 4, -2, 1}, 0},   {{4, 3, 2, -1}, 0},   {{4, 2, 3, -1}, 0},
    {{4, 2, -3, 1}, 0},   {{4, -3, 2, 1}, 0},   {{-3, 4, -2, -1}, 0}, {{-3, -2, -1, 4}, 0},
};

Digits expected_exits(int d, int state) {
    Digits e = gray_sequence(d);
    e.push_back(state == 1 ? -(d - 1) : d);
    return e;
}

int entry_digit(int d, int type) { return type == 1 ? d : d - 1; }

// One step from the extended Gray starts; blocks after the first lose their entry edge.
std::vector<Digits> hilbert_step(const HilbertSpec& spec, const std::vector<Digits>& cur) {
    std::vector<Digits> next(2);
    for (int st = 0; st < 2; ++st) {
        const auto& rows = st == 0 ? spec.rows1 : spec.rows2;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Digits blk = rows[i].perm.apply(cur.at(static_cast<std::size_t>(rows[i].type - 1)));
            next[st].insert(next[st].end(), blk.begin() + (i ? 1 : 0), blk.end());
        }
    }
    return next;
}

}  // namespace

Digits gray_sequence(int d) {
    if (d < 0) throw std::invalid_argument("gray dimension must be non-negative");
    if (d > 30) throw std::length_error("gray dimension too large");
    Digits g;
    for (int k = 1; k <= d; ++k) {
        Digits tail = negated_reverse(g);
        g.push_back(k);
        g.insert(g.end(), tail.begin(), tail.end());
    }
    return g;
}

Digits gray_extended(int d, int type) {
    if (d < 2) throw std::invalid_argument("extended Gray curve needs d >= 2");
    if (type != 1 && type != 2) throw std::invalid_argument("extension type is 1 or 2");
    Digits out{type == 1 ? d : d - 1};
    Digits g = gray_sequence(d);
    out.insert(out.end(), g.begin(), g.end());
    out.push_back(type == 1 ? -(d - 1) : d);
    return out;
}

int gray_function(int d, unsigned long long n) {
    if (d < 1 || d > 63) throw std::invalid_argument("gray dimension out of range");
    if (n < 1 || n >= (1ULL << d)) throw std::out_of_range("gray index " + std::to_string(n) + " outside 1.." +
                                                           std::to_string((1ULL << d) - 1));
    int axis = std::countr_zero(n) + 1;
    unsigned long long code = n ^ (n >> 1);
    return (code >> (axis - 1)) & 1ULL ? axis : -axis;
}

bool is_hyper_orthogonal(const Digits& s, int order) {
    if (order < 1) throw std::invalid_argument("hyper-orthogonality order must be >= 1");
    int d = 0;
    for (int x : s) d = std::max(d, std::abs(x));
    Lattice v = walk(s, d);
    for (int k = 1; k <= order; ++k) {
        std::size_t w = std::size_t{1} << k;
        if (w > s.size()) break;
        for (std::size_t start = 0; start + w <= s.size(); ++start) {
            std::set<int> axes;
            for (std::size_t i = start; i < start + w; ++i) axes.insert(std::abs(s[i]));
            if (static_cast<int>(axes.size()) != k + 1) return false;
            for (int a = 0; a < d; ++a) {
                long long lo = v[start][a], hi = lo;
                for (std::size_t i = start + 1; i <= start + w; ++i) {
                    lo = std::min(lo, v[i][a]);
                    hi = std::max(hi, v[i][a]);
                }
                if (hi - lo > 1) return false;
            }
        }
    }
    return true;
}

HilbertSpec hilbert_spec_verbatim(int d, EntryClass entry) {
    HilbertSpec spec;
    spec.d = d;
    spec.entry = entry;
    bool origin = entry == EntryClass::Origin;
    if (d == 3) {
        spec.name = origin ? "hilbert-3d-origin" : "hilbert-3d-other";
        spec.rows1 = rows_of(origin ? k3_origin_1 : k3_other_1);
        spec.rows2 = rows_of(origin ? k3_origin_2 : k3_other_2);
        spec.output_type = origin ? 2 : 1;
        spec.normalizer = {SignedPermutation(origin ? std::vector<int>{3, 2, 1} : std::vector<int>{-2, -1, 3}),
                           Exponent::KPlus1};
    } else if (d == 4) {
        spec.name = origin ? "hilbert-4d-origin" : "hilbert-4d-other";
        spec.rows1 = rows_of(origin ? k4_origin_1 : k4_other_1);
        spec.rows2 = rows_of(origin ? k4_origin_2 : k4_other_2);
        spec.output_type = origin ? 2 : 1;
        spec.normalizer = {
            SignedPermutation(origin ? std::vector<int>{4, 2, 3, 1} : std::vector<int>{-3, -2, -1, 4}),
            Exponent::KPlus1Mod2};
    } else {
        throw std::invalid_argument("Hilbert tables exist for d = 3 and d = 4 only");
    }
    return spec;
}

HilbertSpec hilbert_spec(int d, EntryClass entry) {
    HilbertSpec spec = hilbert_spec_verbatim(d, entry);
    if (d == 4 && entry == EntryClass::NonOrigin) {
        // Row 4 of H'' as given leaves holes in the 2-curve; the H' row is the only fit.
        spec.rows2[3] = {SignedPermutation({-4, 2, -3, -1}), 1};
    }
    infer_types(spec);
    return spec;
}

int hilbert_exit(const HilbertRow& row, int d) { return row.perm(row.type == 1 ? -(d - 1) : d); }

int infer_type(const SignedPermutation& perm, int exit_edge, int d) {
    bool t1 = perm(-(d - 1)) == exit_edge;
    bool t2 = perm(d) == exit_edge;
    return t1 && t2 ? 3 : t1 ? 1 : t2 ? 2 : 0;
}

void infer_types(HilbertSpec& spec) {
    for (int st = 1; st <= 2; ++st) {
        auto& rows = st == 1 ? spec.rows1 : spec.rows2;
        Digits exits = expected_exits(spec.d, st);
        for (std::size_t i = 0; i < rows.size() && i < exits.size(); ++i) {
            if (rows[i].type != 0) continue;
            int t = infer_type(rows[i].perm, exits[i], spec.d);
            if (t == 0 || t == 3)
                throw std::invalid_argument("cannot infer the type of row " + std::to_string(i + 1) + " of state " +
                                            std::to_string(st));
            rows[i].type = t;
        }
    }
}

HilbertTableReport validate_hilbert_spec(const HilbertSpec& spec, bool geometric) {
    HilbertTableReport r;
    const int d = spec.d;
    const std::size_t rows = std::size_t{1} << d;
    r.row_counts = spec.rows1.size() == rows && spec.rows2.size() == rows;
    if (!r.row_counts) r.problems.push_back("each state needs " + std::to_string(rows) + " rows");
    r.typed = true;
    for (const auto* tab : {&spec.rows1, &spec.rows2})
        for (const auto& row : *tab) {
            if (row.type != 1 && row.type != 2) r.typed = false;
            if (row.perm.size() != d) r.typed = false;
        }
    if (!r.typed) r.problems.push_back("rows need a type of 1 or 2 and perms of size " + std::to_string(d));
    if (!r.row_counts || !r.typed) return r;

    r.exits = true;
    r.chained = true;
    for (int st = 1; st <= 2; ++st) {
        const auto& tab = st == 1 ? spec.rows1 : spec.rows2;
        Digits exits = expected_exits(d, st);
        int own_entry = entry_digit(d, st);
        for (std::size_t i = 0; i < rows; ++i) {
            int ex = hilbert_exit(tab[i], d);
            if (ex != exits[i]) {
                r.exits = false;
                r.problems.push_back("state " + std::to_string(st) + " row " + std::to_string(i + 1) + " exits along " +
                                     std::to_string(ex) + ", expected " + std::to_string(exits[i]));
            }
            int in = tab[i].perm(entry_digit(d, tab[i].type));
            int want = i == 0 ? own_entry : hilbert_exit(tab[i - 1], d);
            if (in != want) {
                r.chained = false;
                r.problems.push_back("state " + std::to_string(st) + " row " + std::to_string(i + 1) + " enters along " +
                                     std::to_string(in) + ", expected " + std::to_string(want));
            }
        }
    }
    if (!geometric) {
        r.geometry = true;
        return r;
    }
    auto next = hilbert_step(spec, {gray_extended(d, 1), gray_extended(d, 2)});
    r.geometry = true;
    for (int st = 0; st < 2; ++st) {
        const Digits& full = next[st];
        Digits curve(full.begin() + 1, full.end() - 1);
        Lattice v = walk(curve, d);
        std::set<std::vector<long long>> seen(v.begin(), v.end());
        // the walk starts at the entry point, which need not be a corner
        bool inside = !v.empty();
        for (int a = 0; inside && a < d; ++a) {
            auto [lo, hi] = std::minmax_element(v.begin(), v.end(),
                                                [a](const auto& p, const auto& q) { return p[a] < q[a]; });
            inside = (*hi)[a] - (*lo)[a] == 3;
        }
        std::size_t want = std::size_t{1} << (2 * d);
        if (seen.size() != want || v.size() != want) {
            r.geometry = false;
            r.problems.push_back("state " + std::to_string(st + 1) + " 2-curve visits " + std::to_string(seen.size()) +
                                 " distinct of " + std::to_string(v.size()) + " vertices, want " + std::to_string(want));
        }
        if (!inside) {
            r.geometry = false;
            r.problems.push_back("state " + std::to_string(st + 1) + " 2-curve does not span a 4^d cube");
        }
        if (!is_hyper_orthogonal(full, d - 2)) {
            r.geometry = false;
            r.problems.push_back("state " + std::to_string(st + 1) + " 2-curve is not " + std::to_string(d - 2) +
                                 "-hyper-orthogonal");
        }
    }
    return r;
}

SubstitutionSystem hilbert_system(const HilbertSpec& spec) {
    HilbertTableReport rep = validate_hilbert_spec(spec);
    if (!rep.ok()) {
        std::string msg = "inconsistent Hilbert table " + spec.name;
        for (const auto& p : rep.problems) msg += "; " + p;
        throw std::invalid_argument(msg);
    }
    SubstitutionSystem sys;
    sys.name = spec.name;
    sys.kind = RuleKind::Wholecurve;
    sys.digiset = Digiset::bounded(spec.d);
    int h1 = sys.whole.add_state("H'", gray_extended(spec.d, 1));
    int h2 = sys.whole.add_state("H''", gray_extended(spec.d, 2));
    for (int st : {h1, h2}) {
        const auto& rows = st == h1 ? spec.rows1 : spec.rows2;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Atom a;
            a.kind = Atom::Kind::State;
            a.state = rows[i].type == 1 ? h1 : h2;
            a.term.perm = rows[i].perm;
            a.drop_head = i ? 1 : 0;
            sys.whole.productions[st].push_back(a);
        }
    }
    sys.start_level = 1;
    sys.output_state = spec.output_type == 1 ? h1 : h2;
    sys.drop_head = 1;
    sys.drop_tail = 1;
    sys.normalizer = spec.normalizer;
    return sys;
}

long long entry_coordinate(int k, int thirds) {
    if (k < 1) throw std::invalid_argument("entry level must be >= 1");
    if (thirds != 1 && thirds != 2) throw std::invalid_argument("entry parameter is 1/3 or 2/3");
    // Binary digits of 1/3 are 0101..., of 2/3 are 1010...
    long long e = thirds == 1 ? 0 : 1;
    for (int j = 1; j < k; ++j) e = 2 * e + (thirds == 1 ? j % 2 : (j + 1) % 2);
    return e;
}

std::vector<long long> entry_point(int d, int k, int type, int thirds) {
    if (d < 3) throw std::invalid_argument("entry points are defined for d >= 3");
    if (type != 1 && type != 2) throw std::invalid_argument("entry type is 1 or 2");
    long long e = entry_coordinate(k, thirds);
    std::vector<long long> p(static_cast<std::size_t>(d), e);
    p[static_cast<std::size_t>(type == 1 ? d - 1 : d - 2)] = 0;
    return p;
}

}  // namespace fracseq
