#include "fracseq/rule_file.hpp"
#include "fracseq/catalog.hpp"
#include "text.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace fracseq {

RuleError::RuleError(std::string origin, int line, int column, const std::string& msg)
    : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      origin_(std::move(origin)),
      line_(line),
      column_(column) {}

namespace {

struct Word {
    std::string text;
    int col = 1;
};

bool opens(std::string_view s, std::size_t i, std::size_t& width) {
    if (s[i] == '[' || s[i] == '<') return width = 1, true;
    if (s.compare(i, 3, "\xE2\x9F\xA8") == 0) return width = 3, true;
    return false;
}

bool closes(std::string_view s, std::size_t i, std::size_t& width) {
    if (s[i] == ']' || s[i] == '>') return width = 1, true;
    if (s.compare(i, 3, "\xE2\x9F\xA9") == 0) return width = 3, true;
    return false;
}

// Whitespace splits words except inside brackets; '#' starts a comment.
std::vector<Word> split_words(std::string_view line) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        Word w;
        w.col = static_cast<int>(i) + 1;
        int depth = 0;
        while (i < line.size()) {
            std::size_t width = 1;
            if (depth == 0 && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == '#')) break;
            if (opens(line, i, width)) {
                ++depth;
            } else if (depth > 0 && closes(line, i, width)) {
                --depth;
            }
            w.text.append(line.substr(i, width));
            i += width;
        }
        out.push_back(std::move(w));
    }
    return out;
}

std::string join(const std::vector<Word>& w, std::size_t from, const char* sep = " ") {
    std::string out;
    for (std::size_t i = from; i < w.size(); ++i) {
        if (i > from) out += sep;
        out += w[i].text;
    }
    return out;
}

// Position of `c` outside brackets, npos when absent.
std::size_t find_top(std::string_view s, char c, std::size_t from = 0) {
    int depth = 0;
    for (std::size_t i = from; i < s.size(); ++i) {
        if (s[i] == '[' || s[i] == '<') ++depth;
        else if ((s[i] == ']' || s[i] == '>') && depth > 0) --depth;
        else if (depth == 0 && s[i] == c) return i;
    }
    return std::string_view::npos;
}

SignedPermutation perm_atom(std::string_view text, int n, bool positive_only) {
    std::string_view base = text;
    long long e = 1;
    std::size_t caret = find_top(text, '^');
    if (caret != std::string_view::npos) {
        base = text.substr(0, caret);
        e = detail::parse_int(text.substr(caret + 1));
    }
    SignedPermutation p;
    if (!base.empty() && base.front() == '[') {
        p = parse_perm(base);
    } else {
        if (n <= 0) throw std::invalid_argument("named perm '" + std::string(base) + "' needs a bounded digiset first");
        std::string name = detail::lower(base);
        if (name == "neg") name = "negation";
        p = named_perm(name, n, positive_only);
    }
    return power(p, e);
}

// Products a.b.c compose right to left, as written.
SignedPermutation perm_product(std::string_view text, int n, bool positive_only) {
    std::optional<SignedPermutation> acc;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = find_top(text, '.', start);
        auto part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (part.empty()) throw std::invalid_argument("empty perm in '" + std::string(text) + "'");
        SignedPermutation p = perm_atom(part, n, positive_only);
        acc = acc ? compose(*acc, p) : p;
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return *acc;
}

Quad scale_factor(std::string_view f) {
    std::string t = detail::lower(f);
    if (t == "sqrt2") return Quad::sqrt2();
    if (t == "sqrt3") return Quad::sqrt3();
    if (t == "sqrt6") return Quad::sqrt2() * Quad::sqrt3();
    std::size_t slash = t.find('/');
    if (slash != std::string::npos) {
        long long num = detail::parse_int(t.substr(0, slash));
        long long den = detail::parse_int(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in scale");
        return Quad(Rational(num, den));
    }
    return Quad(static_cast<long long>(detail::parse_int(t)));
}

LevelPower parse_level_power(std::string_view text, int n, bool positive_only) {
    std::size_t caret = find_top(text, '^');
    if (caret == std::string_view::npos) throw std::invalid_argument("expected <perm> ^ <exponent>");
    LevelPower lp;
    lp.perm = perm_product(detail::trim(text.substr(0, caret)), n, positive_only);
    lp.exponent = parse_exponent(text.substr(caret + 1));
    return lp;
}

struct Ref {
    std::string name;
    int line, col;
};

class Parser {
public:
    Parser(std::string origin, std::filesystem::path base) : origin_(std::move(origin)), base_(std::move(base)) {}

    SubstitutionSystem run(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto words = split_words(line);
            if (words.empty()) continue;
            line_ = no;
            try {
                directive(words);
            } catch (const RuleError&) {
                throw;
            } catch (const std::exception& e) {
                throw RuleError(origin_, no, col_, e.what());
            }
        }
        finish();
        return std::move(sys_);
    }

private:
    std::string origin_;
    std::filesystem::path base_;
    SubstitutionSystem sys_;
    bool have_kind_ = false, have_digiset_ = false, have_start_ = false;
    int line_ = 0, col_ = 1;
    int current_ = -1;  // production receiving atoms
    std::map<int, Ref> first_ref_;
    std::optional<Ref> output_;
    std::vector<Term> lengths_;
    int length_line_ = 0;

    [[noreturn]] void fail(const Word& w, const std::string& msg) const { throw RuleError(origin_, line_, w.col, msg); }

    void need(const std::vector<Word>& w, std::size_t count, const char* usage) {
        if (w.size() < count) fail(w.back(), std::string("expected: ") + usage);
    }

    int n() const { return sys_.digiset.n; }

    void digits_in_set(const Digits& xs, const Word& w) {
        if (!have_digiset_) fail(w, "'digiset' must come before digits");
        for (int x : xs)
            if (!sys_.digiset.contains(x))
                fail(w, "digit " + std::to_string(x) + " is not in digiset " + sys_.digiset.to_string());
    }

    void perm_fits(const SignedPermutation& p, const Word& w) {
        if (n() > 0 && p.size() != n())
            fail(w, "perm " + p.to_string() + " does not match digiset size " + std::to_string(n()));
    }
    bool pos() const { return sys_.digiset.positive_only; }

    void at(const Word& w) { col_ = w.col; }

    int state_ref(const std::string& name, const Word& w) {
        int idx = sys_.whole.state_index(name);
        if (idx < 0) idx = sys_.whole.add_state(name);
        first_ref_.try_emplace(idx, Ref{name, line_, w.col});
        return idx;
    }

    void require_kind(const Word& w, RuleKind k) {
        if (!have_kind_) fail(w, "'kind' must come before '" + w.text + "'");
        if (sys_.kind != k) fail(w, "'" + w.text + "' is not allowed in a " + kind_text(sys_.kind) + " rule");
    }

    void directive(const std::vector<Word>& w) {
        const std::string key = detail::lower(w[0].text);
        at(w[0]);
        if (key == "name") {
            need(w, 2, "name <id>");
            sys_.name = join(w, 1);
        } else if (key == "digiset") {
            need(w, 2, "digiset <n|inf> [positive]");
            at(w[1]);
            std::string v = detail::lower(w[1].text);
            bool positive = w.size() > 2 && detail::lower(w[2].text) == "positive";
            if (w.size() > 2 && !positive) fail(w[2], "expected 'positive'");
            if (v == "inf" || v == "unbounded") {
                sys_.digiset = Digiset::unbounded();
                sys_.digiset.positive_only = positive;
            } else {
                int k = detail::parse_int(v);
                if (k < 1) fail(w[1], "digiset size must be positive");
                sys_.digiset = Digiset::bounded(k, positive);
            }
            have_digiset_ = true;
        } else if (key == "kind") {
            need(w, 2, "kind edgewise|digitwise|wholecurve|pairlift");
            std::string v = detail::lower(w[1].text);
            if (have_kind_) fail(w[0], "kind given twice");
            if (v == "edgewise") sys_.kind = RuleKind::Edgewise;
            else if (v == "digitwise") sys_.kind = RuleKind::Digitwise;
            else if (v == "wholecurve") sys_.kind = RuleKind::Wholecurve;
            else if (v == "pairlift") sys_.kind = RuleKind::Pairlift;
            else fail(w[1], "unknown kind '" + w[1].text + "'");
            have_kind_ = true;
        } else if (key == "level") {
            need(w, 2, "level <start level>");
            at(w[1]);
            sys_.start_level = detail::parse_int(w[1].text);
            if (sys_.start_level < 0) fail(w[1], "start level must be non-negative");
        } else if (key == "start") {
            start(w);
        } else if (key == "term") {
            require_kind(w[0], RuleKind::Edgewise);
            need(w, 2, "term <term>");
            at(w[1]);
            if (n() <= 0) fail(w[1], "edgewise terms need a bounded 'digiset' first");
            sys_.edgewise.terms.push_back(parse_term(join(w, 1, ""), n(), pos()));
        } else if (key == "length") {
            require_kind(w[0], RuleKind::Wholecurve);
            need(w, 2, "length <term>");
            at(w[1]);
            lengths_.push_back(parse_term(join(w, 1, ""), n() > 0 ? n() : 1, false));
            length_line_ = line_;
        } else if (key == "digit") {
            require_kind(w[0], RuleKind::Digitwise);
            need(w, 4, "digit <variant> -> <variants>");
            if (w[2].text != "->") fail(w[2], "expected '->'");
            at(w[1]);
            Token lhs = parse_token(w[1].text);
            digits_in_set({lhs.digit}, w[1]);
            at(w[3]);
            TokenSeq rhs = parse_tokens(join(w, 3));
            digits_in_set(project(rhs), w[3]);
            sys_.digitwise.add(lhs, rhs);
        } else if (key == "tail") {
            require_kind(w[0], RuleKind::Digitwise);
            need(w, 4, "tail <sequence> shift <n>");
            if (detail::lower(w[2].text) != "shift") fail(w[2], "expected 'shift'");
            at(w[1]);
            Digits prefix = parse_digits(w[1].text);
            at(w[3]);
            sys_.digitwise.set_tail(prefix, detail::parse_int(w[3].text));
        } else if (key == "production") {
            require_kind(w[0], RuleKind::Wholecurve);
            need(w, 2, "production <state>");
            current_ = state_ref(w[1].text, w[1]);
        } else if (key == "atom") {
            atom(w);
        } else if (key == "output") {
            require_kind(w[0], RuleKind::Wholecurve);
            need(w, 2, "output <state>");
            output_ = Ref{w[1].text, line_, w[1].col};
        } else if (key == "trim") {
            need(w, 3, "trim <head> <tail>");
            at(w[1]);
            sys_.drop_head = detail::parse_int(w[1].text);
            at(w[2]);
            sys_.drop_tail = detail::parse_int(w[2].text);
            if (sys_.drop_head < 0 || sys_.drop_tail < 0) fail(w[1], "trim counts must be non-negative");
        } else if (key == "pair") {
            require_kind(w[0], RuleKind::Pairlift);
            need(w, 4, "pair <a,b> -> <c,d>");
            if (w[2].text != "->") fail(w[2], "expected '->'");
            at(w[1]);
            Digits a = parse_digits(w[1].text);
            at(w[3]);
            Digits b = parse_digits(join(w, 3));
            if (a.size() != 2) fail(w[1], "pair needs two digits");
            if (b.size() != 2) fail(w[3], "pair image needs two digits");
            digits_in_set(b, w[3]);
            sys_.pair.add(a[0], a[1], b[0], b[1]);
        } else if (key == "source") {
            require_kind(w[0], RuleKind::Pairlift);
            need(w, 2, "source <file|catalog:id> [closed]");
            at(w[1]);
            source(w[1].text);
            if (w.size() > 2) {
                if (detail::lower(w[2].text) != "closed") fail(w[2], "expected 'closed'");
                sys_.source_closed = true;
            }
        } else if (key == "post" || key == "normalize") {
            need(w, 2, "post|normalize <perm> ^ <exponent>");
            at(w[1]);
            LevelPower lp = parse_level_power(join(w, 1, ""), n(), pos());
            perm_fits(lp.perm, w[1]);
            (key == "post" ? sys_.post : sys_.normalizer) = lp;
        } else if (key == "cap") {
            need(w, 2, "cap <items>");
            at(w[1]);
            long long c = std::stoll(w[1].text);
            if (c < 1) fail(w[1], "cap must be positive");
            sys_.item_cap = static_cast<std::size_t>(c);
        } else {
            fail(w[0], "unknown directive '" + w[0].text + "'");
        }
    }

    void start(const std::vector<Word>& w) {
        if (!have_kind_) fail(w[0], "'kind' must come before 'start'");
        need(w, 2, "start [<state>] <sequence>");
        if (sys_.kind == RuleKind::Wholecurve) {
            need(w, 3, "start <state> <sequence>");
            int idx = state_ref(w[1].text, w[1]);
            at(w[2]);
            sys_.whole.starts[idx] = parse_digits(join(w, 2));
            digits_in_set(sys_.whole.starts[idx], w[2]);
            if (current_ < 0) current_ = idx;
        } else if (sys_.kind == RuleKind::Digitwise) {
            at(w[1]);
            sys_.token_start = parse_tokens(join(w, 1));
            sys_.start = project(sys_.token_start);
            digits_in_set(sys_.start, w[1]);
        } else if (sys_.kind == RuleKind::Edgewise) {
            at(w[1]);
            sys_.start = parse_digits(join(w, 1));
            digits_in_set(sys_.start, w[1]);
        } else {
            fail(w[0], "a pairlift rule takes its input from 'source'");
        }
        have_start_ = true;
    }

    void atom(const std::vector<Word>& w) {
        require_kind(w[0], RuleKind::Wholecurve);
        need(w, 2, "atom <state> [<term>] [power <perm> ^ <exponent>] [drop <n>] | atom connector <digit> [<perm> ^ <exponent>]");
        if (current_ < 0) fail(w[0], "atom before any 'production' or 'start'");
        Atom a;
        if (detail::lower(w[1].text) == "connector") {
            need(w, 3, "atom connector <digit> [<perm> ^ <exponent>]");
            a.kind = Atom::Kind::Connector;
            at(w[2]);
            a.digit = detail::parse_int(w[2].text);
            digits_in_set({a.digit}, w[2]);
            if (w.size() > 3) {
                at(w[3]);
                a.power = parse_level_power(join(w, 3, ""), n(), pos());
                perm_fits(a.power->perm, w[3]);
            }
        } else {
            a.kind = Atom::Kind::State;
            a.state = state_ref(w[1].text, w[1]);
            std::size_t i = 2;
            auto keyword = [&](std::size_t j) {
                std::string t = detail::lower(w[j].text);
                return t == "drop" || t == "power";
            };
            if (i < w.size() && !keyword(i)) {
                at(w[i]);
                a.term = parse_term(w[i].text, n(), pos());
                perm_fits(a.term.perm, w[i]);
                ++i;
            } else {
                if (n() <= 0) fail(w[1], "'digiset' must come before atoms");
                a.term.perm = SignedPermutation::identity(n());
            }
            if (i < w.size() && detail::lower(w[i].text) == "power") {
                std::size_t j = i + 1;
                std::string text;
                while (j < w.size() && detail::lower(w[j].text) != "drop") text += w[j++].text;
                if (text.empty()) fail(w[i], "expected 'power <perm> ^ <exponent>'");
                at(w[i + 1]);
                a.power = parse_level_power(text, n(), pos());
                perm_fits(a.power->perm, w[i + 1]);
                i = j;
            }
            if (i < w.size()) {
                if (detail::lower(w[i].text) != "drop" || i + 1 >= w.size()) fail(w[i], "expected 'drop <n>'");
                at(w[i + 1]);
                a.drop_head = detail::parse_int(w[i + 1].text);
                if (a.drop_head < 0) fail(w[i + 1], "drop must be non-negative");
                if (i + 2 < w.size()) fail(w[i + 2], "unexpected '" + w[i + 2].text + "'");
            }
        }
        sys_.whole.productions[current_].push_back(std::move(a));
    }

    void source(const std::string& spec) {
        if (spec.rfind("catalog:", 0) == 0) {
            sys_.source = find_entry(spec.substr(8)).system;
            return;
        }
        std::filesystem::path p = spec;
        if (p.is_relative()) p = base_ / p;
        sys_.source = std::make_shared<const SubstitutionSystem>(load_rule_file(p));
    }

    [[noreturn]] void fail_end(const std::string& msg) const { throw RuleError(origin_, line_ + 1, 1, msg); }

    void finish() {
        if (!have_kind_) fail_end("missing 'kind'");
        if (!have_digiset_) fail_end("missing 'digiset'");
        if (sys_.name.empty()) sys_.name = origin_;
        switch (sys_.kind) {
            case RuleKind::Edgewise:
                if (!have_start_) fail_end("missing 'start'");
                if (sys_.edgewise.terms.empty()) fail_end("edgewise rule needs at least one 'term'");
                break;
            case RuleKind::Digitwise: {
                if (!have_start_) fail_end("missing 'start'");
                auto missing = sys_.digitwise.undefined_tokens();
                for (const auto& t : sys_.token_start)
                    if (!sys_.digitwise.has(t)) missing.push_back(t);
                if (!missing.empty()) fail_end("no 'digit' rule for " + missing.front().to_string());
                break;
            }
            case RuleKind::Wholecurve: {
                if (sys_.whole.states.empty()) fail_end("whole-curve rule needs a 'start <state> <sequence>'");
                for (std::size_t s = 0; s < sys_.whole.states.size(); ++s) {
                    const Ref& r = first_ref_.at(static_cast<int>(s));
                    if (sys_.whole.starts[s].empty())
                        throw RuleError(origin_, r.line, r.col, "state '" + r.name + "' has no start sequence");
                    if (sys_.whole.productions[s].empty())
                        throw RuleError(origin_, r.line, r.col, "state '" + r.name + "' has no production");
                }
                if (output_) {
                    int idx = sys_.whole.state_index(output_->name);
                    if (idx < 0) throw RuleError(origin_, output_->line, output_->col, "unknown state '" + output_->name + "'");
                    sys_.output_state = idx;
                }
                if (!lengths_.empty()) {
                    if (sys_.whole.states.size() != 1)
                        throw RuleError(origin_, length_line_, 1, "a length stream needs a single-state rule");
                    if (lengths_.size() != sys_.whole.productions[0].size())
                        throw RuleError(origin_, length_line_, 1,
                                        "length stream has " + std::to_string(lengths_.size()) + " terms, production has " +
                                            std::to_string(sys_.whole.productions[0].size()));
                    if (sys_.whole.starts[0].size() != 1)
                        throw RuleError(origin_, length_line_, 1, "a length stream needs a one-edge start");
                    sys_.length_terms = lengths_;
                }
                break;
            }
            case RuleKind::Pairlift:
                if (!sys_.source) fail_end("pairlift rule needs a 'source'");
                if (sys_.pair.map.empty()) fail_end("pairlift rule needs at least one 'pair'");
                break;
        }
    }
};

}  // namespace

Term parse_term(std::string_view text, int n, bool positive_only) {
    const std::string ascii = detail::ascii_minus(text);
    std::string_view t = detail::trim(ascii);
    Term term;
    if (!t.empty() && (t.front() == '-' || t.front() == '+') && (t.size() == 1 || !std::isdigit(static_cast<unsigned char>(t[1])))) {
        term.sign = t.front() == '-' ? -1 : 1;
        t.remove_prefix(1);
    }
    if (t.empty()) throw std::invalid_argument("empty term");
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t star = find_top(t, '*', start);
        parts.push_back(t.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start));
        if (star == std::string_view::npos) break;
        start = star + 1;
    }
    bool have_perm = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::string_view part = parts[i];
        if (part.empty()) throw std::invalid_argument("empty factor in term '" + std::string(text) + "'");
        if (part == "R") {
            term.reversed = !term.reversed;
        } else if (i == 0) {
            term.perm = perm_product(part, n, positive_only);
            have_perm = true;
        } else {
            term.scale = term.scale * scale_factor(part);
        }
    }
    if (!have_perm) {
        if (n <= 0) throw std::invalid_argument("term needs a perm when the digiset is unbounded");
        term.perm = SignedPermutation::identity(n);
    }
    if (n > 0 && term.perm.size() != n)
        throw std::invalid_argument("perm " + term.perm.to_string() + " does not match digiset size " + std::to_string(n));
    if (term.scale.sign() <= 0) throw std::invalid_argument("term scale must be positive");
    return term;
}

SubstitutionSystem parse_rule_text(std::string_view text, std::string origin, const std::filesystem::path& base_dir) {
    return Parser(std::move(origin), base_dir).run(text);
}

SubstitutionSystem load_rule_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open rule file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_rule_text(buf.str(), path.string(), path.parent_path());
}

RuleDiagnostics diagnose(const SubstitutionSystem& sys, int levels) {
    RuleDiagnostics d;
    d.expansive = sys.is_expansive();
    if (sys.kind == RuleKind::Digitwise) {
        d.negation_symmetric = sys.digitwise.negation_symmetric();
        for (const auto& t : sys.digitwise.undefined_tokens()) d.undefined.push_back(t.to_string());
    }
    const int n = sys.digiset.n;
    if (n > 0 && !sys.digiset.positive_only &&
        (sys.kind == RuleKind::Edgewise || sys.kind == RuleKind::Digitwise)) {
        std::vector<std::string> names = {"mu", "negation"};
        if (n == 2) names = {"mu", "negation", "tau_x", "tau_y", "tau_d", "tau_-d"};
        for (const auto& name : names) {
            SignedPermutation p = named_perm(name, n);
            bool ok = sys.kind == RuleKind::Edgewise ? check_commutation(sys.edgewise, p)
                                                     : check_commutation(sys.digitwise, p, n);
            d.commutation.emplace_back(name, ok);
        }
    }
    d.extending_levels = sys.start_level + levels;
    d.extending = check_extending(sys, d.extending_levels);
    for (int k = 0; k <= d.extending_levels; ++k) d.lengths.push_back(sys.iterate(k).size());
    return d;
}

}  // namespace fracseq
