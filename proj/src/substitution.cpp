#include "fracseq/substitution.hpp"
#include "text.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fracseq {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap)
        throw std::length_error("output of " + std::to_string(n) + " items exceeds cap " + std::to_string(cap));
}

TokenSeq apply_tokens(const SignedPermutation& p, const TokenSeq& s) {
    TokenSeq out = s;
    for (auto& t : out) t.digit = p(t.digit);
    return out;
}

std::string primes(int mark) { return std::string(static_cast<std::size_t>(mark), '\''); }

}  // namespace

std::string exponent_text(Exponent e) {
    switch (e) {
        case Exponent::K: return "k";
        case Exponent::KPlus1: return "k+1";
        case Exponent::KMinus1: return "k-1";
        case Exponent::KMod2: return "kmod2";
        case Exponent::KPlus1Mod2: return "k+1mod2";
    }
    return "k";
}

Exponent parse_exponent(std::string_view text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
    if (t == "k") return Exponent::K;
    if (t == "k+1") return Exponent::KPlus1;
    if (t == "k-1") return Exponent::KMinus1;
    if (t == "kmod2") return Exponent::KMod2;
    if (t == "k+1mod2" || t == "k-1mod2") return Exponent::KPlus1Mod2;
    throw std::invalid_argument("unknown level exponent '" + std::string(text) + "' (k, k+1, k-1, kmod2, k+1mod2)");
}

long long LevelPower::exponent_at(int level) const {
    switch (exponent) {
        case Exponent::K: return level;
        case Exponent::KPlus1: return level + 1;
        case Exponent::KMinus1: return level - 1;
        case Exponent::KMod2: return ((level % 2) + 2) % 2;
        case Exponent::KPlus1Mod2: return (((level + 1) % 2) + 2) % 2;
    }
    return level;
}

SignedPermutation LevelPower::at(int level) const { return power(perm, exponent_at(level)); }

std::string LevelPower::to_string() const { return perm.to_string() + "^" + exponent_text(exponent); }

Digits Term::apply(const Digits& s) const {
    Digits out;
    out.reserve(s.size());
    if (reversed) {
        for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(sign * perm(*it));
    } else {
        for (int x : s) out.push_back(sign * perm(x));
    }
    return out;
}

std::vector<Quad> Term::apply_lengths(const std::vector<Quad>& s) const {
    std::vector<Quad> out;
    out.reserve(s.size());
    if (reversed) {
        for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(*it * scale);
    } else {
        for (const auto& x : s) out.push_back(x * scale);
    }
    return out;
}

std::string Term::to_string() const {
    std::string out = sign < 0 ? "-" : "";
    out += perm.to_string();
    if (reversed) out += "*R";
    if (!(scale == Quad(1))) out += "*" + scale.to_string();
    return out;
}

Digits EdgewiseRule::image(int x) const {
    Digits out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(t.sign * t.perm(x));
    return out;
}

Digits expand_edgewise(const EdgewiseRule& rule, const Digits& s) {
    if (s.empty()) return {};
    int n = 0;
    for (int x : s) n = std::max(n, std::abs(x));
    std::vector<Digits> cache(2 * n + 1);
    Digits out;
    out.reserve(s.size() * rule.terms.size());
    for (int x : s) {
        Digits& img = cache[x + n];
        if (img.empty()) img = rule.image(x);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

std::string Token::to_string() const { return std::to_string(digit) + primes(mark); }

Token parse_token(std::string_view text) {
    std::string t(detail::trim(text));
    std::string digits;
    int mark = 0;
    std::size_t i = 0;
    if (t.compare(0, 3, "\xE2\x88\x92") == 0) {
        digits += '-';
        i = 3;
    }
    for (; i < t.size(); ++i) {
        if (t[i] == '\'') {
            ++mark;
        } else if (t.compare(i, 3, "\xE2\x80\xB2") == 0) {
            ++mark;
            i += 2;
        } else if (t.compare(i, 3, "\xE2\x80\xB3") == 0) {
            mark += 2;
            i += 2;
        } else if (mark == 0) {
            digits += t[i];
        } else {
            throw std::invalid_argument("bad variant digit '" + t + "'");
        }
    }
    int d = detail::parse_int(digits);
    if (d == 0) throw std::invalid_argument("variant digit cannot be zero");
    return {d, mark};
}

TokenSeq parse_tokens(std::string_view text) {
    std::string_view body = detail::trim(text);
    if (body.size() >= 2 && body.front() == '<' && body.back() == '>') body = body.substr(1, body.size() - 2);
    else if (body.size() >= 6 && body.substr(0, 3) == "\xE2\x9F\xA8" && body.substr(body.size() - 3) == "\xE2\x9F\xA9")
        body = body.substr(3, body.size() - 6);
    TokenSeq out;
    std::string tok;
    auto flush = [&] {
        if (!detail::trim(tok).empty()) out.push_back(parse_token(tok));
        tok.clear();
    };
    for (char c : body) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) flush();
        else tok += c;
    }
    flush();
    return out;
}

std::string format_tokens(const TokenSeq& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += s[i].to_string();
    }
    return out + ">";
}

TokenSeq lift_tokens(const Digits& s) {
    TokenSeq out;
    out.reserve(s.size());
    for (int x : s) out.push_back({x, 0});
    return out;
}

Digits project(const TokenSeq& s) {
    Digits out;
    out.reserve(s.size());
    for (const auto& t : s) out.push_back(t.digit);
    return out;
}

void DigitRule::add(Token lhs, TokenSeq rhs) {
    if (lhs.digit == 0) throw std::invalid_argument("digit rule: zero left side");
    Token neg = -lhs;
    auto it = derived_.find(neg);
    if (map_.count(neg) == 0 || (it != derived_.end() && it->second)) {
        TokenSeq nrhs = rhs;
        for (auto& t : nrhs) t = -t;
        map_[neg] = std::move(nrhs);
        derived_[neg] = true;
    }
    map_[lhs] = std::move(rhs);
    derived_[lhs] = false;
}

void DigitRule::set_tail(Digits prefix, int shift) { tail_ = Tail{std::move(prefix), shift}; }

bool DigitRule::has(Token t) const { return map_.count(t) || (tail_ && t.mark == 0 && t.digit != 0); }

TokenSeq DigitRule::image(Token t) const {
    auto it = map_.find(t);
    if (it != map_.end()) return it->second;
    if (tail_ && t.mark == 0 && t.digit != 0) {
        TokenSeq out = lift_tokens(tail_->prefix);
        out.push_back({t.digit + (t.digit > 0 ? tail_->shift : -tail_->shift), 0});
        return out;
    }
    throw std::out_of_range("digit rule has no image for " + t.to_string());
}

std::vector<Token> DigitRule::explicit_tokens() const {
    std::vector<Token> out;
    for (const auto& [k, v] : map_) out.push_back(k);
    return out;
}

bool DigitRule::negation_symmetric() const {
    for (const auto& [k, v] : map_) {
        auto it = map_.find(-k);
        if (it == map_.end()) return false;
        TokenSeq nv = v;
        for (auto& t : nv) t = -t;
        if (nv != it->second) return false;
    }
    return !tail_ || tail_->prefix.empty();
}

std::vector<Token> DigitRule::undefined_tokens() const {
    std::set<Token> missing;
    for (const auto& [k, v] : map_)
        for (const auto& t : v)
            if (!has(t)) missing.insert(t);
    return {missing.begin(), missing.end()};
}

TokenSeq expand_digitwise(const DigitRule& rule, const TokenSeq& s) {
    TokenSeq out;
    out.reserve(s.size() * 4);
    std::map<Token, TokenSeq> cache;
    for (const auto& t : s) {
        auto it = cache.find(t);
        if (it == cache.end()) it = cache.emplace(t, rule.image(t)).first;
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

std::string Atom::to_string(const std::vector<std::string>& names) const {
    if (kind == Kind::Connector) {
        std::string out = "connector " + std::to_string(digit);
        if (power) out += " " + power->to_string();
        return out;
    }
    std::string out = names.at(state) + " " + term.to_string();
    if (power) out += " power " + power->to_string();
    if (drop_head) out += " drop " + std::to_string(drop_head);
    return out;
}

int WholeCurveRule::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    return -1;
}

int WholeCurveRule::add_state(std::string name, Digits start) {
    int idx = state_index(name);
    if (idx >= 0) {
        starts[idx] = std::move(start);
        return idx;
    }
    states.push_back(std::move(name));
    productions.emplace_back();
    starts.push_back(std::move(start));
    return static_cast<int>(states.size()) - 1;
}

std::vector<Digits> expand_wholecurve(const WholeCurveRule& rule, int level, const std::vector<Digits>& current) {
    if (current.size() != rule.states.size())
        throw std::invalid_argument("whole-curve step needs " + std::to_string(rule.states.size()) + " states, got " +
                                    std::to_string(current.size()));
    std::vector<Digits> next(rule.states.size());
    for (std::size_t s = 0; s < rule.states.size(); ++s) {
        Digits& out = next[s];
        for (const auto& atom : rule.productions[s]) {
            if (atom.kind == Atom::Kind::Connector) {
                out.push_back(atom.power ? atom.power->at(level)(atom.digit) : atom.digit);
                continue;
            }
            if (atom.state < 0 || atom.state >= static_cast<int>(current.size()))
                throw std::invalid_argument("whole-curve atom refers to a missing state");
            Digits block = atom.term.apply(current[atom.state]);
            if (atom.power) block = atom.power->at(level).apply(block);
            std::size_t skip = std::min<std::size_t>(block.size(), static_cast<std::size_t>(atom.drop_head));
            out.insert(out.end(), block.begin() + static_cast<std::ptrdiff_t>(skip), block.end());
        }
    }
    return next;
}

void PairRule::add(int x, int y, int a, int b) { map[{x, y}] = {a, b}; }

std::optional<std::pair<int, int>> PairRule::lookup(int x, int y) const {
    auto it = map.find({x, y});
    if (it != map.end()) return it->second;
    it = map.find({-x, -y});
    if (it != map.end()) return std::make_pair(-it->second.first, -it->second.second);
    return std::nullopt;
}

Digits expand_pairwise(const PairRule& rule, const Digits& s, bool closed) {
    Digits out;
    if (s.empty()) return out;
    out.reserve(2 * s.size());
    const std::size_t n = s.size();
    auto pair_error = [](std::size_t pos, int x, int y) {
        return std::invalid_argument("pair rule has no image for <" + std::to_string(x) + "," + std::to_string(y) +
                                     "> at position " + std::to_string(pos + 1));
    };
    for (std::size_t i = 0; i + 1 < n || (closed && i < n); ++i) {
        int x = s[i], y = s[(i + 1) % n];
        auto img = rule.lookup(x, y);
        if (!img) throw pair_error(i, x, y);
        out.push_back(img->first);
        out.push_back(img->second);
    }
    if (!closed) {
        int x = s[n - 1];
        std::optional<int> first;
        for (const auto& [key, val] : rule.map) {
            for (int sgn : {1, -1}) {
                if (sgn * key.first != x) continue;
                int f = sgn * val.first;
                if (first && *first != f)
                    throw std::invalid_argument("pair rule: last edge " + std::to_string(x) +
                                                " has no context-free first digit");
                first = f;
            }
        }
        if (!first) throw pair_error(n - 1, x, 0);
        out.push_back(*first);
    }
    return out;
}

std::string kind_text(RuleKind k) {
    switch (k) {
        case RuleKind::Edgewise: return "edgewise";
        case RuleKind::Digitwise: return "digitwise";
        case RuleKind::Wholecurve: return "wholecurve";
        case RuleKind::Pairlift: return "pairlift";
    }
    return "edgewise";
}

Digits SubstitutionSystem::raw(int k) const {
    const int steps = std::max(0, k - start_level);
    switch (kind) {
        case RuleKind::Edgewise: {
            Digits s = start;
            for (int j = 1; j <= steps; ++j) {
                check_cap(s.size() * edgewise.terms.size(), item_cap);
                s = expand_edgewise(edgewise, s);
                if (post) s = post->at(start_level + j).apply(s);
            }
            return s;
        }
        case RuleKind::Digitwise: {
            TokenSeq s = token_start.empty() ? lift_tokens(start) : token_start;
            for (int j = 1; j <= steps; ++j) {
                s = expand_digitwise(digitwise, s);
                check_cap(s.size(), item_cap);
                if (post) s = apply_tokens(post->at(start_level + j), s);
            }
            return project(s);
        }
        case RuleKind::Wholecurve: {
            std::vector<Digits> states = whole.starts;
            for (int j = 1; j <= steps; ++j) {
                states = expand_wholecurve(whole, start_level + j - 1, states);
                for (auto& st : states) {
                    check_cap(st.size(), item_cap);
                    if (post) st = post->at(start_level + j).apply(st);
                }
            }
            return states.at(static_cast<std::size_t>(output_state));
        }
        case RuleKind::Pairlift: {
            if (!source) throw std::logic_error("pairlift system without source");
            Digits s = expand_pairwise(pair, source->iterate(k), source_closed);
            check_cap(s.size(), item_cap);
            return s;
        }
    }
    return {};
}

Digits SubstitutionSystem::finish(Digits s, int level) const {
    std::size_t head = std::min<std::size_t>(s.size(), static_cast<std::size_t>(drop_head));
    std::size_t tail = std::min<std::size_t>(s.size() - head, static_cast<std::size_t>(drop_tail));
    Digits out(s.begin() + static_cast<std::ptrdiff_t>(head), s.end() - static_cast<std::ptrdiff_t>(tail));
    if (normalizer) out = normalizer->at(level).apply(out);
    return out;
}

Digits SubstitutionSystem::iterate(int k) const {
    if (k < 0) throw std::invalid_argument("level must be non-negative");
    return finish(raw(k), std::max(k, start_level));
}

std::vector<Quad> SubstitutionSystem::iterate_lengths(int k) const {
    if (!length_terms) return {};
    const int steps = std::max(0, k - start_level);
    std::vector<Quad> s{Quad(1)};
    for (int j = 0; j < steps; ++j) {
        std::vector<Quad> next;
        for (const auto& t : *length_terms) {
            auto part = t.apply_lengths(s);
            next.insert(next.end(), part.begin(), part.end());
        }
        check_cap(next.size(), item_cap);
        s = std::move(next);
    }
    std::size_t head = std::min<std::size_t>(s.size(), static_cast<std::size_t>(drop_head));
    std::size_t tail = std::min<std::size_t>(s.size() - head, static_cast<std::size_t>(drop_tail));
    return {s.begin() + static_cast<std::ptrdiff_t>(head), s.end() - static_cast<std::ptrdiff_t>(tail)};
}

Curve SubstitutionSystem::iterate_curve(int k) const {
    Curve c;
    c.digits = iterate(k);
    c.lengths = iterate_lengths(k);
    if (!c.lengths.empty() && c.lengths.size() != c.digits.size())
        throw std::logic_error("length stream and digit stream differ in size");
    return c;
}

int SubstitutionSystem::level_for(std::size_t count, int max_level) const {
    std::size_t prev = 0;
    for (int k = start_level; k <= max_level; ++k) {
        std::size_t n = iterate(k).size();
        if (n >= count) return k;
        if (k > start_level && n <= prev)
            throw std::runtime_error("system '" + name + "' does not grow past " + std::to_string(n) + " items");
        prev = n;
    }
    throw std::length_error("no level up to " + std::to_string(max_level) + " reaches " + std::to_string(count) +
                            " items");
}

Curve SubstitutionSystem::prefix(std::size_t count, int max_level) const {
    Curve c = iterate_curve(level_for(count, max_level));
    c.digits.resize(count);
    if (!c.lengths.empty()) c.lengths.resize(count);
    return c;
}

bool SubstitutionSystem::is_expansive() const {
    switch (kind) {
        case RuleKind::Edgewise: return edgewise.terms.size() >= 2;
        case RuleKind::Digitwise: {
            for (const auto& t : digitwise.explicit_tokens())
                if (digitwise.image(t).size() < 2) return false;
            if (digitwise.has_tail() && digitwise.image(Token{1 << 20, 0}).size() < 2) return false;
            return true;
        }
        case RuleKind::Wholecurve: {
            for (const auto& prod : whole.productions) {
                int blocks = 0;
                for (const auto& a : prod)
                    if (a.kind == Atom::Kind::State) ++blocks;
                if (blocks < 2) return false;
            }
            return true;
        }
        case RuleKind::Pairlift: return true;
    }
    return false;
}

bool check_extending(const SubstitutionSystem& sys, int k) {
    Digits prev = sys.iterate(sys.start_level);
    for (int j = sys.start_level; j < k; ++j) {
        Digits next = sys.iterate(j + 1);
        if (next.size() < prev.size() || !std::equal(prev.begin(), prev.end(), next.begin())) return false;
        prev = std::move(next);
    }
    return true;
}

bool check_commutation(const EdgewiseRule& rule, const SignedPermutation& p) {
    for (int x = 1; x <= p.size(); ++x)
        for (int y : {x, -x})
            if (rule.image(p(y)) != p.apply(rule.image(y))) return false;
    return true;
}

bool check_commutation(const DigitRule& rule, const SignedPermutation& p, int n) {
    if (p.size() < n) throw std::invalid_argument("perm smaller than digiset");
    for (const auto& t : rule.explicit_tokens()) {
        if (std::abs(t.digit) > p.size()) continue;
        Token moved{p(t.digit), t.mark};
        if (!rule.has(moved)) return false;
        if (rule.image(moved) != apply_tokens(p, rule.image(t))) return false;
    }
    return true;
}

}  // namespace fracseq
