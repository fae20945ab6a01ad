#include "fracseq/sequence.hpp"
#include "text.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace fracseq {

Digiset Digiset::bounded(int n, bool positive_only) {
    if (n < 1) throw std::invalid_argument("digiset size must be positive");
    return {n, positive_only};
}

bool Digiset::contains(int k) const {
    if (k == 0) return false;
    if (positive_only && k < 0) return false;
    return is_unbounded() || std::abs(k) <= n;
}

std::string Digiset::to_string() const {
    std::string base = is_unbounded() ? "inf" : std::to_string(n);
    return positive_only ? "+" + base : base;
}

SignedSequence::SignedSequence(Digits items, Digiset ds) : items_(std::move(items)), digiset_(ds) {
    for (std::size_t i = 0; i < items_.size(); ++i)
        if (!digiset_.contains(items_[i]))
            throw std::invalid_argument("item " + std::to_string(items_[i]) + " at position " + std::to_string(i + 1) +
                                        " is not in digiset " + digiset_.to_string());
}

int SignedSequence::max_magnitude() const {
    int m = 0;
    for (int x : items_) m = std::max(m, std::abs(x));
    return m;
}

std::string SignedSequence::to_string() const { return format_digits(items_); }

std::string format_digits(const Digits& s) { return "<" + detail::join_ints(s) + ">"; }

// Equal digisets, or an unbounded one adopting the other's bound. Anything else is a mismatch.
static Digiset join(const Digiset& a, const Digiset& b) {
    if (a == b) return a;
    if (a.positive_only == b.positive_only) {
        if (a.is_unbounded()) return b;
        if (b.is_unbounded()) return a;
    }
    throw std::invalid_argument("digiset mismatch: " + a.to_string() + " vs " + b.to_string());
}

SignedSequence concat(const SignedSequence& a, const SignedSequence& b) {
    Digiset ds = join(a.digiset(), b.digiset());
    Digits out = a.items();
    out.insert(out.end(), b.items().begin(), b.items().end());
    return SignedSequence(std::move(out), ds);
}

SignedSequence reverse(const SignedSequence& s) {
    Digits out(s.items().rbegin(), s.items().rend());
    return SignedSequence(std::move(out), s.digiset());
}

static Digiset signed_view(Digiset ds) {
    ds.positive_only = false;
    return ds;
}

SignedSequence negate(const SignedSequence& s) {
    Digits out = s.items();
    for (auto& x : out) x = -x;
    return SignedSequence(std::move(out), signed_view(s.digiset()));
}

SignedSequence inverse(const SignedSequence& s) { return negate(reverse(s)); }

SignedSequence absolute(const SignedSequence& s) {
    Digits out = s.items();
    for (auto& x : out) x = std::abs(x);
    return SignedSequence(std::move(out), s.digiset());
}

SignedSequence apply(const SignedPermutation& p, const SignedSequence& s) {
    Digiset ds = s.digiset();
    if (!ds.is_unbounded() && ds.n > p.size())
        throw std::invalid_argument("perm of size " + std::to_string(p.size()) + " cannot act on digiset " +
                                    ds.to_string());
    return SignedSequence(p.apply(s.items()), ds);
}

bool is_normalized(const Digits& s) {
    int next = 1;  // smallest magnitude not yet introduced
    for (int x : s) {
        int m = std::abs(x);
        if (m < next) continue;
        if (m != next || x < 0) return false;
        ++next;
    }
    return true;
}

CharacteristicPerm characteristic_perm(const Digits& s, int n) {
    int maxm = 0;
    for (int x : s) maxm = std::max(maxm, std::abs(x));
    if (n == 0) n = maxm;
    if (maxm > n) throw std::invalid_argument("sequence magnitude exceeds perm size");
    std::vector<int> inv;
    std::vector<char> seen(n + 1, 0);
    for (int x : s) {
        int m = std::abs(x);
        if (!seen[m]) {
            seen[m] = 1;
            inv.push_back(x);
        }
    }
    CharacteristicPerm out;
    for (int m = 1; m <= n; ++m) {
        if (!seen[m]) {
            inv.push_back(m);
            out.completed = true;
        }
    }
    if (n == 0) {
        out.perm = SignedPermutation{};
        return out;
    }
    out.perm = invert(SignedPermutation(std::move(inv)));
    return out;
}

CharacteristicPerm characteristic_perm(const SignedSequence& s) {
    const Digiset& ds = s.digiset();
    return characteristic_perm(s.items(), ds.is_unbounded() ? 0 : ds.n);
}

SignedSequence normalize(const SignedSequence& s) {
    if (s.empty()) return s;
    auto cp = characteristic_perm(s.items(), 0);
    return SignedSequence(cp.perm.apply(s.items()), signed_view(s.digiset()));
}

SignedSequence minimal_normalized(const SignedSequence& s) {
    SignedSequence a = normalize(s);
    SignedSequence b = normalize(reverse(s));
    return compare(b, a) < 0 ? b : a;
}

bool digit_less(int a, int b) {
    if ((a > 0) != (b > 0)) return a > 0;
    return a < b;
}

std::strong_ordering compare(const Digits& a, const Digits& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == b[i]) continue;
        return digit_less(a[i], b[i]) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

SignedSequence fold(const std::vector<int>& xs) {
    Digits out;
    for (int x : xs) {
        if (x == 0) throw std::invalid_argument("fold: zero item");
        Digits inv(out.rbegin(), out.rend());
        for (auto& y : inv) y = -y;
        out.push_back(x);
        out.insert(out.end(), inv.begin(), inv.end());
    }
    return SignedSequence(std::move(out));
}

Digits parse_digits(std::string_view text) {
    std::string_view body = detail::trim(text);
    auto strip = [&](std::string_view open, std::string_view close) {
        if (body.substr(0, open.size()) == open) {
            if (body.size() < open.size() + close.size() ||
                body.substr(body.size() - close.size()) != close)
                throw std::invalid_argument("sequence literal missing closing bracket");
            body = body.substr(open.size(), body.size() - open.size() - close.size());
            return true;
        }
        return false;
    };
    if (!strip("<", ">")) strip("\xE2\x9F\xA8", "\xE2\x9F\xA9");
    Digits out = detail::parse_int_list(body);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] == 0) throw std::invalid_argument("sequence item " + std::to_string(i + 1) + " is zero");
    return out;
}

SignedSequence parse_sequence(std::string_view text, Digiset ds) {
    return SignedSequence(parse_digits(text), ds);
}

}  // namespace fracseq
