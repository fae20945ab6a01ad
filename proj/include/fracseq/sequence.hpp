#pragma once

#include "fracseq/perm.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace fracseq {

// Alphabet {±1..±n}; n == 0 means unbounded.
struct Digiset {
    int n = 0;
    bool positive_only = false;

    static Digiset bounded(int n, bool positive_only = false);
    static Digiset unbounded() { return {}; }

    bool is_unbounded() const { return n == 0; }
    bool contains(int k) const;
    std::string to_string() const;

    bool operator==(const Digiset&) const = default;
};

class SignedSequence {
public:
    SignedSequence() = default;
    explicit SignedSequence(Digits items, Digiset ds = Digiset::unbounded());

    const Digits& items() const { return items_; }
    const Digiset& digiset() const { return digiset_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    int operator[](std::size_t i) const { return items_[i]; }
    int max_magnitude() const;

    std::string to_string() const;

    bool operator==(const SignedSequence& o) const { return items_ == o.items_; }

private:
    Digits items_;
    Digiset digiset_;
};

SignedSequence concat(const SignedSequence& a, const SignedSequence& b);
SignedSequence reverse(const SignedSequence& s);
SignedSequence negate(const SignedSequence& s);
SignedSequence inverse(const SignedSequence& s);
SignedSequence absolute(const SignedSequence& s);
SignedSequence apply(const SignedPermutation& p, const SignedSequence& s);

bool is_normalized(const Digits& s);
inline bool is_normalized(const SignedSequence& s) { return is_normalized(s.items()); }

struct CharacteristicPerm {
    SignedPermutation perm;
    bool completed = false;  // some magnitudes were missing and appended
};

// n == 0 takes the size from the digiset, or from the largest magnitude when unbounded.
CharacteristicPerm characteristic_perm(const Digits& s, int n = 0);
CharacteristicPerm characteristic_perm(const SignedSequence& s);
SignedSequence normalize(const SignedSequence& s);
SignedSequence minimal_normalized(const SignedSequence& s);

// Digit order 1 < 2 < ... < -2 < -1.
bool digit_less(int a, int b);
std::strong_ordering compare(const Digits& a, const Digits& b);
inline std::strong_ordering compare(const SignedSequence& a, const SignedSequence& b) {
    return compare(a.items(), b.items());
}

SignedSequence fold(const std::vector<int>& xs);

// "<1,2,-1>", "⟨1,2,−1⟩", "1,2,-1" or "<>".
SignedSequence parse_sequence(std::string_view text, Digiset ds = Digiset::unbounded());
Digits parse_digits(std::string_view text);
std::string format_digits(const Digits& s);

}  // namespace fracseq
