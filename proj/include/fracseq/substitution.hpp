#pragma once

#include "fracseq/perm.hpp"
#include "fracseq/quad.hpp"
#include "fracseq/sequence.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fracseq {

enum class Exponent { K, KPlus1, KMinus1, KMod2, KPlus1Mod2 };

std::string exponent_text(Exponent e);
Exponent parse_exponent(std::string_view text);

// perm^e(k) for a level k.
struct LevelPower {
    SignedPermutation perm;
    Exponent exponent = Exponent::K;

    long long exponent_at(int level) const;
    SignedPermutation at(int level) const;
    std::string to_string() const;
};

// sign * perm * (R if reversed); scale only feeds the length stream.
struct Term {
    int sign = 1;
    SignedPermutation perm;
    bool reversed = false;
    Quad scale = 1;

    Digits apply(const Digits& s) const;
    std::vector<Quad> apply_lengths(const std::vector<Quad>& s) const;
    std::string to_string() const;
};

struct EdgewiseRule {
    std::vector<Term> terms;

    Digits image(int x) const;
};

Digits expand_edgewise(const EdgewiseRule& rule, const Digits& s);

// Variant digit: base direction plus a mark (x, x', x'', ...).
struct Token {
    int digit = 0;
    int mark = 0;

    Token operator-() const { return {-digit, mark}; }
    bool operator==(const Token&) const = default;
    auto operator<=>(const Token&) const = default;
    std::string to_string() const;
};

using TokenSeq = std::vector<Token>;

Token parse_token(std::string_view text);
TokenSeq parse_tokens(std::string_view text);
std::string format_tokens(const TokenSeq& s);
TokenSeq lift_tokens(const Digits& s);
Digits project(const TokenSeq& s);

class DigitRule {
public:
    // A positive left side also defines its negation unless that is given explicitly.
    void add(Token lhs, TokenSeq rhs);
    // Unmarked digits without an explicit entry map to prefix ++ <x + sgn(x) * shift>.
    void set_tail(Digits prefix, int shift);

    bool has(Token t) const;
    TokenSeq image(Token t) const;
    std::vector<Token> explicit_tokens() const;
    bool has_tail() const { return tail_.has_value(); }
    bool negation_symmetric() const;
    // Missing right-hand side tokens, empty when closed.
    std::vector<Token> undefined_tokens() const;

private:
    struct Tail {
        Digits prefix;
        int shift = 1;
    };
    std::map<Token, TokenSeq> map_;
    std::map<Token, bool> derived_;
    std::optional<Tail> tail_;
};

TokenSeq expand_digitwise(const DigitRule& rule, const TokenSeq& s);

struct Atom {
    enum class Kind { State, Connector };
    Kind kind = Kind::State;
    int state = -1;      // State
    Term term;           // State
    int drop_head = 0;   // State: leading edges removed from the block
    int digit = 0;       // Connector
    // Connector: the digit passes through power.at(level).
    // State: the block does, after the term; level is that of the input curve.
    std::optional<LevelPower> power;

    std::string to_string(const std::vector<std::string>& names) const;
};

struct WholeCurveRule {
    std::vector<std::string> states;
    std::vector<std::vector<Atom>> productions;
    std::vector<Digits> starts;

    int state_index(std::string_view name) const;
    int add_state(std::string name, Digits start = {});
};

// One step from level `level` to level + 1.
std::vector<Digits> expand_wholecurve(const WholeCurveRule& rule, int level, const std::vector<Digits>& current);

struct PairRule {
    std::map<std::pair<int, int>, std::pair<int, int>> map;

    void add(int x, int y, int a, int b);
    std::optional<std::pair<int, int>> lookup(int x, int y) const;
};

// Every edge emits T'(edge, successor); a closed input wraps, an open one ends with the
// context-free first digit of the last edge.
Digits expand_pairwise(const PairRule& rule, const Digits& s, bool closed = false);

enum class RuleKind { Edgewise, Digitwise, Wholecurve, Pairlift };

std::string kind_text(RuleKind k);

struct Curve {
    Digits digits;
    std::vector<Quad> lengths;  // empty unless the system has a length rule
};

class SubstitutionSystem {
public:
    std::string name;
    RuleKind kind = RuleKind::Edgewise;
    Digiset digiset;

    EdgewiseRule edgewise;
    DigitRule digitwise;
    WholeCurveRule whole;
    PairRule pair;

    Digits start;            // edgewise, digitwise (unmarked) start
    TokenSeq token_start;    // digitwise start; wins over `start` when non-empty
    int start_level = 0;
    int output_state = 0;    // wholecurve
    int drop_head = 0;       // edges removed from the front of every output
    int drop_tail = 0;       // edges removed from the back of every output
    std::optional<LevelPower> post;       // fed back after every step
    std::optional<LevelPower> normalizer; // applied to the output only

    std::shared_ptr<const SubstitutionSystem> source;  // pairlift input
    bool source_closed = false;

    std::optional<std::vector<Term>> length_terms;  // whole-curve length stream from <1>

    std::size_t item_cap = 10'000'000;

    // The k-curve; levels at or below start_level return the start.
    Digits iterate(int k) const;
    Curve iterate_curve(int k) const;
    std::vector<Quad> iterate_lengths(int k) const;
    // Raw state after k steps, before trimming and normalizing (single sequence view).
    Digits raw(int k) const;
    // Smallest level whose output has at least `count` items, then truncated.
    Curve prefix(std::size_t count, int max_level = 64) const;
    int level_for(std::size_t count, int max_level = 64) const;

    // Expansiveness: every digit's one-step image has length >= 2 (pairlift exempt).
    bool is_expansive() const;

private:
    Digits finish(Digits s, int level) const;
};

bool check_extending(const SubstitutionSystem& sys, int k);
bool check_commutation(const EdgewiseRule& rule, const SignedPermutation& p);
// Tokens keep their marks; the perm acts on the base digit.
bool check_commutation(const DigitRule& rule, const SignedPermutation& p, int n);

}  // namespace fracseq
