#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fracseq {

using Digits = std::vector<int>;

// Signed permutation in one-line notation [s(1), ..., s(n)], with s(-k) = -s(k).
class SignedPermutation {
public:
    SignedPermutation() = default;
    explicit SignedPermutation(std::vector<int> images);

    static SignedPermutation identity(int n);

    int size() const { return static_cast<int>(images_.size()); }
    const std::vector<int>& images() const { return images_; }

    int operator()(int x) const;
    Digits apply(const Digits& s) const;

    bool is_identity() const;
    std::string to_string() const;

    bool operator==(const SignedPermutation&) const = default;
    auto operator<=>(const SignedPermutation&) const = default;

private:
    std::vector<int> images_;
};

using PermMatrix = std::vector<std::vector<int>>;

SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b);
SignedPermutation invert(const SignedPermutation& p);
SignedPermutation power(const SignedPermutation& p, long long e);
int parity(const SignedPermutation& p);
int negative_count(const SignedPermutation& p);
int inversion_count(const SignedPermutation& p);
PermMatrix to_matrix(const SignedPermutation& p);
SignedPermutation from_matrix(const PermMatrix& m);
int determinant(const PermMatrix& m);

// identity/iota, negation/-iota, mu, tau_x, tau_y, tau_d, tau_-d
SignedPermutation named_perm(std::string_view name, int n, bool positive_only = false);

std::vector<SignedPermutation> generate_group(const std::vector<SignedPermutation>& gens,
                                              std::size_t cap = 1000000);

// "[2,-1]" or "2,-1"
SignedPermutation parse_perm(std::string_view text);

}  // namespace fracseq
