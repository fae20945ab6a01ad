#include "fracseq/perm.hpp"
#include "text.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace fracseq {

SignedPermutation::SignedPermutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = size();
    std::vector<int> seen(n + 1, 0);
    for (int v : images_) {
        int m = v < 0 ? -v : v;
        if (v == 0 || m > n)
            throw std::invalid_argument("perm image " + std::to_string(v) + " out of range for n=" + std::to_string(n));
        if (seen[m])
            throw std::invalid_argument("perm repeats magnitude " + std::to_string(m));
        seen[m] = 1;
    }
}

SignedPermutation SignedPermutation::identity(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return SignedPermutation(std::move(v));
}

int SignedPermutation::operator()(int x) const {
    int m = x < 0 ? -x : x;
    if (x == 0 || m > size())
        throw std::out_of_range("digit " + std::to_string(x) + " outside perm of size " + std::to_string(size()));
    int y = images_[m - 1];
    return x < 0 ? -y : y;
}

Digits SignedPermutation::apply(const Digits& s) const {
    Digits out;
    out.reserve(s.size());
    for (int x : s) out.push_back((*this)(x));
    return out;
}

bool SignedPermutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images_[i] != i + 1) return false;
    return true;
}

std::string SignedPermutation::to_string() const {
    return "[" + detail::join_ints(images_) + "]";
}

SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("compose: dimension mismatch " + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    std::vector<int> out(a.size());
    for (int k = 0; k < a.size(); ++k) out[k] = a(b.images()[k]);
    return SignedPermutation(std::move(out));
}

SignedPermutation invert(const SignedPermutation& p) {
    std::vector<int> out(p.size());
    for (int k = 1; k <= p.size(); ++k) {
        int v = p.images()[k - 1];
        out[(v < 0 ? -v : v) - 1] = v < 0 ? -k : k;
    }
    return SignedPermutation(std::move(out));
}

SignedPermutation power(const SignedPermutation& p, long long e) {
    SignedPermutation base = e < 0 ? invert(p) : p;
    if (e < 0) e = -e;
    SignedPermutation result = SignedPermutation::identity(p.size());
    while (e > 0) {
        if (e & 1) result = compose(result, base);
        base = compose(base, base);
        e >>= 1;
    }
    return result;
}

int negative_count(const SignedPermutation& p) {
    return static_cast<int>(std::count_if(p.images().begin(), p.images().end(), [](int v) { return v < 0; }));
}

int inversion_count(const SignedPermutation& p) {
    const auto& v = p.images();
    int inv = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (std::abs(v[i]) > std::abs(v[j])) ++inv;
    return inv;
}

int parity(const SignedPermutation& p) {
    return ((negative_count(p) + inversion_count(p)) % 2 == 0) ? 1 : -1;
}

PermMatrix to_matrix(const SignedPermutation& p) {
    const int n = p.size();
    PermMatrix m(n, std::vector<int>(n, 0));
    for (int k = 0; k < n; ++k) {
        int v = p.images()[k];
        m[std::abs(v) - 1][k] = v < 0 ? -1 : 1;
    }
    return m;
}

SignedPermutation from_matrix(const PermMatrix& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> out(n, 0);
    for (int col = 0; col < n; ++col) {
        for (int row = 0; row < n; ++row) {
            if (m[row].size() != static_cast<std::size_t>(n)) throw std::invalid_argument("matrix not square");
            int e = m[row][col];
            if (e == 0) continue;
            if ((e != 1 && e != -1) || out[col] != 0)
                throw std::invalid_argument("not a signed permutation matrix");
            out[col] = e * (row + 1);
        }
        if (out[col] == 0) throw std::invalid_argument("matrix column without entry");
    }
    return SignedPermutation(std::move(out));
}

// Plain fraction-free elimination; entries are small integers.
int determinant(const PermMatrix& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    long long sign = 1, prev = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return static_cast<int>(sign * a[n - 1][n - 1]);
}

SignedPermutation named_perm(std::string_view name, int n, bool positive_only) {
    if (n < 1) throw std::invalid_argument("named_perm: dimension must be positive");
    std::string key = detail::lower(name);
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    if (key == "identity" || key == "iota" || key == "id" || key == "ι") return SignedPermutation(v);
    if (key == "mu" || key == "μ" || key == "minimal_rotation") {
        std::rotate(v.begin(), v.begin() + 1, v.end());
        if (!positive_only) v[n - 1] = -v[n - 1];
        return SignedPermutation(v);
    }
    if (positive_only)
        throw std::invalid_argument("named perm '" + std::string(name) + "' needs a signed digiset");
    if (key == "negation" || key == "-iota" || key == "-id" || key == "-ι") {
        for (auto& x : v) x = -x;
        return SignedPermutation(v);
    }
    bool planar = key == "tau_x" || key == "tx" || key == "tau_y" || key == "ty" || key == "tau_d" || key == "td" ||
                  key == "tau_-d" || key == "tmd" || key == "tau_md";
    if (!planar) throw std::invalid_argument("unknown named perm '" + std::string(name) + "'");
    if (n != 2) throw std::invalid_argument("named perm '" + std::string(name) + "' is defined for n=2 only");
    if (key == "tau_x" || key == "tx") return SignedPermutation({-1, 2});
    if (key == "tau_y" || key == "ty") return SignedPermutation({1, -2});
    if (key == "tau_d" || key == "td") return SignedPermutation({2, 1});
    return SignedPermutation({-2, -1});
}

std::vector<SignedPermutation> generate_group(const std::vector<SignedPermutation>& gens, std::size_t cap) {
    if (gens.empty()) return {};
    const int n = gens.front().size();
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("generate_group: dimension mismatch");
    std::vector<SignedPermutation> closure_gens = gens;
    for (const auto& g : gens) closure_gens.push_back(invert(g));

    std::vector<SignedPermutation> elements;
    std::set<std::vector<int>> seen;
    std::deque<SignedPermutation> queue;
    auto visit = [&](const SignedPermutation& p) {
        if (seen.insert(p.images()).second) {
            if (elements.size() >= cap) throw std::length_error("generate_group: element cap exceeded");
            elements.push_back(p);
            queue.push_back(p);
        }
    };
    visit(SignedPermutation::identity(n));
    while (!queue.empty()) {
        SignedPermutation cur = queue.front();
        queue.pop_front();
        for (const auto& g : closure_gens) visit(compose(cur, g));
    }
    return elements;
}

SignedPermutation parse_perm(std::string_view text) {
    std::string_view body = detail::trim(text);
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw std::invalid_argument("perm literal missing ']'");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> v = detail::parse_int_list(body);
    const int n = static_cast<int>(v.size());
    std::map<int, int> first;
    for (int i = 0; i < n; ++i) {
        int m = std::abs(v[i]);
        if (v[i] == 0 || m > n)
            throw std::invalid_argument("perm literal: image " + std::to_string(v[i]) + " at position " +
                                        std::to_string(i + 1) + " out of range 1.." + std::to_string(n));
        auto [it, fresh] = first.emplace(m, i + 1);
        if (!fresh)
            throw std::invalid_argument("perm literal: magnitude " + std::to_string(m) + " duplicated at positions " +
                                        std::to_string(it->second) + " and " + std::to_string(i + 1));
    }
    return SignedPermutation(std::move(v));
}

}  // namespace fracseq
