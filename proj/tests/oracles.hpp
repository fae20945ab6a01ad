#pragma once
// Reference implementations used only by the tests. They avoid the library on purpose.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;

// Dense signed permutation matrix: column k has sgn(p[k]) in row |p[k]|.
inline std::vector<std::vector<int>> matrix(const Vec& p) {
    int n = static_cast<int>(p.size());
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int k = 0; k < n; ++k) m[std::abs(p[k]) - 1][k] = p[k] > 0 ? 1 : -1;
    return m;
}

// Leibniz expansion over all column orders.
inline int determinant(const std::vector<std::vector<int>>& m) {
    int n = static_cast<int>(m.size());
    std::vector<int> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    long long det = 0;
    do {
        long long term = 1;
        for (int i = 0; i < n && term; ++i) term *= m[i][cols[i]];
        if (!term) continue;
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inv += cols[i] > cols[j];
        det += (inv % 2 ? -term : term);
    } while (std::next_permutation(cols.begin(), cols.end()));
    return static_cast<int>(det);
}

// Matrix times the unit vector of a signed axis, read back as a signed axis.
inline int mat_apply(const std::vector<std::vector<int>>& m, int x) {
    int n = static_cast<int>(m.size());
    int col = std::abs(x) - 1;
    for (int r = 0; r < n; ++r)
        if (m[r][col]) return (x > 0 ? 1 : -1) * m[r][col] * (r + 1);
    return 0;
}

// Every signed permutation of size n.
inline std::vector<Vec> all_signed(int n) {
    std::vector<Vec> out;
    Vec base(n);
    std::iota(base.begin(), base.end(), 1);
    do {
        for (int mask = 0; mask < (1 << n); ++mask) {
            Vec p = base;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) p[i] = -p[i];
            out.push_back(p);
        }
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

inline int sgn_apply(const Vec& p, int x) { return x > 0 ? p[x - 1] : -p[-x - 1]; }

// Closure under composition by matrix product on one-line vectors.
inline std::size_t group_order(const std::vector<Vec>& gens) {
    std::set<Vec> seen;
    std::vector<Vec> todo;
    Vec id(gens.at(0).size());
    std::iota(id.begin(), id.end(), 1);
    seen.insert(id);
    todo.push_back(id);
    while (!todo.empty()) {
        Vec a = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
            Vec c(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) c[k] = sgn_apply(a, g[k]);
            if (seen.insert(c).second) todo.push_back(c);
        }
    }
    return seen.size();
}

// Reflected binary Gray code steps: step n flips bit ctz(n), signed by the new bit value.
inline Vec gray(int d) {
    Vec out;
    for (std::uint64_t n = 1; n < (std::uint64_t{1} << d); ++n) {
        std::uint64_t g = n ^ (n >> 1), h = (n - 1) ^ ((n - 1) >> 1);
        std::uint64_t diff = g ^ h;
        int axis = 0;
        while (!(diff >> axis & 1)) ++axis;
        out.push_back((g & diff) ? axis + 1 : -(axis + 1));
    }
    return out;
}

inline int ruler(std::uint64_t n) {
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    return v + 1;
}

inline int ternary_ones(std::uint64_t n) {
    int c = 0;
    for (; n; n /= 3) c += n % 3 == 1;
    return c;
}

// floor(x * 2^k) for x = t/3
inline long long thirds_floor(int k, int t) { return static_cast<long long>(((std::int64_t{1} << k) * t) / 3); }

// Integer lattice walk on Z^d from the origin.
inline std::vector<std::vector<long long>> walk(const Vec& s, int d) {
    std::vector<std::vector<long long>> v{std::vector<long long>(d, 0)};
    for (int x : s) {
        auto p = v.back();
        p[std::abs(x) - 1] += x > 0 ? 1 : -1;
        v.push_back(p);
    }
    return v;
}

// Plain Hilbert curve on a 2^k grid by the classic d2xy conversion; returns the step axes.
inline std::vector<std::pair<long long, long long>> hilbert_points(int k) {
    long long n = 1LL << k;
    std::vector<std::pair<long long, long long>> pts;
    for (long long d = 0; d < n * n; ++d) {
        long long x = 0, y = 0, t = d;
        for (long long s = 1; s < n; s *= 2) {
            long long rx = 1 & (t / 2), ry = 1 & (t ^ rx);
            if (ry == 0) {
                if (rx == 1) {
                    x = s - 1 - x;
                    y = s - 1 - y;
                }
                std::swap(x, y);
            }
            x += s * rx;
            y += s * ry;
            t /= 4;
        }
        pts.emplace_back(x, y);
    }
    return pts;
}

inline std::mt19937_64& rng() {
    static thread_local std::mt19937_64 g(20240531);
    return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Vec random_signed_perm(int n) {
    Vec p(n);
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng());
    for (int& x : p)
        if (uniform(0, 1)) x = -x;
    return p;
}

inline Vec random_seq(int n, int max_len) {
    Vec s(uniform(0, max_len));
    for (int& x : s) x = uniform(1, n) * (uniform(0, 1) ? 1 : -1);
    return s;
}

}  // namespace oracle
