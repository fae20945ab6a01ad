#include "fracseq/quad.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fracseq {

namespace {

int rsign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// sign(u + v*sqrt(m)) for rationals u, v and non-square m.
int sign_with_root(const Rational& u, const Rational& v, std::int64_t m) {
    int su = rsign(u), sv = rsign(v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    Rational diff = u * u - v * v * Rational(m);
    return diff > 0 ? su : sv;
}

// Elements p + q*sqrt2 as pairs; needed for the sqrt3 level of the sign test.
struct Q2 {
    Rational p, q;
};

const Rational k2(2), k3(3), k6(6);

Q2 mul(const Q2& x, const Q2& y) { return {x.p * y.p + k2 * x.q * y.q, x.p * y.q + x.q * y.p}; }
Q2 sub(const Q2& x, const Q2& y) { return {x.p - y.p, x.q - y.q}; }
int sign2(const Q2& x) { return sign_with_root(x.p, x.q, 2); }

double rd(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

std::string rational_text(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

Quad operator+(const Quad& x, const Quad& y) { return Quad(x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.d_ + y.d_); }
Quad operator-(const Quad& x, const Quad& y) { return Quad(x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.d_ - y.d_); }

Quad operator*(const Quad& x, const Quad& y) {
    const auto &a = x.a_, &b = x.b_, &c = x.c_, &d = x.d_;
    const auto &e = y.a_, &f = y.b_, &g = y.c_, &h = y.d_;
    return Quad(a * e + k2 * b * f + k3 * c * g + k6 * d * h,
                a * f + b * e + k3 * c * h + k3 * d * g,
                a * g + c * e + k2 * b * h + k2 * d * f,
                a * h + d * e + b * g + c * f);
}

Quad Quad::inverse() const {
    if (is_zero()) throw std::domain_error("Quad: division by zero");
    Quad conj2(a_, -b_, c_, -d_);
    Quad t = *this * conj2;  // lies in Q(sqrt3)
    Quad conj3(t.a_, 0, -t.c_, 0);
    Quad n = t * conj3;      // rational
    return conj2 * conj3 * Quad(Rational(1) / n.a_);
}

Quad operator/(const Quad& x, const Quad& y) { return x * y.inverse(); }

int Quad::sign() const {
    // x = P + Q*sqrt3 with P = a + b*sqrt2, Q = c + d*sqrt2.
    Q2 P{a_, b_}, Q{c_, d_};
    int sp = sign2(P), sq = sign2(Q);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    Q2 diff = sub(mul(P, P), mul(Q2{k3 * Q.p, k3 * Q.q}, Q));
    return sign2(diff) > 0 ? sp : sq;
}

double Quad::to_double() const {
    return rd(a_) + rd(b_) * std::sqrt(2.0) + rd(c_) * std::sqrt(3.0) + rd(d_) * std::sqrt(6.0);
}

std::string Quad::to_string() const {
    std::string out;
    auto add = [&](const Rational& r, const char* root) {
        if (r == 0) return;
        Rational v = r;
        if (!out.empty()) {
            out += v < 0 ? "-" : "+";
            if (v < 0) v = -v;
        } else if (v < 0 && *root) {
            out += "-";
            v = -v;
        }
        if (*root) {
            if (v != 1) out += rational_text(v) + "*";
            out += root;
        } else {
            out += rational_text(v);
        }
    };
    add(a_, "");
    add(b_, "sqrt2");
    add(c_, "sqrt3");
    add(d_, "sqrt6");
    return out.empty() ? "0" : out;
}

std::size_t Quad::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (const Rational* r : {&a_, &b_, &c_, &d_}) {
        h ^= std::hash<std::int64_t>{}(r->numerator()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<std::int64_t>{}(r->denominator()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

Quad sqrt_exact(const Quad& x) {
    if (!x.is_rational()) throw std::domain_error("sqrt_exact: irrational radicand " + x.to_string());
    Rational r = x.a();
    if (r < 0) throw std::domain_error("sqrt_exact: negative radicand");
    if (r == 0) return Quad(0);
    auto isqrt = [](std::int64_t v) -> std::int64_t {
        auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(v))));
        while (s * s > v) --s;
        while ((s + 1) * (s + 1) <= v) ++s;
        return s * s == v ? s : -1;
    };
    for (std::int64_t m : {1, 2, 3, 6}) {
        Rational q2 = r / Rational(m);
        std::int64_t n = isqrt(q2.numerator()), dd = isqrt(q2.denominator());
        if (n < 0 || dd < 0) continue;
        Rational q(n, dd);
        switch (m) {
            case 1: return Quad(q);
            case 2: return Quad(0, q);
            case 3: return Quad(0, 0, q);
            default: return Quad(0, 0, 0, q);
        }
    }
    throw std::domain_error("sqrt_exact: no closed form for sqrt(" + x.to_string() + ")");
}

std::size_t PointHash::operator()(const Point& p) const {
    std::size_t h = p.size();
    for (const auto& q : p) h ^= q.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

bool PointLess::operator()(const Point& x, const Point& y) const {
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational* xs[] = {&x[i].a(), &x[i].b(), &x[i].c(), &x[i].d()};
        const Rational* ys[] = {&y[i].a(), &y[i].b(), &y[i].c(), &y[i].d()};
        for (int k = 0; k < 4; ++k) {
            if (*xs[k] != *ys[k]) return *xs[k] < *ys[k];
        }
    }
    return false;
}

std::vector<double> to_doubles(const Point& p) {
    std::vector<double> out;
    out.reserve(p.size());
    for (const auto& q : p) out.push_back(q.to_double());
    return out;
}

}  // namespace fracseq
