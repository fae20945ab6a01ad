#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

// Under C++20 rewritten comparisons, boost's rational == int reverses into itself
// and recurses forever. Exact overloads take priority.
namespace boost {
inline bool operator==(const rational<std::int64_t>& r, std::int64_t i) { return r.denominator() == 1 && r.numerator() == i; }
inline bool operator==(std::int64_t i, const rational<std::int64_t>& r) { return r == i; }
inline bool operator==(const rational<std::int64_t>& r, int i) { return r == static_cast<std::int64_t>(i); }
inline bool operator==(int i, const rational<std::int64_t>& r) { return r == static_cast<std::int64_t>(i); }
}  // namespace boost

namespace fracseq {

using Rational = boost::rational<std::int64_t>;

// Exact element a + b*sqrt2 + c*sqrt3 + d*sqrt6 of Q(sqrt2, sqrt3).
class Quad {
public:
    Quad() = default;
    Quad(long long v) : a_(v) {}  // NOLINT: implicit on purpose
    explicit Quad(Rational a, Rational b = 0, Rational c = 0, Rational d = 0) : a_(a), b_(b), c_(c), d_(d) {}

    static Quad sqrt2() { return Quad(0, 1); }
    static Quad sqrt3() { return Quad(0, 0, 1); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_integer() const { return is_rational() && a_.denominator() == 1; }
    int sign() const;
    double to_double() const;
    std::string to_string() const;

    Quad operator-() const { return Quad(-a_, -b_, -c_, -d_); }
    friend Quad operator+(const Quad& x, const Quad& y);
    friend Quad operator-(const Quad& x, const Quad& y);
    friend Quad operator*(const Quad& x, const Quad& y);
    friend Quad operator/(const Quad& x, const Quad& y);
    Quad& operator+=(const Quad& y) { return *this = *this + y; }
    Quad& operator-=(const Quad& y) { return *this = *this - y; }
    Quad& operator*=(const Quad& y) { return *this = *this * y; }

    bool operator==(const Quad& o) const = default;
    // Numeric order.
    friend bool operator<(const Quad& x, const Quad& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Quad& x, const Quad& y) { return y < x; }
    friend bool operator<=(const Quad& x, const Quad& y) { return !(y < x); }
    friend bool operator>=(const Quad& x, const Quad& y) { return !(x < y); }

    Quad inverse() const;
    std::size_t hash() const;

private:
    Rational a_{0}, b_{0}, c_{0}, d_{0};
};

// Square root when x is q^2 times one of 1, 2, 3, 6 for rational q; throws otherwise.
Quad sqrt_exact(const Quad& x);

using Point = std::vector<Quad>;

struct PointHash {
    std::size_t operator()(const Point& p) const;
};

// Representation order, fast and total; not numeric.
struct PointLess {
    bool operator()(const Point& x, const Point& y) const;
};

std::vector<double> to_doubles(const Point& p);

}  // namespace fracseq
