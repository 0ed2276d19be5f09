#ifndef CKY_INTERVAL_HPP
#define CKY_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cky {

class IntervalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroInDivisor : public IntervalError {
public:
    ZeroInDivisor() : IntervalError("interval divisor contains zero") {}
};

class NonFiniteResult : public IntervalError {
public:
    explicit NonFiniteResult(const std::string& what) : IntervalError("non-finite interval result in " + what) {}
};

// Directed rounding of a single operation. The nearest-rounded result is
// corrected by one ulp only when the exact error term says it is on the wrong
// side, so the endpoint is the exact directed-rounded value in the normal range.
// Near underflow the error term is no longer exact and we step out unconditionally.
namespace rnd {

inline constexpr double kTiny = 0x1p-960;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double checked(double x, const char* op)
{
    if (!std::isfinite(x)) [[unlikely]]
        throw NonFiniteResult(op);
    return x;
}

inline double two_sum_err(double a, double b, double s)
{
    double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b)
{
    double s = checked(a + b, "add");
    return two_sum_err(a, b, s) < 0 ? std::nextafter(s, -kInf) : s;
}

inline double add_up(double a, double b)
{
    double s = checked(a + b, "add");
    return two_sum_err(a, b, s) > 0 ? std::nextafter(s, kInf) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b)
{
    double p = checked(a * b, "mul");
    if (a == 0 || b == 0)
        return 0.0;
    if (std::fabs(p) < kTiny)
        return std::nextafter(p, -kInf);
    return std::fma(a, b, -p) < 0 ? std::nextafter(p, -kInf) : p;
}

inline double mul_up(double a, double b)
{
    double p = checked(a * b, "mul");
    if (a == 0 || b == 0)
        return 0.0;
    if (std::fabs(p) < kTiny)
        return std::nextafter(p, kInf);
    return std::fma(a, b, -p) > 0 ? std::nextafter(p, kInf) : p;
}

// sign of (a/b - q), with r = a - q*b exact
inline int div_err_sign(double a, double b, double q)
{
    double r = std::fma(-q, b, a);
    if (r == 0)
        return 0;
    return ((r > 0) == (b > 0)) ? 1 : -1;
}

inline double div_down(double a, double b)
{
    double q = checked(a / b, "div");
    if (a == 0)
        return 0.0;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny)
        return std::nextafter(q, -kInf);
    return div_err_sign(a, b, q) < 0 ? std::nextafter(q, -kInf) : q;
}

inline double div_up(double a, double b)
{
    double q = checked(a / b, "div");
    if (a == 0)
        return 0.0;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny)
        return std::nextafter(q, kInf);
    return div_err_sign(a, b, q) > 0 ? std::nextafter(q, kInf) : q;
}

} // namespace rnd

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    // A double converts to the degenerate interval holding exactly that binary64 value.
    Interval(double x) : lo(rnd::checked(x, "construct")), hi(x) {} // NOLINT
    Interval(double l, double h) : lo(l), hi(h)
    {
        if (!std::isfinite(l) || !std::isfinite(h))
            throw NonFiniteResult("construct");
        if (!(l <= h))
            throw IntervalError("interval with lo > hi");
    }

    bool is_point() const { return lo == hi; }
};

inline Interval operator+(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = rnd::add_down(a.lo, b.lo);
    r.hi = rnd::add_up(a.hi, b.hi);
    return r;
}

inline Interval operator-(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = rnd::sub_down(a.lo, b.hi);
    r.hi = rnd::sub_up(a.hi, b.lo);
    return r;
}

inline Interval operator-(const Interval& a)
{
    Interval r;
    r.lo = -a.hi;
    r.hi = -a.lo;
    return r;
}

inline Interval operator*(const Interval& a, const Interval& b)
{
    using namespace rnd;
    Interval r;
    if (a.lo >= 0) {
        if (b.lo >= 0) {
            r.lo = mul_down(a.lo, b.lo);
            r.hi = mul_up(a.hi, b.hi);
        } else if (b.hi <= 0) {
            r.lo = mul_down(a.hi, b.lo);
            r.hi = mul_up(a.lo, b.hi);
        } else {
            r.lo = mul_down(a.hi, b.lo);
            r.hi = mul_up(a.hi, b.hi);
        }
    } else if (a.hi <= 0) {
        if (b.lo >= 0) {
            r.lo = mul_down(a.lo, b.hi);
            r.hi = mul_up(a.hi, b.lo);
        } else if (b.hi <= 0) {
            r.lo = mul_down(a.hi, b.hi);
            r.hi = mul_up(a.lo, b.lo);
        } else {
            r.lo = mul_down(a.lo, b.hi);
            r.hi = mul_up(a.lo, b.lo);
        }
    } else {
        if (b.lo >= 0) {
            r.lo = mul_down(a.lo, b.hi);
            r.hi = mul_up(a.hi, b.hi);
        } else if (b.hi <= 0) {
            r.lo = mul_down(a.hi, b.lo);
            r.hi = mul_up(a.lo, b.lo);
        } else {
            r.lo = std::min(mul_down(a.lo, b.hi), mul_down(a.hi, b.lo));
            r.hi = std::max(mul_up(a.lo, b.lo), mul_up(a.hi, b.hi));
        }
    }
    return r;
}

inline Interval operator/(const Interval& a, const Interval& b)
{
    using namespace rnd;
    Interval r;
    if (b.lo > 0) {
        if (a.lo >= 0) {
            r.lo = div_down(a.lo, b.hi);
            r.hi = div_up(a.hi, b.lo);
        } else if (a.hi <= 0) {
            r.lo = div_down(a.lo, b.lo);
            r.hi = div_up(a.hi, b.hi);
        } else {
            r.lo = div_down(a.lo, b.lo);
            r.hi = div_up(a.hi, b.lo);
        }
    } else if (b.hi < 0) {
        if (a.lo >= 0) {
            r.lo = div_down(a.hi, b.hi);
            r.hi = div_up(a.lo, b.lo);
        } else if (a.hi <= 0) {
            r.lo = div_down(a.hi, b.lo);
            r.hi = div_up(a.lo, b.hi);
        } else {
            r.lo = div_down(a.hi, b.hi);
            r.hi = div_up(a.lo, b.hi);
        }
    } else {
        throw ZeroInDivisor();
    }
    return r;
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

inline Interval iv_add(const Interval& a, const Interval& b) { return a + b; }
inline Interval iv_sub(const Interval& a, const Interval& b) { return a - b; }
inline Interval iv_mul(const Interval& a, const Interval& b) { return a * b; }
inline Interval iv_div(const Interval& a, const Interval& b) { return a / b; }

inline double iv_midpoint(const Interval& a)
{
    double m = 0.5 * a.lo + 0.5 * a.hi;
    return std::clamp(m, a.lo, a.hi);
}

inline double iv_width(const Interval& a) { return rnd::sub_up(a.hi, a.lo); }

inline bool iv_contains(const Interval& a, double x) { return a.lo <= x && x <= a.hi; }

inline bool iv_contains(const Interval& outer, const Interval& inner)
{
    return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

inline bool iv_overlaps(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

inline Interval iv_hull(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = std::min(a.lo, b.lo);
    r.hi = std::max(a.hi, b.hi);
    return r;
}

inline bool iv_contains_zero(const Interval& a) { return a.lo <= 0 && 0 <= a.hi; }

// Largest absolute value in the interval.
inline double iv_mag(const Interval& a) { return std::max(std::fabs(a.lo), std::fabs(a.hi)); }

inline Interval sqr(const Interval& a)
{
    // a square is never negative, even when the rounded-down product underflows past zero
    if (a.lo >= 0)
        return Interval(std::max(0.0, rnd::mul_down(a.lo, a.lo)), rnd::mul_up(a.hi, a.hi));
    if (a.hi <= 0)
        return Interval(std::max(0.0, rnd::mul_down(a.hi, a.hi)), rnd::mul_up(a.lo, a.lo));
    double m = iv_mag(a);
    return Interval(0.0, rnd::mul_up(m, m));
}

// Integer power by repeated squaring; negative n goes through one division.
Interval pow_int(const Interval& a, int n);

std::string to_string(const Interval& a);

} // namespace cky

#endif
