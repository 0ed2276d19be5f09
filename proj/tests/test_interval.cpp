#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cky/interval.hpp"
#include "oracles.hpp"

using cky::Interval;
using oracle::q;

namespace {

double random_double(std::mt19937_64& g)
{
    std::uniform_real_distribution<double> mant(1.0, 2.0);
    std::uniform_int_distribution<int> ex(-40, 40);
    std::uniform_int_distribution<int> pick(0, 19);
    const int p = pick(g);
    if (p == 0)
        return 0.0;
    if (p == 1)
        return std::ldexp(mant(g), -1000); // exercises the tiny-product path
    const double v = std::ldexp(mant(g), ex(g));
    return (g() & 1) ? v : -v;
}

Interval random_interval(std::mt19937_64& g)
{
    double a = random_double(g), b = random_double(g);
    if ((g() % 4) == 0)
        b = a;
    if (a > b)
        std::swap(a, b);
    return Interval(a, b);
}

bool contains_exact(const Interval& r, const mpq_class& x) { return q(r.lo) <= x && x <= q(r.hi); }

} // namespace

TEST(Interval, RandomContainmentAgainstRationalOracle)
{
    std::mt19937_64 g(20240611);
    long violations = 0, cases = 0;
    for (int n = 0; n < 100000; ++n) {
        const Interval a = random_interval(g), b = random_interval(g);
        const double ea[2] = {a.lo, a.hi}, eb[2] = {b.lo, b.hi};
        const Interval sum = a + b, diff = a - b, prod = a * b;
        for (double x : ea)
            for (double y : eb) {
                const mpq_class X = q(x), Y = q(y);
                violations += !contains_exact(sum, X + Y);
                violations += !contains_exact(diff, X - Y);
                violations += !contains_exact(prod, X * Y);
                cases += 3;
            }
        if (!cky::iv_contains_zero(b)) {
            Interval quot;
            try {
                quot = a / b;
            } catch (const cky::NonFiniteResult&) {
                continue; // quotient beyond the double range
            }
            for (double x : ea)
                for (double y : eb) {
                    violations += !contains_exact(quot, q(x) / q(y));
                    ++cases;
                }
        }
    }
    EXPECT_EQ(violations, 0) << "over " << cases << " endpoint cases";
}

TEST(Interval, PointOperationsAreTight)
{
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int n = 0; n < 10000; ++n) {
        const double x = u(g), y = u(g);
        for (const Interval r : {Interval(x) + Interval(y), Interval(x) * Interval(y), Interval(x) / Interval(y)}) {
            EXPECT_LE(r.hi, std::nextafter(r.lo, INFINITY));
        }
    }
    // exact operations stay degenerate
    EXPECT_TRUE((Interval(1.5) + Interval(2.25)).is_point());
    EXPECT_TRUE((Interval(3.0) * Interval(0.5)).is_point());
}

TEST(Interval, OneThirdEnclosesExactly)
{
    const Interval t = Interval(1.0) / Interval(3.0);
    EXPECT_TRUE(contains_exact(t, oracle::frac(1, 3)));
    EXPECT_EQ(t.hi, std::nextafter(t.lo, 1.0));
}

TEST(Interval, DivisionByZeroContainingIntervalThrows)
{
    EXPECT_THROW(Interval(1.0) / Interval(-1.0, 1.0), cky::ZeroInDivisor);
    EXPECT_THROW(Interval(1.0) / Interval(0.0), cky::ZeroInDivisor);
}

TEST(Interval, InvalidConstructionAndOverflow)
{
    EXPECT_THROW(Interval(2.0, 1.0), cky::IntervalError);
    EXPECT_THROW(Interval(NAN, 1.0), cky::IntervalError);
    EXPECT_THROW(Interval(1e300) * Interval(1e300), cky::NonFiniteResult);
}

TEST(Interval, SquareAndPowersContainExactValues)
{
    std::mt19937_64 g(99);
    for (int n = 0; n < 2000; ++n) {
        const Interval a = random_interval(g);
        if (cky::iv_mag(a) > 1e6 || cky::iv_mag(a) < 1e-6)
            continue;
        const Interval s = cky::sqr(a);
        EXPECT_GE(s.lo, 0.0);
        for (double x : {a.lo, a.hi}) {
            EXPECT_TRUE(contains_exact(s, q(x) * q(x)));
            mpq_class p = 1;
            for (int k = 1; k <= 7; ++k) {
                p *= q(x);
                EXPECT_TRUE(contains_exact(cky::pow_int(Interval(x), k), p)) << x << "^" << k;
            }
        }
    }
    EXPECT_TRUE(contains_exact(cky::pow_int(Interval(3.0), -2), oracle::frac(1, 9)));
    EXPECT_TRUE(cky::pow_int(Interval(-2.0, 3.0), 2).lo == 0.0);
}

TEST(Interval, MidpointWidthHullAndFormatting)
{
    const Interval a(-1.0, 3.0);
    EXPECT_EQ(cky::iv_midpoint(a), 1.0);
    EXPECT_EQ(cky::iv_width(a), 4.0);
    EXPECT_TRUE(cky::iv_contains(a, 0.0));
    EXPECT_TRUE(cky::iv_overlaps(a, Interval(3.0, 4.0)));
    EXPECT_FALSE(cky::iv_overlaps(a, Interval(3.5, 4.0)));
    const Interval h = cky::iv_hull(a, Interval(5.0));
    EXPECT_EQ(h.lo, -1.0);
    EXPECT_EQ(h.hi, 5.0);
    EXPECT_EQ(cky::to_string(Interval(0.1, 0.5)), "[0.1, 0.5]");
    // width never rounds down
    const Interval n(1.0, std::nextafter(1.0, 2.0));
    EXPECT_GT(cky::iv_width(n), 0.0);
}
