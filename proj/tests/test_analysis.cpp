#include <gtest/gtest.h>

#include <cmath>

#include "cky/analysis.hpp"

using namespace cky;

namespace {

// f = C (T - t)^c sampled uniformly in t
std::vector<TraceSample> uniform_power_law(double C, double T, double c, double t0, double t1, long n)
{
    std::vector<TraceSample> v;
    for (long i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * i / (n - 1);
        const double f = C * std::pow(T - t, c);
        v.push_back({t, f, f, 0});
    }
    return v;
}

// T - t_i = tau0 r^i, the spacing produced by a step proportional to the time left
std::vector<TraceSample> geometric_power_law(double C, double T, double c, double tau0, double L, long n)
{
    std::vector<TraceSample> v;
    for (long i = 0; i < n; ++i) {
        const double tau = tau0 * std::exp(-L * i);
        const double f = C * std::pow(tau, c);
        v.push_back({T - tau, f, f, 0});
    }
    return v;
}

Snapshot bump_snapshot(double scale_x, double scale_w)
{
    Snapshot s;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        s.q.push_back(scale_x * x);
        s.w.push_back(scale_w * x * std::exp(1 - 4 * x)); // peak at x = 0.25
    }
    return s;
}

} // namespace

TEST(Analysis, ManufacturedPowerLawsGeometricSampling)
{
    struct Case {
        double C, T, c;
    };
    for (const Case k : {Case{1.0, 1.0, -1.0}, Case{2.5, 0.5, 3.0}, Case{0.1, 0.644, -1.7}}) {
        const auto v = geometric_power_law(k.C, k.T, k.c, 0.5, 1e-3, 3000);
        const FitResult r = fit_exponent(v, FitField::WMax, v.front().t, v.back().t);
        EXPECT_NEAR(r.exponent, k.c, 1e-6 * std::fabs(k.c));
        EXPECT_NEAR(r.T_estimate, k.T, 1e-9);
        EXPECT_LT(r.residual_rms, 1e-9);
    }
}

TEST(Analysis, ManufacturedPowerLawsUniformSampling)
{
    const auto a = uniform_power_law(1.0, 1.0, -1.0, 0.0, 0.5, 100000);
    const FitResult ra = fit_exponent(a, FitField::WMax, 0.0, 0.5);
    EXPECT_NEAR(ra.exponent, -1.0, 1e-6);
    EXPECT_NEAR(ra.T_estimate, 1.0, 1e-6);
    const auto b = uniform_power_law(1.0, 0.5, 3.0, 0.0, 0.25, 100000);
    const FitResult rb = fit_exponent(b, FitField::QMax, 0.0, 0.25);
    EXPECT_NEAR(rb.exponent, 3.0, 3e-6);
    EXPECT_NEAR(rb.T_estimate, 0.5, 1e-6);
}

TEST(Analysis, FitIgnoresAmplitude)
{
    const auto a = geometric_power_law(1.0, 0.7, 3.8, 0.3, 2e-3, 1000);
    const auto b = geometric_power_law(1e7, 0.7, 3.8, 0.3, 2e-3, 1000);
    const FitResult ra = fit_exponent(a, FitField::QMax, 0.0, 1.0), rb = fit_exponent(b, FitField::QMax, 0.0, 1.0);
    EXPECT_NEAR(ra.exponent, rb.exponent, 1e-9);
    EXPECT_NEAR(ra.T_estimate, rb.T_estimate, 1e-12);
}

TEST(Analysis, FitErrors)
{
    const auto v = geometric_power_law(1.0, 1.0, -1.0, 0.5, 1e-2, 100);
    EXPECT_THROW(fit_exponent(v, FitField::WMax, 0.6, 0.5), FitError);
    EXPECT_THROW(fit_exponent(v, FitField::WMax, 0.5, 0.50001), FitError);
    auto bad = v;
    bad[50].w_max = 0;
    EXPECT_THROW(fit_exponent(bad, FitField::WMax, 0.0, 1.0), FitError);
}

TEST(Analysis, AutoWindowCoversLastDecade)
{
    const auto v = geometric_power_law(1.0, 1.0, -1.0, 1.0, 1e-2, 800);
    const auto [lo, hi] = auto_window(v);
    EXPECT_EQ(hi, v.back().t);
    // w = 1/(1-t); the decade below w_end starts where 1 - t is ten times larger
    const double tau_end = 1.0 - v.back().t;
    EXPECT_NEAR(1.0 - lo, 10 * tau_end, 10 * tau_end * 2e-2);
    EXPECT_THROW(auto_window({v[0]}), FitError);
    EXPECT_TRUE(reference_window(2).has_value());
    EXPECT_FALSE(reference_window(7).has_value());
}

TEST(Analysis, HolderExponentOfPowerLaw)
{
    std::vector<double> q, u;
    for (int i = 0; i <= 2000; ++i) {
        const double x = 1e-11 * std::pow(10.0, 3.0 * i / 2000);
        q.push_back(x);
        u.push_back(-3.0 * std::pow(x, 0.7));
    }
    const HolderFit h = fit_holder(q, u, 1e-10, 1e-9);
    EXPECT_NEAR(h.alpha, 0.7, 1e-12);
    EXPECT_NEAR(h.log_C, std::log(3.0), 1e-10);
    EXPECT_GT(h.n_points, 600);
    EXPECT_THROW(fit_holder(q, u, 1e-3, 1e-2), FitError);
    EXPECT_THROW(fit_holder(q, u, 1e-9, 1e-10), FitError);
}

TEST(Analysis, RescaledProfileEndpointsAndInvariance)
{
    const Snapshot s = bump_snapshot(1.0, 1.0);
    const RescaledProfile p = rescale_snapshot(s, 101);
    EXPECT_EQ(p.grid.front(), 0.0);
    EXPECT_EQ(p.grid.back(), 1.0);
    EXPECT_EQ(p.values.front(), 0.0);
    EXPECT_EQ(p.values.back(), 1.0);
    for (double v : p.values)
        EXPECT_LE(v, 1.0);
    // power-of-two rescaling of both axes is exact in floating point
    for (int k : {-20, -3, 5}) {
        const RescaledProfile r = rescale_snapshot(bump_snapshot(std::ldexp(1.0, k), std::ldexp(1.0, 2 * k)), 101);
        EXPECT_EQ(r.values, p.values) << k;
    }
    Snapshot edge = s;
    edge.w.back() = 10;
    EXPECT_THROW(rescale_snapshot(edge), FitError);
}

TEST(Analysis, CompareProfiles)
{
    std::vector<double> g, a, b;
    for (int i = 0; i <= 100; ++i) {
        g.push_back(i / 100.0);
        a.push_back(std::sin(g.back()));
        b.push_back(std::sin(g.back()) + 0.01);
    }
    const RescaledProfile pa = profile_from_equation(g, a), pb = profile_from_equation(g, b);
    EXPECT_EQ(compare_profiles(pa, pa).sup, 0.0);
    const ProfileDeviation d = compare_profiles(pa, pb);
    EXPECT_NEAR(d.sup, 0.01, 1e-15);
    EXPECT_NEAR(d.l2, 0.01, 1e-15);
    // different grid: linear data resamples exactly
    std::vector<double> g2, lin2, lin;
    for (int i = 0; i <= 37; ++i) {
        g2.push_back(i / 37.0);
        lin2.push_back(2 * g2.back());
    }
    for (double x : g)
        lin.push_back(2 * x);
    EXPECT_LT(compare_profiles(profile_from_equation(g, lin), profile_from_equation(g2, lin2)).sup, 1e-14);
    EXPECT_THROW(compare_profiles(RescaledProfile{}, pa), std::invalid_argument);
    EXPECT_EQ(interp_linear({0, 1}, {0, 2}, 5.0), 2.0);
}
