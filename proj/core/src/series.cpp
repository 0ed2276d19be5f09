#include "cky/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cky {

void ScalingParams::validate() const
{
    if (s < 2)
        throw InvalidParams("leading order s must be >= 2, got " + std::to_string(s));
    if (!(c_l > 2) || !std::isfinite(c_l))
        throw InvalidParams("c_l must be a finite value > 2");
    if (!(theta_s > 0) || !std::isfinite(theta_s))
        throw InvalidParams("theta_s must be a finite value > 0");
}

BoundTriple rigorous_bounds(const ScalingParams& p)
{
    p.validate();
    const double s = p.s, cl = p.c_l;
    const double A = std::min((cl - 2) / (s * (s + 1)), 2 * (cl - 2) / (9 * s));
    const double B = 2 * (cl - 2) / (9 * s);
    const double C = std::max(s * p.theta_s / (A * B), s * s * s * s * p.theta_s / (A * (s * cl - cl - s + 2)));
    const double r = (p.s == 2) ? C : std::pow(C, 1.0 / (s - 1));
    BoundTriple b;
    b.u0 = A / r;
    b.theta0 = b.u0 * B;
    b.r = r;
    return b;
}

namespace {

// Outward enclosure of the positive real root x^(n) = C for C an interval.
Interval iv_root(const Interval& C, int n)
{
    if (n == 1)
        return C;
    double lo = std::pow(C.lo, 1.0 / n);
    double hi = std::pow(C.hi, 1.0 / n);
    while (pow_int(Interval(lo), n).hi > C.lo)
        lo = std::nextafter(lo, 0.0);
    while (pow_int(Interval(hi), n).lo < C.hi)
        hi = std::nextafter(hi, rnd::kInf);
    return Interval(lo, hi);
}

Interval iv_min(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = std::min(a.lo, b.lo);
    r.hi = std::min(a.hi, b.hi);
    return r;
}

Interval iv_max(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo = std::max(a.lo, b.lo);
    r.hi = std::max(a.hi, b.hi);
    return r;
}

bool is_integer(double x) { return std::floor(x) == x; }

} // namespace

BoundTripleIv rigorous_bounds_interval(const ScalingParams& p)
{
    p.validate();
    const Interval s(static_cast<double>(p.s)), cl(p.c_l), ths(p.theta_s);
    const Interval A = iv_min((cl - 2.0) / (s * (s + 1.0)), 2.0 * (cl - 2.0) / (9.0 * s));
    const Interval B = 2.0 * (cl - 2.0) / (9.0 * s);
    const Interval C = iv_max(s * ths / (A * B), pow_int(s, 4) * ths / (A * (s * cl - cl - s + 2.0)));
    BoundTripleIv b;
    b.r = iv_root(C, p.s - 1);
    b.u0 = A / b.r;
    b.theta0 = b.u0 * B;
    return b;
}

bool InitialBoundCheck::holds(double rel_tol) const
{
    for (double v : slack)
        if (v > rel_tol)
            return false;
    return true;
}

InitialBoundCheck check_initial_bound(const ScalingParams& p, const BoundTriple& b)
{
    p.validate();
    const int s = p.s;
    const double cl = p.c_l;
    // U_s and Theta_s in closed form
    const double Us = double(s) * s * p.theta_s / ((s * cl - cl - s + 2) * (s - 1));
    const double g = cl / s - 2.0 / s;
    const double rs = std::pow(b.r, s);
    const double lhs[4] = {std::fabs(Us), std::fabs(p.theta_s), (s + 1) * b.u0 * b.r / g,
                           2.25 * (b.theta0 / b.u0 + b.u0 * b.r) / g};
    const double rhs[4] = {b.u0 * rs / (double(s) * s), b.theta0 * rs / s, 1.0, 1.0};
    InitialBoundCheck c;
    for (int i = 0; i < 4; ++i)
        c.slack[i] = (lhs[i] - rhs[i]) / std::max(std::fabs(lhs[i]), std::fabs(rhs[i]));
    return c;
}

namespace {

// Compensated dot product (TwoProduct via fma plus TwoSum), so the recurrence
// loses no more than a couple of ulps regardless of length.
struct Dot2 {
    double s = 0, c = 0;
    void add(double a, double b)
    {
        double p = a * b;
        double ep = std::fma(a, b, -p);
        double t = s + p;
        double bb = t - s;
        double es = (s - (t - bb)) + (p - bb);
        s = t;
        c += ep + es;
    }
    double value() const { return s + c; }
};

struct PlainSum {
    Interval s{0.0};
    void add(const Interval& a, const Interval& b) { s += a * b; }
    Interval value() const { return s; }
};

template <class T> struct Acc;
template <> struct Acc<double> { using type = Dot2; };
template <> struct Acc<Interval> { using type = PlainSum; };

template <class T>
void build_impl(const ScalingParams& p, int K, std::vector<T>& U, std::vector<T>& Th)
{
    using A = typename Acc<T>::type;
    const int s = p.s;
    U.assign(K + 1, T(0.0));
    Th.assign(K + 1, T(0.0));
    const T cl(p.c_l);
    const T sd(static_cast<double>(s));
    const T a = (cl - T(2.0)) / sd; // c_l + U_1
    U[1] = (T(static_cast<double>(1 - s)) * cl - T(2.0)) / sd;
    if (K >= s)
        Th[s] = T(p.theta_s);
    for (int k = 2; k <= K; ++k) {
        if (k > s) {
            A acc;
            for (int m = s; m <= k - s + 1; ++m)
                acc.add(U[m], T(static_cast<double>(k - m + 1)) * Th[k - m + 1]);
            Th[k] = -acc.value() / (T(static_cast<double>(k - s)) * a);
        }
        if (k < s)
            continue;
        A acc;
        acc.add(T(static_cast<double>(k)), Th[k]);
        for (int m = s; m <= k - s + 1; ++m) {
            const double d = k - m;
            acc.add(-U[m], T(d * d) * U[k - m + 1]);
        }
        const double km1 = k - 1;
        U[k] = acc.value() / (T(km1) + a * T(km1 * km1));
    }
}

} // namespace

SeriesCoefficients build_coefficients(const ScalingParams& p, int K)
{
    p.validate();
    if (K < p.s + 1)
        throw InvalidParams("series truncation K must be >= s + 1");
    SeriesCoefficients c;
    c.params = p;
    build_impl(p, K, c.U, c.Theta);
    c.bounds = rigorous_bounds(p);
    c.radius_estimate = estimate_radius(c.U, c.Theta, p.s, std::min(K, 50));
    return c;
}

SeriesCoefficientsIv build_coefficients_interval(const ScalingParams& p, int K)
{
    p.validate();
    if (K < p.s + 1)
        throw InvalidParams("series truncation K must be >= s + 1");
    SeriesCoefficientsIv c;
    c.params = p;
    build_impl(p, K, c.U, c.Theta);
    c.bounds = rigorous_bounds(p);
    return c;
}

RecurrenceResidual recurrence_residual(const SeriesCoefficients& c, int k)
{
    const double cl = c.params.c_l;
    RecurrenceResidual r;
    long double th = 0, w = 0;
    auto add = [](long double& acc, double& scale, long double term) {
        acc += term;
        scale = std::max(scale, static_cast<double>(std::fabs(term)));
    };
    add(th, r.theta_scale, static_cast<long double>(2 - cl) * c.Theta[k]);
    add(th, r.theta_scale, static_cast<long double>(k) * cl * c.Theta[k]);
    for (int m = 1; m <= k - 1; ++m)
        add(th, r.theta_scale, static_cast<long double>(k - m + 1) * c.Theta[k - m + 1] * c.U[m]);
    add(w, r.w_scale, static_cast<long double>(k - 1) * c.U[k]);
    add(w, r.w_scale, static_cast<long double>(cl) * (k - 1) * (k - 1) * c.U[k]);
    for (int m = 1; m <= k - 1; ++m)
        add(w, r.w_scale, static_cast<long double>(c.U[m]) * (k - m) * (k - m) * c.U[k - m + 1]);
    add(w, r.w_scale, -static_cast<long double>(k) * c.Theta[k]);
    r.theta = static_cast<double>(th);
    r.w = static_cast<double>(w);
    return r;
}

TruncationBound truncation_bound(const BoundTripleIv& b, int m, double eta_s, double c_l)
{
    if (!is_integer(c_l))
        throw InvalidParams("rigorous truncation bounds need an integer c_l");
    if (!(eta_s > 0))
        throw InvalidParams("eta_s must be positive");
    const int cli = static_cast<int>(c_l);
    const Interval eta(eta_s);
    const Interval x = pow_int(eta, cli); // xi_s = eta_s^c_l
    const Interval rho = b.r * x;
    if (rho.hi >= 1.0)
        throw OutsideRadius("divergent tail: r * eta_s^c_l >= 1");
    const Interval one_m = 1.0 - rho;
    const double m1 = m + 1, m2 = m + 2;
    TruncationBound t;
    t.b_U = (b.u0 * pow_int(b.r, m + 1) * pow_int(x, m) / (m1 * m1 * one_m)).hi;
    t.b_Theta = (b.theta0 * pow_int(rho, m + 1) * pow_int(eta, 2 - cli) / (m1 * one_m)).hi;
    t.b_W = (b.u0 * pow_int(b.r, m + 2) * pow_int(x, m + 1) / (m2 * one_m)).hi;
    return t;
}

TruncationBound truncation_bound(const BoundTriple& b, int m, double eta_s, double c_l)
{
    if (!(eta_s > 0))
        throw InvalidParams("eta_s must be positive");
    const double x = std::pow(eta_s, c_l);
    const double rho = b.r * x;
    if (rho >= 1.0)
        throw OutsideRadius("divergent tail: r * eta_s^c_l >= 1");
    const double m1 = m + 1, m2 = m + 2;
    TruncationBound t;
    t.b_U = b.u0 * std::pow(b.r, m + 1) * std::pow(x, m) / (m1 * m1 * (1 - rho));
    t.b_Theta = b.theta0 * std::pow(rho, m + 1) * std::pow(eta_s, 2 - c_l) / (m1 * (1 - rho));
    t.b_W = b.u0 * std::pow(b.r, m + 2) * std::pow(x, m + 1) / (m2 * (1 - rho));
    return t;
}

namespace {

// slope of least-squares line through (k, log|c_k|), zero coefficients skipped
bool log_slope(const std::vector<double>& c, int k0, int k1, double& slope)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int k = k0; k <= k1 && k < static_cast<int>(c.size()); ++k) {
        if (c[k] == 0)
            continue;
        const double y = std::log(std::fabs(c[k]));
        sx += k;
        sy += y;
        sxx += double(k) * k;
        sxy += k * y;
        ++n;
    }
    if (n < 2)
        return false;
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return true;
}

} // namespace

double estimate_radius(const std::vector<double>& U, const std::vector<double>& Theta, int s, int k_max)
{
    double a1 = 0, a2 = 0;
    const bool ok1 = log_slope(Theta, s, k_max, a1);
    const bool ok2 = log_slope(U, s, k_max, a2);
    if (!ok1 && !ok2)
        throw std::domain_error("degenerate radius fit: fewer than two nonzero coefficients");
    double inv = std::numeric_limits<double>::infinity();
    if (ok1)
        inv = std::min(inv, std::exp(-a1));
    if (ok2)
        inv = std::min(inv, std::exp(-a2));
    return 0.5 * inv;
}

double estimate_radius(const SeriesCoefficients& c)
{
    return estimate_radius(c.U, c.Theta, c.params.s, std::min(c.K(), 50));
}

} // namespace cky

namespace cky {

namespace {

void check_radius(const SeriesCoefficients& c, double xi)
{
    if (!(xi >= 0) || !(xi < c.radius_estimate))
        throw OutsideRadius("series evaluated at xi = " + std::to_string(xi) + " outside estimated radius " +
                            std::to_string(c.radius_estimate));
}

// sum_{k=k0}^{k1} a_k x^(k-k0) by Horner
template <class F>
double horner(F coef, int k0, int k1, double x)
{
    double acc = 0;
    for (int k = k1; k >= k0; --k)
        acc = acc * x + coef(k);
    return acc;
}

} // namespace

ProfileState evaluate_series(const SeriesCoefficients& c, double xi)
{
    check_radius(c, xi);
    const int K = c.K();
    ProfileState st;
    st.chart = Chart::NearField;
    st.position = xi;
    st.U = xi * horner([&](int k) { return c.U[k]; }, 1, K, xi);
    st.Theta = xi * horner([&](int k) { return c.Theta[k]; }, 1, K, xi);
    st.W = xi * horner([&](int k) { return c.W(k); }, 1, K - 1, xi);
    return st;
}

ProfileState evaluate_series_derivative(const SeriesCoefficients& c, double xi)
{
    check_radius(c, xi);
    const int K = c.K();
    ProfileState st;
    st.chart = Chart::NearField;
    st.position = xi;
    st.U = horner([&](int k) { return k * c.U[k]; }, 1, K, xi);
    st.Theta = horner([&](int k) { return k * c.Theta[k]; }, 1, K, xi);
    st.W = horner([&](int k) { return k * c.W(k); }, 1, K - 1, xi);
    return st;
}

ProfileState evaluate_series_far(const SeriesCoefficients& c, double eta, int m)
{
    const int K = c.K();
    if (m < 0)
        m = K - 1;
    if (m > K - 1)
        throw InvalidParams("far-chart truncation m must be <= K - 1");
    const double x = std::pow(eta, c.params.c_l);
    check_radius(c, x);
    ProfileState st;
    st.chart = Chart::FarField;
    st.position = eta;
    st.U = horner([&](int k) { return c.U[k]; }, 1, m, x);
    st.Theta = eta * eta * horner([&](int k) { return c.Theta[k]; }, 1, m, x);
    st.W = x * horner([&](int k) { return c.W(k); }, 1, m, x);
    return st;
}

} // namespace cky
