#include "cky/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace cky {

std::string to_string(FitField f) { return f == FitField::WMax ? "w_max" : "q_max"; }

std::string to_string(ProfileSource s)
{
    return s == ProfileSource::SelfSimilarEq ? "self_similar_equation" : "simulation_snapshot";
}

namespace {

struct Affine {
    double a = 0, b = 0, rms = 0;
};

// Least squares y ~ a x + b, centered to keep the normal equations well conditioned.
Affine affine_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0))
        throw FitError("degenerate fit window: abscissae coincide");
    Affine f;
    f.a = sxy / sxx;
    f.b = my - f.a * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.a * x[i] + f.b);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

double field_of(const TraceSample& s, FitField f) { return f == FitField::WMax ? s.w_max : s.q_max; }

} // namespace

FitResult fit_exponent(const std::vector<TraceSample>& samples, FitField field, double t_lo, double t_hi)
{
    if (!(t_hi > t_lo))
        throw FitError("degenerate fit window");
    std::vector<double> ts, ys;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const double t = samples[i].t;
        if (t < t_lo || t > t_hi)
            continue;
        const double fm = field_of(samples[i - 1], field), fp = field_of(samples[i + 1], field);
        if (!(fm > 0) || !(fp > 0) || !(field_of(samples[i], field) > 0))
            throw FitError("non-positive " + to_string(field) + " in fit window");
        const double dt = samples[i + 1].t - samples[i - 1].t;
        const double d = (std::log(fp) - std::log(fm)) / dt;
        if (d == 0 || !std::isfinite(d))
            throw FitError("log-derivative vanishes in fit window");
        ts.push_back(t);
        ys.push_back(1.0 / d);
    }
    if (ts.size() < 10)
        throw FitError("fewer than 10 samples in fit window [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                       "]");
    const Affine af = affine_fit(ts, ys);
    FitResult r;
    r.field = field;
    r.slope = af.a;
    r.intercept = af.b;
    r.exponent = 1.0 / af.a;
    r.T_estimate = -af.b / af.a;
    r.t_lo = t_lo;
    r.t_hi = t_hi;
    r.residual_rms = af.rms;
    r.n_points = static_cast<long>(ts.size());
    return r;
}

FitResult fit_exponent(const BlowupTrace& trace, FitField field, double t_lo, double t_hi)
{
    return fit_exponent(trace.samples, field, t_lo, t_hi);
}

std::pair<double, double> auto_window(const std::vector<TraceSample>& samples, double decades)
{
    if (samples.size() < 3)
        throw FitError("trace too short for a fit window");
    const double w_end = samples.back().w_max;
    const double w_lo = w_end / std::pow(10.0, decades);
    std::size_t i = samples.size() - 1;
    while (i > 0 && samples[i - 1].w_max >= w_lo)
        --i;
    return {samples[i].t, samples.back().t};
}

std::optional<std::pair<double, double>> reference_window(int s)
{
    switch (s) {
    case 2:
        return std::make_pair(6.4371e-1, 6.4391e-1);
    case 3:
        return std::make_pair(6.804297e-1, 6.804300e-1);
    case 4:
        return std::make_pair(6.571218e-1, 6.571221e-1);
    case 5:
        return std::make_pair(5.9698511e-1, 5.9698515e-1);
    default:
        return std::nullopt;
    }
}

HolderFit fit_holder(const std::vector<double>& q, const std::vector<double>& u, double x_lo, double x_hi)
{
    if (!(x_hi > x_lo) || !(x_lo > 0))
        throw FitError("invalid Hoelder window");
    std::vector<double> lx, lu;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < x_lo || q[i] > x_hi)
            continue;
        // u is negative near the origin for positive w; the law is for |u|
        const double a = std::fabs(u[i]);
        if (!(a > 0))
            throw FitError("velocity vanishes inside the Hoelder window");
        lx.push_back(std::log(q[i]));
        lu.push_back(std::log(a));
    }
    if (lx.size() < 2)
        throw FitError("no particles in Hoelder window [" + std::to_string(x_lo) + ", " + std::to_string(x_hi) + "]");
    const Affine af = affine_fit(lx, lu);
    HolderFit h;
    h.alpha = af.a;
    h.log_C = af.b;
    h.x_lo = x_lo;
    h.x_hi = x_hi;
    h.n_points = static_cast<long>(lx.size());
    h.residual_rms = af.rms;
    return h;
}

HolderFit fit_holder(const Snapshot& snap, double x_lo, double x_hi) { return fit_holder(snap.q, snap.u, x_lo, x_hi); }

double interp_linear(const std::vector<double>& x, const std::vector<double>& y, double xq)
{
    if (x.empty())
        throw std::invalid_argument("interp_linear on empty data");
    if (xq <= x.front())
        return y.front();
    if (xq >= x.back())
        return y.back();
    const std::size_t j = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), xq) - x.begin());
    const std::size_t i = j - 1;
    const double f = (xq - x[i]) / (x[j] - x[i]);
    return y[i] + f * (y[j] - y[i]);
}

RescaledProfile rescale_snapshot(const Snapshot& snap, int grid_points)
{
    if (grid_points < 2)
        throw std::invalid_argument("rescale_snapshot needs at least 2 grid points");
    std::size_t k = 0;
    for (std::size_t i = 1; i < snap.w.size(); ++i)
        if (snap.w[i] > snap.w[k])
            k = i;
    if (k == 0 || k + 1 >= snap.w.size() || !(snap.w[k] > 0))
        throw FitError("no interior maximum of w in snapshot");
    const double wm = snap.w[k], qm = snap.q[k];
    RescaledProfile p;
    p.source = ProfileSource::SimulationSnapshot;
    p.t = snap.t;
    p.w_max = wm;
    p.grid.resize(grid_points);
    p.values.resize(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double xi = static_cast<double>(i) / (grid_points - 1);
        p.grid[i] = xi;
        p.values[i] = interp_linear(snap.q, snap.w, xi * qm) / wm;
    }
    return p;
}

RescaledProfile profile_from_equation(const std::vector<double>& grid, const std::vector<double>& W_s)
{
    RescaledProfile p;
    p.grid = grid;
    p.values = W_s;
    p.source = ProfileSource::SelfSimilarEq;
    return p;
}

ProfileDeviation compare_profiles(const RescaledProfile& a, const RescaledProfile& b)
{
    if (a.grid.empty())
        throw std::invalid_argument("compare_profiles on empty profile");
    const bool same = (a.grid == b.grid);
    ProfileDeviation d;
    double ss = 0;
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        const double vb = same ? b.values[i] : interp_linear(b.grid, b.values, a.grid[i]);
        const double e = std::fabs(a.values[i] - vb);
        d.sup = std::max(d.sup, e);
        ss += e * e;
    }
    d.l2 = std::sqrt(ss / static_cast<double>(a.grid.size()));
    return d;
}

} // namespace cky
