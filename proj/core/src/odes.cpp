#include "cky/odes.hpp"

#include <algorithm>
#include <cmath>

namespace cky {

std::string to_string(Chart c)
{
    switch (c) {
    case Chart::NearField:
        return "near";
    case Chart::FarField:
        return "far";
    case Chart::Infinity:
        return "infinity";
    }
    return "unknown";
}

namespace {

void check_finite(const Vec3& d, const char* where)
{
    if (!std::isfinite(d.U) || !std::isfinite(d.W) || !std::isfinite(d.Theta))
        throw SingularRhs(std::string("non-finite derivative in ") + where);
}

} // namespace

Vec3 rhs_near(double xi, const Vec3& y, double c_l)
{
    const double Ut = c_l * xi + y.U;
    if (xi == 0 || Ut == 0)
        throw SingularRhs("near-field rhs singular (xi = 0 or c_l xi + U = 0)");
    Vec3 d;
    d.Theta = (c_l - 2) * y.Theta / Ut;
    d.W = (c_l - 2) * y.Theta / (Ut * Ut) - y.W / Ut;
    d.U = y.W + y.U / xi;
    check_finite(d, "rhs_near");
    return d;
}

Vec3 rhs_far(double eta, const Vec3& y, double c_l)
{
    const double D = c_l + y.U;
    if (eta == 0 || D == 0)
        throw SingularRhs("far-field rhs singular (eta = 0 or c_l + U^ = 0)");
    const double eD = eta * D;
    Vec3 d;
    d.Theta = (2 - c_l) * y.Theta * y.U / eD;
    d.W = -c_l * y.W / eD + c_l * (c_l - 2) * y.Theta / (D * D * eta * eta * eta);
    d.U = c_l * y.W / eta;
    check_finite(d, "rhs_far");
    return d;
}

Vec3 rhs_infinity(double zeta, const Vec3& y, double c_l)
{
    const double E = c_l + y.U * zeta;
    if (zeta == 0 || E == 0)
        throw SingularRhs("infinity-chart rhs singular (zeta = 0 or c_l + U~ zeta = 0)");
    Vec3 d;
    d.Theta = (c_l - 2) * y.Theta * y.U / E;
    d.W = -(y.W * y.U / E + c_l * (c_l - 2) * y.Theta / (E * E));
    d.U = -(y.U + c_l * y.W) / zeta;
    check_finite(d, "rhs_infinity");
    return d;
}

ProfileState infinity_initial(double W_inf, double Theta_inf, double c_l)
{
    return {Chart::Infinity, 0.0, -c_l * W_inf, W_inf, Theta_inf};
}

ProfileState near_to_far(const ProfileState& p, double c_l)
{
    const double xi = p.position;
    return {Chart::FarField, std::pow(xi, 1.0 / c_l), p.U / xi, p.W, p.Theta * std::pow(xi, -1.0 + 2.0 / c_l)};
}

ProfileState far_to_near(const ProfileState& p, double c_l)
{
    const double xi = std::pow(p.position, c_l);
    return {Chart::NearField, xi, p.U * xi, p.W, p.Theta * std::pow(xi, 1.0 - 2.0 / c_l)};
}

ProfileState far_to_infinity(const ProfileState& p)
{
    const double eta = p.position;
    return {Chart::Infinity, 1.0 / eta, p.U * eta, p.W * eta, p.Theta};
}

ProfileState infinity_to_far(const ProfileState& p)
{
    const double zeta = p.position;
    return {Chart::FarField, 1.0 / zeta, p.U * zeta, p.W * zeta, p.Theta};
}

namespace {

SeriesCoefficients near_series(int s, double c_l, int K, double theta_s)
{
    ScalingParams p;
    p.s = s;
    p.c_l = c_l;
    p.theta_s = theta_s;
    return build_coefficients(p, K);
}

double length_scale(int s, double theta_s) { return std::pow(theta_s, 1.0 / (s - 1)); }

double eta_end_of(int s, double c_l, const GConfig& cfg)
{
    return cfg.eta_end * std::pow(length_scale(s, cfg.theta_s), -1.0 / c_l);
}

Vec3 far_end_state(int s, double c_l, const GConfig& cfg)
{
    const ProfileState far0 = shoot_to_far_start(s, c_l, cfg);
    auto f = [c_l](double x, const Vec3& y) { return rhs_far(x, y, c_l); };
    return rk4_integrate(f, vec_of(far0), far0.position, eta_end_of(s, c_l, cfg), cfg.n_far);
}

} // namespace

ProfileState shoot_to_far_start(int s, double c_l, const GConfig& cfg)
{
    const SeriesCoefficients c = near_series(s, c_l, cfg.K, cfg.theta_s);
    const double xi_h = 0.5 * c.radius_estimate;
    const double xi_m = cfg.xi_match / length_scale(s, cfg.theta_s);
    ProfileState near;
    if (xi_h >= xi_m) {
        near = evaluate_series(c, xi_m);
    } else {
        const ProfileState start = evaluate_series(c, xi_h);
        auto f = [c_l](double x, const Vec3& y) { return rhs_near(x, y, c_l); };
        const Vec3 y = rk4_integrate(f, vec_of(start), xi_h, xi_m, cfg.n_near);
        near = state_of(Chart::NearField, xi_m, y);
    }
    return near_to_far(near, c_l);
}

double eval_G(int s, double c_l, const GConfig& cfg) { return far_end_state(s, c_l, cfg).U; }

double eval_G_tail_corrected(int s, double c_l, const GConfig& cfg)
{
    const Vec3 y = far_end_state(s, c_l, cfg);
    return y.U + c_l * y.W;
}

ShootingResult find_root_cl(int s, double c_lo, double c_hi, double tol, const GConfig& cfg)
{
    if (!(c_lo > 2) || !(c_hi > c_lo))
        throw std::invalid_argument("bracket must satisfy 2 < c_lo < c_hi");
    ShootingResult r;
    r.s = s;
    r.lo = c_lo;
    r.hi = c_hi;
    r.G_lo = eval_G(s, c_lo, cfg);
    r.G_hi = eval_G(s, c_hi, cfg);
    r.samples.emplace_back(c_lo, r.G_lo);
    r.samples.emplace_back(c_hi, r.G_hi);
    if (!(r.G_lo < 0 && r.G_hi > 0))
        throw std::invalid_argument("invalid bracket: need G(c_lo) < 0 < G(c_hi)");
    while (r.hi - r.lo > tol) {
        const double mid = 0.5 * (r.lo + r.hi);
        if (mid <= r.lo || mid >= r.hi)
            break;
        const double g = eval_G(s, mid, cfg);
        r.samples.emplace_back(mid, g);
        ++r.iterations;
        if (g < 0) {
            r.lo = mid;
            r.G_lo = g;
        } else {
            r.hi = mid;
            r.G_hi = g;
        }
    }
    r.c_l_root = 0.5 * (r.lo + r.hi);
    return r;
}

namespace {

double interp_linear(const std::vector<ProfileState>& v, double x)
{
    auto it = std::lower_bound(v.begin(), v.end(), x,
                               [](const ProfileState& p, double val) { return p.position < val; });
    if (it == v.begin())
        return it->W;
    if (it == v.end())
        return v.back().W;
    const ProfileState& b = *it;
    const ProfileState& a = *(it - 1);
    const double t = (x - a.position) / (b.position - a.position);
    return a.W + t * (b.W - a.W);
}

} // namespace

ProfileResult compute_profile(int s, double c_l, const ProfileConfig& cfg)
{
    const SeriesCoefficients c = near_series(s, c_l, cfg.K, cfg.theta_s);
    ProfileResult r;
    r.s = s;
    r.c_l = c_l;
    r.xi_handoff = std::min(0.5 * c.radius_estimate, cfg.xi_max);
    const long n_series = std::max<long>(16, static_cast<long>(std::ceil(r.xi_handoff / cfg.h)));
    for (long i = 0; i <= n_series; ++i) {
        const double xi = r.xi_handoff * static_cast<double>(i) / static_cast<double>(n_series);
        r.samples.push_back(evaluate_series(c, xi));
    }
    if (r.xi_handoff < cfg.xi_max) {
        const long n = static_cast<long>(std::ceil((cfg.xi_max - r.xi_handoff) / cfg.h));
        auto f = [c_l](double x, const Vec3& y) { return rhs_near(x, y, c_l); };
        rk4_integrate(f, vec_of(r.samples.back()), r.xi_handoff, cfg.xi_max, n,
                      [&](double x, const Vec3& y) { r.samples.push_back(state_of(Chart::NearField, x, y)); });
    }
    std::size_t imax = 0;
    for (std::size_t i = 1; i < r.samples.size(); ++i)
        if (r.samples[i].W > r.samples[imax].W)
            imax = i;
    if (imax == 0 || imax + 1 == r.samples.size())
        throw NoInteriorMaximum("W has no interior maximum on [0, xi_max]; increase xi_max");
    r.W_max = r.samples[imax].W;
    r.xi0 = r.samples[imax].position;
    const int n = std::max(2, cfg.grid_points);
    r.grid.resize(n);
    r.W_s.resize(n);
    for (int i = 0; i < n; ++i) {
        const double g = static_cast<double>(i) / (n - 1);
        r.grid[i] = g;
        r.W_s[i] = interp_linear(r.samples, g * r.xi0) / r.W_max;
    }
    r.W_s.back() = 1.0;
    return r;
}

std::vector<ProfileState> thin_samples(const std::vector<ProfileState>& v, int n)
{
    if (n <= 1 || static_cast<std::size_t>(n) >= v.size())
        return v;
    std::vector<ProfileState> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const std::size_t j = static_cast<std::size_t>(std::llround(double(i) * double(v.size() - 1) / (n - 1)));
        out.push_back(v[j]);
    }
    return out;
}

FarLimits far_limits(int s, double c_l, const GConfig& cfg, double drift_tol)
{
    FarLimits L;
    const ProfileState far0 = shoot_to_far_start(s, c_l, cfg);
    auto f = [c_l](double x, const Vec3& y) { return rhs_far(x, y, c_l); };
    const double eta_end = eta_end_of(s, c_l, cfg);
    const double h = (eta_end - far0.position) / static_cast<double>(cfg.n_far);
    const double marks[3] = {eta_end / 100, eta_end / 10, eta_end};
    Vec3 y = vec_of(far0);
    double x = far0.position;
    for (double m : marks) {
        const long n = std::max<long>(1, std::lround((m - x) / h));
        y = rk4_integrate(f, y, x, m, n);
        x = m;
        L.etas.push_back(m);
        L.states.push_back(y);
    }
    auto rich = [](double f1, double f10) { return (10 * f10 - f1) / 9; };
    double we[3], th[3];
    for (int i = 0; i < 3; ++i) {
        we[i] = L.states[i].W * L.etas[i];
        th[i] = L.states[i].Theta;
    }
    const double w1 = rich(we[0], we[1]), w2 = rich(we[1], we[2]);
    const double t1 = rich(th[0], th[1]), t2 = rich(th[1], th[2]);
    L.W_inf = w2;
    L.Theta_inf = t2;
    L.U_eta = L.states[2].U * L.etas[2];
    L.W_eta = we[2];
    L.cross_check = std::fabs(L.U_eta + c_l * L.W_eta) / std::fabs(L.U_eta);
    L.drift = std::max(std::fabs(w2 - w1) / std::fabs(w2), std::fabs(t2 - t1) / std::fabs(t2));
    L.converged = std::isfinite(L.drift) && L.drift < drift_tol;
    if (!L.converged)
        L.diagnostic = "far-field limits drift between eta = 1e3..1e5 (relative drift " + std::to_string(L.drift) +
                       "); c_l is likely not a root of G";
    return L;
}

} // namespace cky
