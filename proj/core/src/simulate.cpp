#include "cky/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cky {

std::string to_string(WInit w) { return w == WInit::Cos4Pi ? "cos4pi" : "quadratic"; }

WInit winit_from_string(const std::string& s)
{
    if (s == "cos4pi" || s == "1-cos4pix")
        return WInit::Cos4Pi;
    if (s == "quadratic" || s == "x-x2")
        return WInit::Quadratic;
    throw std::invalid_argument("unknown initial vorticity '" + s + "' (use cos4pi or quadratic)");
}

ParticleSystem init_particles(int s, WInit w_init, const Layout& layout)
{
    if (layout.n_inner < 2 || layout.n_outer < 2 || !(layout.x_split > 0 && layout.x_split < 1))
        throw std::invalid_argument("invalid particle layout");
    ParticleSystem sys;
    sys.s = s;
    sys.w_init = w_init;
    sys.layout = layout;
    const long n = layout.count();
    sys.q.resize(n);
    for (long i = 0; i < layout.n_inner; ++i)
        sys.q[i] = layout.x_split * static_cast<double>(i) / static_cast<double>(layout.n_inner - 1);
    for (long j = 1; j < layout.n_outer; ++j)
        sys.q[layout.n_inner - 1 + j] =
            layout.x_split + (1.0 - layout.x_split) * static_cast<double>(j) / static_cast<double>(layout.n_outer - 1);
    sys.q.back() = 1.0;
    sys.theta.resize(n);
    sys.w.resize(n);
    const double pi = std::numbers::pi;
    for (long i = 0; i < n; ++i) {
        const double x = sys.q[i];
        const double sn = std::sin(0.5 * pi * x);
        sys.theta[i] = std::pow(2 * sn * sn, 0.5 * s); // 1 - cos(pi x) without the cancellation at small x
        sys.w[i] = (w_init == WInit::Cos4Pi) ? 1.0 - std::cos(4 * pi * x) : x - x * x;
    }
    sys.theta[0] = 0;
    sys.w[0] = 0;
    return sys;
}

std::vector<double> velocity(const std::vector<double>& q, const std::vector<double>& w)
{
    const std::size_t n = q.size();
    std::vector<double> u(n, 0.0);
    if (n < 2)
        return u;
    // integrand w/y on the nodes; the origin node only enters u_0, which is 0 anyway
    double acc = 0;
    double g_next = w[n - 1] / q[n - 1];
    for (std::size_t i = n - 1; i-- > 1;) {
        const double g = w[i] / q[i];
        acc += 0.5 * (g + g_next) * (q[i + 1] - q[i]);
        u[i] = -q[i] * acc;
        g_next = g;
    }
    u[0] = 0;
    return u;
}

std::vector<double> velocity(const ParticleSystem& sys) { return velocity(sys.q, sys.w); }

std::vector<double> theta_x(const std::vector<double>& q, const std::vector<double>& th)
{
    const std::size_t n = q.size();
    std::vector<double> d(n, 0.0);
    if (n < 3)
        return d;
    auto dd = [&](std::size_t a, std::size_t b) { return (th[a] - th[b]) / (q[a] - q[b]); };
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = dd(i, i + 1) + dd(i, i - 1) - dd(i + 1, i - 1);
    const std::size_t N = n - 1;
    d[N] = dd(N, N - 2) + dd(N, N - 1) - dd(N - 2, N - 1);
    d[0] = 0;
    return d;
}

std::vector<double> theta_x(const ParticleSystem& sys) { return theta_x(sys.q, sys.theta); }

double adaptive_dt(const std::vector<double>& q, const std::vector<double>& u, double cap)
{
    double rate = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        rate = std::max(rate, (u[i] - u[i + 1]) / (q[i + 1] - q[i]));
    if (rate <= 0)
        return cap;
    return std::min(1.0 / rate / 10.0, cap);
}

namespace {

void check_order(const std::vector<double>& q, double t)
{
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        if (!(q[i] < q[i + 1]))
            throw ParticleCrossing("particles " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                   " crossed near t = " + std::to_string(t));
}

} // namespace

void step(ParticleSystem& sys, double dt)
{
    const std::size_t n = sys.size();
    const std::vector<double>& q0 = sys.q;
    const std::vector<double>& w0 = sys.w;
    std::vector<double> qs(n), ws(n), dq(n, 0.0), dw(n, 0.0);

    auto stage = [&](const std::vector<double>& q, const std::vector<double>& w, double weight, double shift,
                     bool last) {
        const std::vector<double> u = velocity(q, w);
        const std::vector<double> tx = theta_x(q, sys.theta);
        for (std::size_t i = 0; i < n; ++i) {
            dq[i] += weight * u[i];
            dw[i] += weight * tx[i];
            if (!last) {
                qs[i] = q0[i] + shift * dt * u[i];
                ws[i] = w0[i] + shift * dt * tx[i];
            }
        }
    };
    stage(q0, w0, 1.0, 0.5, false);
    std::vector<double> q1 = qs, w1 = ws;
    stage(q1, w1, 2.0, 0.5, false);
    q1 = qs;
    w1 = ws;
    stage(q1, w1, 2.0, 1.0, false);
    q1 = qs;
    w1 = ws;
    stage(q1, w1, 1.0, 0.0, true);
    for (std::size_t i = 0; i < n; ++i) {
        sys.q[i] += dt / 6.0 * dq[i];
        sys.w[i] += dt / 6.0 * dw[i];
    }
    sys.q[0] = 0;
    sys.w[0] = 0;
    sys.t += dt;
    check_order(sys.q, sys.t);
}

void locate_max(const ParticleSystem& sys, double& w_max, double& q_max)
{
    std::size_t k = 0;
    for (std::size_t i = 1; i < sys.size(); ++i)
        if (sys.w[i] > sys.w[k])
            k = i;
    w_max = sys.w[k];
    q_max = sys.q[k];
}

Snapshot make_snapshot(const ParticleSystem& sys, double threshold)
{
    Snapshot s;
    s.t = sys.t;
    locate_max(sys, s.w_max, s.q_max);
    s.threshold = threshold;
    s.q = sys.q;
    s.theta = sys.theta;
    s.w = sys.w;
    s.u = velocity(sys);
    return s;
}

BlowupTrace run_until(ParticleSystem& sys, const RunOptions& opt)
{
    BlowupTrace tr;
    std::vector<double> thresholds = opt.snapshot_thresholds;
    std::sort(thresholds.begin(), thresholds.end());
    std::size_t next_snap = 0;
    double w_max = 0, q_max = 0;
    locate_max(sys, w_max, q_max);
    tr.samples.push_back({sys.t, w_max, q_max, 0.0});
    for (long k = 0; k < opt.max_steps; ++k) {
        while (next_snap < thresholds.size() && w_max >= thresholds[next_snap])
            tr.snapshots.push_back(make_snapshot(sys, thresholds[next_snap++]));
        if (w_max >= opt.w_max_limit) {
            tr.stop_reason = "w_max limit reached";
            return tr;
        }
        if (sys.t >= opt.t_max) {
            tr.stop_reason = "t_max reached";
            return tr;
        }
        const double dt = adaptive_dt(sys.q, velocity(sys), opt.dt_cap);
        try {
            step(sys, dt);
        } catch (const ParticleCrossing& e) {
            tr.stop_reason = std::string("aborted: ") + e.what();
            return tr;
        }
        locate_max(sys, w_max, q_max);
        tr.samples.push_back({sys.t, w_max, q_max, dt});
    }
    tr.stop_reason = "max_steps reached";
    return tr;
}

} // namespace cky
