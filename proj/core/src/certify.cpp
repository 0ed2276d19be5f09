#include "cky/certify.hpp"

#include <chrono>
#include <cmath>

namespace cky {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::GPositive:
        return "GPositive";
    case Verdict::GNegative:
        return "GNegative";
    case Verdict::Inconclusive:
        return "Inconclusive";
    }
    return "Inconclusive";
}

std::string to_string(Propagation p) { return p == Propagation::Additive ? "additive" : "matrix"; }

CertifyConfig default_certify_config(int s, double c_l)
{
    CertifyConfig c;
    c.s = s;
    c.c_l = c_l;
    c.eta_s = (c_l == 8.0) ? 0.7 : 0.1;
    return c;
}

double max_width(const IntervalState& st)
{
    return std::max({iv_width(st.U_hat), iv_width(st.W_hat), iv_width(st.Theta_hat)});
}

namespace {

Interval symmetric(double b) { return Interval(-b, b); }

// sum_{k=k0}^{k1} a_k x^(k-k0)
template <class F>
Interval horner(F coef, int k0, int k1, const Interval& x)
{
    Interval acc(0.0);
    for (int k = k1; k >= k0; --k)
        acc = acc * x + coef(k);
    return acc;
}

} // namespace

IntervalState validated_initial(int s, double c_l, int m, double eta_s)
{
    ScalingParams p;
    p.s = s;
    p.c_l = c_l;
    p.theta_s = 1.0;
    p.validate();
    if (m < s)
        throw InvalidParams("series truncation m must be >= s");
    const TruncationBound tb = truncation_bound(rigorous_bounds_interval(p), m, eta_s, c_l);
    const SeriesCoefficientsIv c = build_coefficients_interval(p, m + 1);
    const Interval eta(eta_s);
    const Interval x = pow_int(eta, static_cast<int>(c_l));
    IntervalState st;
    st.eta = eta_s;
    st.U_hat = horner([&](int k) { return c.U[k]; }, 1, m, x) + symmetric(tb.b_U);
    st.Theta_hat = sqr(eta) * horner([&](int k) { return c.Theta[k]; }, 1, m, x) + symmetric(tb.b_Theta);
    st.W_hat = x * horner([&](int k) { return c.W(k); }, 1, m, x) + symmetric(tb.b_W);
    return st;
}

AprioriBox apriori_enclosure(const IntervalState& st, const Interval& h, double c_l, int s)
{
    if (!(st.eta > 0))
        throw InvalidParams("a priori box needs eta^n > 0");
    if (!(st.Theta_hat.lo > 0))
        throw IntervalError("Theta^ enclosure is not positive");
    const Interval eta(st.eta);
    const Interval cl(c_l);
    const Interval rho = (eta + h) / eta; // >= 1
    // rho^a is monotone in a for rho >= 1, so integer exponents bracket it.
    const double a_hi = 2 - c_l + s * c_l;
    const double a_lo = 2 - c_l;
    const double th_max = (Interval(st.Theta_hat.hi) * pow_int(rho, static_cast<int>(std::ceil(a_hi)))).hi;
    const double th_min = (Interval(st.Theta_hat.lo) * pow_int(rho, static_cast<int>(std::floor(a_lo)))).lo;
    const double u_min = st.U_hat.lo;
    const Interval eta3 = pow_int(eta, 3);
    const double ss = static_cast<double>(s) * s;
    const double w_max = (Interval(st.W_hat.hi) + ss * cl * Interval(th_max) * h / ((cl - 2.0) * eta3)).hi;
    const double u_max = (Interval(st.U_hat.hi) + cl * Interval(w_max) * h / eta).hi;
    const Interval denom = cl + Interval(u_min);
    if (!(denom.lo > 0))
        throw ZeroInDivisor();
    const double w_min = (Interval(st.W_hat.lo) - h * cl * Interval(w_max) / (eta * denom)).lo;
    AprioriBox b;
    b.theta = iv_hull(Interval(th_min, th_max), st.Theta_hat);
    b.u = iv_hull(Interval(u_min, u_max), st.U_hat);
    b.w = iv_hull(Interval(w_min, w_max), st.W_hat);
    return b;
}

Jacobian3 jacobian_enclosure(const Interval& eta, const AprioriBox& box, double c_l)
{
    const Interval cl(c_l);
    const Interval D = cl + box.u;
    const Interval D2 = sqr(D);
    const Interval eta2 = sqr(eta);
    const Interval eta3 = eta2 * eta;
    const Interval etaD = eta * D;
    Jacobian3 J;
    J.m[0][0] = -cl / etaD;
    J.m[0][1] = cl * (4.0 * box.theta - 2.0 * cl * box.theta + D * eta2 * box.w) / (D2 * D * eta3);
    J.m[0][2] = cl * (cl - 2.0) / (D2 * eta3);
    J.m[1][0] = cl / eta;
    J.m[1][1] = Interval(0.0);
    J.m[1][2] = Interval(0.0);
    J.m[2][0] = Interval(0.0);
    J.m[2][1] = cl * (2.0 - cl) * box.theta / (D2 * eta);
    J.m[2][2] = (2.0 - cl) * box.u / etaD;
    return J;
}

IvTriple rhs_far_interval(const Interval& eta, const Interval& W, const Interval& U, const Interval& Th, double c_l)
{
    const Interval cl(c_l);
    const Interval D = cl + U;
    const Interval etaD = eta * D;
    IvTriple d;
    d.Theta = (2.0 - cl) * Th * U / etaD;
    d.W = -cl * W / etaD + cl * (cl - 2.0) * Th / (sqr(D) * pow_int(eta, 3));
    d.U = cl * W / eta;
    return d;
}

SecondDerivative second_derivative_enclosure(const Interval& eta, const AprioriBox& box, double c_l)
{
    const Interval cl(c_l);
    const Interval& W = box.w;
    const Interval& U = box.u;
    const Interval& Th = box.theta;
    const IvTriple d1 = rhs_far_interval(eta, W, U, Th, c_l);
    const Interval D = cl + U;
    const Interval D2 = sqr(D);
    const Interval eta2 = sqr(eta);
    const Interval eta3 = eta2 * eta;
    const Interval etaD = eta * D;
    SecondDerivative d2;
    d2.U = cl * d1.W / eta - cl * W / eta2;
    d2.Theta = (2.0 - cl) * (d1.Theta * U / etaD + cl * Th * d1.U / (eta * D2) - Th * U / (eta2 * D));
    d2.W = -cl * (d1.W / etaD - W / (eta2 * D) - W * d1.U / (eta * D2)) +
           cl * (cl - 2.0) * (d1.Theta / (D2 * eta3) - 2.0 * Th * d1.U / (D2 * D * eta3) - 3.0 * Th / (D2 * eta3 * eta));
    return d2;
}

IntervalState validated_step(const IntervalState& st, double eta_next, double c_l, int s, Propagation prop)
{
    const Interval eta(st.eta);
    const Interval h = Interval(eta_next) - eta;
    const AprioriBox box = apriori_enclosure(st, h, c_l, s);

    const double mW = iv_midpoint(st.W_hat), mU = iv_midpoint(st.U_hat), mT = iv_midpoint(st.Theta_hat);
    const Interval e[3] = {st.W_hat - mW, st.U_hat - mU, st.Theta_hat - mT};

    const IvTriple f = rhs_far_interval(eta, Interval(mW), Interval(mU), Interval(mT), c_l);
    AprioriBox here;
    here.w = st.W_hat;
    here.u = st.U_hat;
    here.theta = st.Theta_hat;
    const Jacobian3 J = jacobian_enclosure(eta, here, c_l);
    const SecondDerivative y2 = second_derivative_enclosure(Interval(st.eta, eta_next), box, c_l);
    const Interval half_h2 = 0.5 * sqr(h);

    Interval prop_err[3];
    for (int i = 0; i < 3; ++i) {
        if (prop == Propagation::Additive) {
            prop_err[i] = e[i] + h * (J.m[i][0] * e[0] + J.m[i][1] * e[1] + J.m[i][2] * e[2]);
        } else {
            Interval acc(0.0);
            for (int j = 0; j < 3; ++j) {
                const Interval mij = (i == j ? Interval(1.0) : Interval(0.0)) + h * J.m[i][j];
                acc += mij * e[j];
            }
            prop_err[i] = acc;
        }
    }
    IntervalState out;
    out.eta = eta_next;
    out.W_hat = mW + (h * f.W + prop_err[0] + half_h2 * y2.W);
    out.U_hat = mU + (h * f.U + prop_err[1] + half_h2 * y2.U);
    out.Theta_hat = mT + (h * f.Theta + prop_err[2] + half_h2 * y2.Theta);
    return out;
}

void evaluate_conditions(Certificate& c, const IntervalState& st, double c_l)
{
    const Interval cl(c_l);
    const Interval& u0 = st.U_hat;
    c.cond_u0 = u0;
    c.cond_u0_plus_2 = u0 + 2.0;
    c.conditions_evaluated = true;
    if (u0.lo > 0) {
        c.verdict = Verdict::GPositive;
        return;
    }
    if (c.cond_u0_plus_2.lo > 0) {
        const Interval eta0(st.eta);
        c.cond_negative = u0 + cl * st.W_hat + (cl - 2.0) * st.Theta_hat / (c.cond_u0_plus_2 * (1.0 + u0 / cl) * sqr(eta0));
        if (c.cond_negative.hi < 0) {
            c.verdict = Verdict::GNegative;
            return;
        }
    }
    c.verdict = Verdict::Inconclusive;
    if (c.diagnostic.empty())
        c.diagnostic = "neither sign condition could be certified at the final enclosure";
}

Certificate certify_sign(const CertifyConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    Certificate c;
    c.config = cfg;
    auto finish = [&]() {
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return c;
    };
    if (!(cfg.h > 0) || !(cfg.eta_target > cfg.eta_s))
        throw InvalidParams("certify needs h > 0 and eta_target > eta_s");
    const double span = cfg.eta_target - cfg.eta_s;
    long n = static_cast<long>(std::ceil(span / cfg.h * (1 - 1e-12)));
    n = std::max<long>(n, 1);
    c.n_steps = n;
    IntervalState st;
    try {
        st = validated_initial(cfg.s, cfg.c_l, cfg.m, cfg.eta_s);
    } catch (const std::exception& ex) {
        c.diagnostic = std::string("initial enclosure failed: ") + ex.what();
        c.verdict = Verdict::Inconclusive;
        return finish();
    }
    c.initial_state = st;
    c.checkpoints.push_back({0, st});
    double wprev[3] = {iv_width(st.W_hat), iv_width(st.U_hat), iv_width(st.Theta_hat)};
    try {
        for (long i = 0; i < n; ++i) {
            const double next = (i + 1 == n) ? cfg.eta_target : cfg.eta_s + span * static_cast<double>(i + 1) / n;
            st = validated_step(st, next, cfg.c_l, cfg.s, cfg.propagation);
            ++c.steps_taken;
            const double w[3] = {iv_width(st.W_hat), iv_width(st.U_hat), iv_width(st.Theta_hat)};
            for (int k = 0; k < 3; ++k) {
                if (w[k] < wprev[k])
                    ++c.width_decreases;
                wprev[k] = w[k];
            }
            if (std::max({w[0], w[1], w[2]}) > cfg.width_cap) {
                c.final_state = st;
                c.verdict = Verdict::Inconclusive;
                c.diagnostic = "enclosure width exceeded cap at eta = " + std::to_string(st.eta);
                return finish();
            }
            if (cfg.checkpoint_every > 0 && (c.steps_taken % cfg.checkpoint_every == 0 || i + 1 == n))
                c.checkpoints.push_back({c.steps_taken, st});
        }
    } catch (const std::exception& ex) {
        c.final_state = st;
        c.verdict = Verdict::Inconclusive;
        c.diagnostic = std::string("validated step aborted at eta = ") + std::to_string(st.eta) + ": " + ex.what();
        return finish();
    }
    c.final_state = st;
    evaluate_conditions(c, st, cfg.c_l);
    return finish();
}

} // namespace cky
