#include <gtest/gtest.h>

#include <cmath>

#include "cky/certify.hpp"
#include "cky/odes.hpp"

using namespace cky;

namespace {

Vec3 wut_to_vec(double W, double U, double Th) { return Vec3{U, W, Th}; }

double component(const Vec3& v, int i) { return i == 0 ? v.W : (i == 1 ? v.U : v.Theta); }

AprioriBox point_box(double W, double U, double Th)
{
    AprioriBox b;
    b.w = Interval(W);
    b.u = Interval(U);
    b.theta = Interval(Th);
    return b;
}

bool near_contains(const Interval& x, double v, double tol) { return x.lo - tol <= v && v <= x.hi + tol; }

// Solution reference: far-chart series start at eta_s, then RK4 with a fine step.
struct Reference {
    double c_l;
    ProfileState start;
    Reference(int s, double c_l_, double eta_s) : c_l(c_l_)
    {
        ScalingParams p;
        p.s = s;
        p.c_l = c_l_;
        start = evaluate_series_far(build_coefficients(p, 50), eta_s);
    }
    Vec3 at(double eta, long n) const
    {
        return rk4_integrate([this](double x, const Vec3& y) { return rhs_far(x, y, c_l); }, vec_of(start),
                             start.position, eta, n);
    }
};

} // namespace

TEST(Certify, JacobianMatchesFiniteDifferences)
{
    for (double cl : {3.0, 8.0}) {
        const double eta = 1.3, W = 0.4, U = -0.9, Th = 1.7;
        const Jacobian3 J = jacobian_enclosure(Interval(eta), point_box(W, U, Th), cl);
        const double h = 1e-6;
        for (int j = 0; j < 3; ++j) {
            double p[3] = {W, U, Th}, m[3] = {W, U, Th};
            p[j] += h;
            m[j] -= h;
            const Vec3 fp = rhs_far(eta, wut_to_vec(p[0], p[1], p[2]), cl);
            const Vec3 fm = rhs_far(eta, wut_to_vec(m[0], m[1], m[2]), cl);
            for (int i = 0; i < 3; ++i) {
                const double fd = (component(fp, i) - component(fm, i)) / (2 * h);
                EXPECT_TRUE(near_contains(J.m[i][j], fd, 1e-7 * (1 + std::fabs(fd))))
                    << "J[" << i << "][" << j << "] = " << to_string(J.m[i][j]) << " fd " << fd << " c_l=" << cl;
            }
        }
    }
}

TEST(Certify, SecondDerivativeMatchesTrajectoryFiniteDifference)
{
    for (double cl : {3.0, 5.0, 8.0}) {
        const double eta = 0.9;
        const Vec3 y{-0.8, 0.35, 1.2};
        const double h = 1e-5;
        auto f = [cl](double x, const Vec3& v) { return rhs_far(x, v, cl); };
        const Vec3 yp = rk4_integrate(f, y, eta, eta + h, 1), ym = rk4_integrate(f, y, eta, eta - h, 1);
        const Vec3 fp = f(eta + h, yp), fm = f(eta - h, ym);
        const SecondDerivative d2 = second_derivative_enclosure(Interval(eta), point_box(y.W, y.U, y.Theta), cl);
        EXPECT_TRUE(near_contains(d2.U, (fp.U - fm.U) / (2 * h), 1e-6)) << cl;
        EXPECT_TRUE(near_contains(d2.W, (fp.W - fm.W) / (2 * h), 1e-6)) << cl;
        EXPECT_TRUE(near_contains(d2.Theta, (fp.Theta - fm.Theta) / (2 * h), 1e-6)) << cl;
    }
}

TEST(Certify, SecondDerivativeReducesAtClThree)
{
    // closed forms for c_l = 3, D = 3 + U
    for (double eta : {0.2, 1.1, 2.9}) {
        const double W = 0.2, U = -1.4, Th = 0.95, D = 3 + U;
        const double W2 = (3 * eta * eta * D * W * (6 + U + 3 * W) - 6 * Th * (6 + 2 * U + 3 * W)) /
                          (std::pow(eta, 4) * D * D * D);
        const double U2 = (9 * Th - 3 * eta * eta * D * (6 + U) * W) / (std::pow(eta, 4) * D * D);
        const double T2 = (Th * U * (3 + 2 * U) - 9 * Th * W) / (eta * eta * D * D);
        const SecondDerivative d2 = second_derivative_enclosure(Interval(eta), point_box(W, U, Th), 3.0);
        const double tol = 1e-12 * (1 + std::fabs(W2) + std::fabs(U2) + std::fabs(T2));
        EXPECT_TRUE(near_contains(d2.U, U2, tol)) << eta;
        EXPECT_TRUE(near_contains(d2.Theta, T2, tol)) << eta;
        EXPECT_TRUE(near_contains(d2.W, W2, tol)) << eta;
    }
}

TEST(Certify, AprioriBoxContainsFineTrajectory)
{
    const Reference ref(2, 3.0, 0.1);
    long outside = 0;
    for (double eta0 : {0.1, 0.5, 1.0, 2.5}) {
        const Vec3 y0 = eta0 == 0.1 ? vec_of(ref.start) : ref.at(eta0, 200000);
        IntervalState st;
        st.eta = eta0;
        st.U_hat = Interval(y0.U);
        st.W_hat = Interval(y0.W);
        st.Theta_hat = Interval(y0.Theta);
        const double h = 1e-3;
        const AprioriBox box = apriori_enclosure(st, Interval(h), 3.0, 2);
        rk4_integrate([](double x, const Vec3& y) { return rhs_far(x, y, 3.0); }, y0, eta0, eta0 + h, 1000,
                      [&](double, const Vec3& y) {
                          outside += !iv_contains(box.u, y.U) || !iv_contains(box.w, y.W) ||
                                     !iv_contains(box.theta, y.Theta);
                      });
    }
    EXPECT_EQ(outside, 0);
}

TEST(Certify, InitialEnclosureContainsSeriesValue)
{
    for (double cl : {3.0, 8.0}) {
        const double eta_s = cl == 8.0 ? 0.7 : 0.1;
        const IntervalState st = validated_initial(2, cl, 20, eta_s);
        ScalingParams p;
        p.c_l = cl;
        const ProfileState ref = evaluate_series_far(build_coefficients(p, 100), eta_s);
        EXPECT_TRUE(iv_contains(st.U_hat, ref.U));
        EXPECT_TRUE(iv_contains(st.W_hat, ref.W));
        EXPECT_TRUE(iv_contains(st.Theta_hat, ref.Theta));
    }
}

TEST(Certify, CheckpointsContainFineReference)
{
    for (Propagation prop : {Propagation::Additive, Propagation::Matrix}) {
        CertifyConfig cfg = default_certify_config(2, 3.0);
        cfg.eta_target = 0.6;
        cfg.h = 1e-5;
        cfg.checkpoint_every = 5000;
        cfg.propagation = prop;
        const Certificate c = certify_sign(cfg);
        ASSERT_TRUE(c.diagnostic.empty() || c.conditions_evaluated) << c.diagnostic;
        ASSERT_GE(c.checkpoints.size(), 5u);
        const Reference ref(2, 3.0, cfg.eta_s);
        for (const Checkpoint& k : c.checkpoints) {
            if (k.step == 0)
                continue;
            const Vec3 y = ref.at(k.state.eta, 20 * k.step);
            EXPECT_TRUE(iv_contains(k.state.U_hat, y.U)) << to_string(prop) << " step " << k.step;
            EXPECT_TRUE(iv_contains(k.state.W_hat, y.W)) << to_string(prop) << " step " << k.step;
            EXPECT_TRUE(iv_contains(k.state.Theta_hat, y.Theta)) << to_string(prop) << " step " << k.step;
        }
    }
}

TEST(Certify, AdditiveWidthsNeverDecrease)
{
    CertifyConfig cfg = default_certify_config(2, 3.0);
    cfg.eta_target = 0.3;
    cfg.h = 1e-5;
    const Certificate c = certify_sign(cfg);
    EXPECT_EQ(c.width_decreases, 0);
    EXPECT_EQ(c.steps_taken, c.n_steps);
}

TEST(Certify, CoarseStepIsInconclusive)
{
    CertifyConfig cfg = default_certify_config(2, 3.0);
    cfg.h = 0.5;
    const Certificate c = certify_sign(cfg);
    EXPECT_EQ(c.verdict, Verdict::Inconclusive);
    EXPECT_FALSE(c.diagnostic.empty());
}

TEST(Certify, NonIntegerClRejected)
{
    CertifyConfig cfg = default_certify_config(2, 3.5);
    cfg.eta_target = 0.2;
    const Certificate c = certify_sign(cfg);
    EXPECT_EQ(c.verdict, Verdict::Inconclusive);
    EXPECT_NE(c.diagnostic.find("initial enclosure failed"), std::string::npos);
}

TEST(Certify, SignConditionsOnHandMadeEnclosures)
{
    Certificate c;
    IntervalState st;
    st.eta = 3.0;
    st.U_hat = Interval(0.1, 0.2);
    st.W_hat = Interval(0.5);
    st.Theta_hat = Interval(1.0);
    evaluate_conditions(c, st, 8.0);
    EXPECT_EQ(c.verdict, Verdict::GPositive);
    Certificate d;
    st.U_hat = Interval(-1.62, -1.60);
    st.W_hat = Interval(0.11);
    st.Theta_hat = Interval(0.93);
    evaluate_conditions(d, st, 3.0);
    EXPECT_EQ(d.verdict, Verdict::GNegative);
    Certificate e;
    st.U_hat = Interval(-0.5, 0.5);
    evaluate_conditions(e, st, 3.0);
    EXPECT_EQ(e.verdict, Verdict::Inconclusive);
}
