#ifndef CKY_ODES_HPP
#define CKY_ODES_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cky/series.hpp"
#include "cky/state.hpp"

namespace cky {

class SingularRhs : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Chart-local (U, W, Theta) triple, also used for derivatives.
struct Vec3 {
    double U = 0, W = 0, Theta = 0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.U + b.U, a.W + b.W, a.Theta + b.Theta}; }
inline Vec3 operator*(double h, const Vec3& a) { return {h * a.U, h * a.W, h * a.Theta}; }

inline Vec3 vec_of(const ProfileState& p) { return {p.U, p.W, p.Theta}; }
inline ProfileState state_of(Chart c, double x, const Vec3& y) { return {c, x, y.U, y.W, y.Theta}; }

// Near field, with U~ = c_l xi + U:
//   Theta' = (c_l-2) Theta / U~,  W' = (c_l-2) Theta / U~^2 - W / U~,  U' = W + U / xi
Vec3 rhs_near(double xi, const Vec3& y, double c_l);
// Far field, eta = xi^(1/c_l), D = c_l + U^:
//   Theta^' = (2-c_l) Theta^ U^ / (eta D)
//   W^'     = -c_l W^ / (eta D) + c_l (c_l-2) Theta^ / (D^2 eta^3)
//   U^'     = c_l W^ / eta
Vec3 rhs_far(double eta, const Vec3& y, double c_l);
// Infinity chart, zeta = 1/eta, U~ = U^ eta, W~ = W^ eta, Theta~ = Theta^, E = c_l + U~ zeta:
//   Theta~' = (c_l-2) Theta~ U~ / E
//   W~'     = -(W~ U~ / E + c_l (c_l-2) Theta~ / E^2)
//   U~'     = -(U~ + c_l W~) / zeta
Vec3 rhs_infinity(double zeta, const Vec3& y, double c_l);

// State at zeta = 0 from the far-field limits.
ProfileState infinity_initial(double W_inf, double Theta_inf, double c_l);

ProfileState near_to_far(const ProfileState& p, double c_l);
ProfileState far_to_near(const ProfileState& p, double c_l);
ProfileState far_to_infinity(const ProfileState& p);
ProfileState infinity_to_far(const ProfileState& p);

// Classical fixed-step RK4; obs(x, y) is called after every step.
template <class Rhs, class Obs>
Vec3 rk4_integrate(Rhs&& f, Vec3 y, double x0, double x1, long n_steps, Obs&& obs)
{
    const double h = (x1 - x0) / static_cast<double>(n_steps);
    for (long i = 0; i < n_steps; ++i) {
        const double x = x0 + static_cast<double>(i) * h;
        const Vec3 k1 = f(x, y);
        const Vec3 k2 = f(x + 0.5 * h, y + (0.5 * h) * k1);
        const Vec3 k3 = f(x + 0.5 * h, y + (0.5 * h) * k2);
        const Vec3 k4 = f(x + h, y + h * k3);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        obs(x0 + static_cast<double>(i + 1) * h, y);
    }
    return y;
}

template <class Rhs>
Vec3 rk4_integrate(Rhs&& f, Vec3 y, double x0, double x1, long n_steps)
{
    return rk4_integrate(std::forward<Rhs>(f), y, x0, x1, n_steps, [](double, const Vec3&) {});
}

struct GConfig {
    int K = 50;
    long n_near = 10000;
    long n_far = 1000000;
    double xi_match = 1.0;
    double eta_end = 1e5;
    // xi_match and eta_end are taken in units of the series' natural length
    // mu = theta_s^(1/(s-1)), so G does not depend on theta_s
    double theta_s = 1.0;
};

// Series to r_est/2, RK4 on the near system to xi_match, chart change,
// and the far-field state at eta = xi_match^(1/c_l).
ProfileState shoot_to_far_start(int s, double c_l, const GConfig& cfg = {});
double eval_G(int s, double c_l, const GConfig& cfg = {});
// U^ + c_l W^ at eta_end: removes the leading 1/eta tail of U^ when W^ eta has settled.
double eval_G_tail_corrected(int s, double c_l, const GConfig& cfg = {});

struct ShootingResult {
    int s = 0;
    double c_l_root = 0;
    double lo = 0, hi = 0;
    double G_lo = 0, G_hi = 0;
    int iterations = 0;
    std::vector<std::pair<double, double>> samples; // (c_l, G) in visiting order
};

ShootingResult find_root_cl(int s, double c_lo, double c_hi, double tol = 1e-5, const GConfig& cfg = {});

struct ProfileConfig {
    double xi_max = 10.0;
    double h = 9e-4;
    int K = 50;
    int grid_points = 1001;  // uniform grid of [0,1] for W_s
    int dense_samples = 2048; // per chart in emitted output
    double theta_s = 1.0;
};

struct ProfileResult {
    int s = 0;
    double c_l = 0;
    double xi_handoff = 0;
    std::vector<ProfileState> samples; // every node, near chart
    double W_max = 0;
    double xi0 = 0;
    std::vector<double> grid;
    std::vector<double> W_s;
};

class NoInteriorMaximum : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ProfileResult compute_profile(int s, double c_l, const ProfileConfig& cfg = {});

// Evenly thinned copy of a sample list (endpoints kept).
std::vector<ProfileState> thin_samples(const std::vector<ProfileState>& v, int n);

struct FarLimits {
    double W_inf = 0;
    double Theta_inf = 0;
    double U_eta = 0;      // U^(eta) eta at the last checkpoint
    double W_eta = 0;      // W^(eta) eta at the last checkpoint
    double cross_check = 0; // |U^ eta + c_l W^ eta| / |U^ eta|
    double drift = 0;      // relative disagreement of the two extrapolations
    bool converged = false;
    std::string diagnostic;
    std::vector<double> etas;
    std::vector<Vec3> states;
};

FarLimits far_limits(int s, double c_l, const GConfig& cfg = {}, double drift_tol = 1e-2);

} // namespace cky

#endif
