#ifndef CKY_CERTIFY_HPP
#define CKY_CERTIFY_HPP

#include <string>
#include <vector>

#include "cky/interval.hpp"
#include "cky/series.hpp"

namespace cky {

struct IntervalState {
    double eta = 0;
    Interval U_hat, W_hat, Theta_hat;
};

struct AprioriBox {
    Interval theta, u, w;
};

// Rows and columns ordered (W^, U^, Theta^).
struct Jacobian3 {
    Interval m[3][3];
};

struct IvTriple {
    Interval W, U, Theta;
};
using SecondDerivative = IvTriple;

enum class Verdict { GPositive, GNegative, Inconclusive };
std::string to_string(Verdict v);

// How the error carried in from the previous step is pushed through:
// Additive encloses e + h (J e), Matrix encloses (I + h J) e.
enum class Propagation { Additive, Matrix };
std::string to_string(Propagation p);

struct CertifyConfig {
    int s = 2;
    double c_l = 3.0;
    double eta_target = 3.0;
    double h = 2.9e-6;
    int m = 20;
    double eta_s = 0.1;
    double width_cap = 1e-2;
    long checkpoint_every = 100000;
    Propagation propagation = Propagation::Additive;
};

// Defaults for a given c_l: eta_s = 0.7 at c_l = 8, 0.1 otherwise.
CertifyConfig default_certify_config(int s, double c_l);

struct Checkpoint {
    long step = 0;
    IntervalState state;
};

struct Certificate {
    CertifyConfig config;
    Verdict verdict = Verdict::Inconclusive;
    IntervalState initial_state;
    IntervalState final_state;
    long steps_taken = 0;
    long n_steps = 0;
    // u0 itself, u0 + 2, and u0 + c_l w0 + (c_l-2) theta0 / ((u0+2)(1+u0/c_l) eta0^2)
    Interval cond_u0, cond_u0_plus_2, cond_negative;
    bool conditions_evaluated = false;
    long width_decreases = 0;
    std::string diagnostic;
    std::vector<Checkpoint> checkpoints;
    double seconds = 0;
};

// Interval enclosure of the far-chart state at eta_s from the truncated series
// plus its tail bound. Needs an integer c_l.
IntervalState validated_initial(int s, double c_l, int m, double eta_s);

// h is an enclosure of the step length eta^{n+1} - eta^n.
AprioriBox apriori_enclosure(const IntervalState& st, const Interval& h, double c_l, int s);

Jacobian3 jacobian_enclosure(const Interval& eta, const AprioriBox& box, double c_l);

SecondDerivative second_derivative_enclosure(const Interval& eta, const AprioriBox& box, double c_l);

// Right-hand side of the far system in interval arithmetic, returned as (W^', U^', Theta^').
IvTriple rhs_far_interval(const Interval& eta, const Interval& W, const Interval& U, const Interval& Th,
                                  double c_l);

IntervalState validated_step(const IntervalState& st, double eta_next, double c_l, int s,
                             Propagation prop = Propagation::Additive);

Certificate certify_sign(const CertifyConfig& cfg);

// Evaluate the sign conditions at a given enclosure.
void evaluate_conditions(Certificate& c, const IntervalState& st, double c_l);

double max_width(const IntervalState& st);

} // namespace cky

#endif
