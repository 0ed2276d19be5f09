#ifndef CKY_SERIES_HPP
#define CKY_SERIES_HPP

#include <stdexcept>
#include <vector>

#include "cky/interval.hpp"
#include "cky/state.hpp"

namespace cky {

class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OutsideRadius : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ScalingParams {
    int s = 2;
    double c_l = 3.0;
    double theta_s = 1.0;

    void validate() const;
    double c_w() const { return -1.0; }
    double c_u() const { return c_l - 1.0; }
    double c_theta() const { return c_l - 2.0; }
};

struct BoundTriple {
    double u0 = 0;
    double theta0 = 0;
    double r = 0;
};

// Enclosures of the exact real triple given by the construction.
struct BoundTripleIv {
    Interval u0;
    Interval theta0;
    Interval r;
};

// Coefficients are stored densely from index 0; index 0 is identically zero.
template <class T>
struct SeriesCoefficientsT {
    ScalingParams params;
    std::vector<T> U;
    std::vector<T> Theta;
    BoundTriple bounds;
    double radius_estimate = 0;

    int K() const { return static_cast<int>(U.size()) - 1; }
    // W_k = k U_{k+1}; valid for 1 <= k < K
    T W(int k) const { return T(static_cast<double>(k)) * U[k + 1]; }
};

using SeriesCoefficients = SeriesCoefficientsT<double>;
using SeriesCoefficientsIv = SeriesCoefficientsT<Interval>;

BoundTriple rigorous_bounds(const ScalingParams& p);
BoundTripleIv rigorous_bounds_interval(const ScalingParams& p);

// Left minus right side of each of the four coefficient-bound conditions
// (all four are of the form lhs <= rhs).
struct InitialBoundCheck {
    double slack[4];
    bool holds(double rel_tol = 0) const;
};
InitialBoundCheck check_initial_bound(const ScalingParams& p, const BoundTriple& b);

SeriesCoefficients build_coefficients(const ScalingParams& p, int K);
SeriesCoefficientsIv build_coefficients_interval(const ScalingParams& p, int K);

// Residuals of the two coefficient matching relations at index k, and the
// largest absolute summand in each (to judge the residual in ulps).
struct RecurrenceResidual {
    double theta = 0, theta_scale = 0;
    double w = 0, w_scale = 0;
};
RecurrenceResidual recurrence_residual(const SeriesCoefficients& c, int k);

struct TruncationBound {
    double b_U = 0, b_Theta = 0, b_W = 0;
};

// Tail bounds for the far-chart sums truncated at m terms. Evaluated in interval
// arithmetic; each bound is the upper endpoint of its enclosure.
TruncationBound truncation_bound(const BoundTripleIv& b, int m, double eta_s, double c_l);
TruncationBound truncation_bound(const BoundTriple& b, int m, double eta_s, double c_l);

// Truncated sums in the near chart at xi; requires xi < radius_estimate.
ProfileState evaluate_series(const SeriesCoefficients& c, double xi);
// d/dxi of the truncated sums, returned in the U/W/Theta slots.
ProfileState evaluate_series_derivative(const SeriesCoefficients& c, double xi);
// Far chart at eta, summing k = 1..m (m <= K-1, default K-1).
ProfileState evaluate_series_far(const SeriesCoefficients& c, double eta, int m = -1);

double estimate_radius(const std::vector<double>& U, const std::vector<double>& Theta, int s, int k_max = 50);
double estimate_radius(const SeriesCoefficients& c);

} // namespace cky

#endif
