#ifndef CKY_ANALYSIS_HPP
#define CKY_ANALYSIS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cky/simulate.hpp"

namespace cky {

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FitField { WMax, QMax };
std::string to_string(FitField f);

struct FitResult {
    FitField field = FitField::WMax;
    double slope = 0;
    double intercept = 0;
    double exponent = 0;   // field ~ C (T - t)^exponent
    double T_estimate = 0;
    double t_lo = 0, t_hi = 0;
    double residual_rms = 0;
    long n_points = 0;
};

// Fit (d/dt log f)^{-1} ~ a t + b over samples with t in [t_lo, t_hi].
// For f = C (T - t)^c the left side is (t - T)/c, so c = 1/a and T = -b/a.
FitResult fit_exponent(const std::vector<TraceSample>& samples, FitField field, double t_lo, double t_hi);
FitResult fit_exponent(const BlowupTrace& trace, FitField field, double t_lo, double t_hi);

// Time window covering the last `decades` decades of w_max growth in the trace.
std::pair<double, double> auto_window(const std::vector<TraceSample>& samples, double decades = 1.0);

// Regression windows used with the full layout and w0 = 1 - cos(4 pi x).
std::optional<std::pair<double, double>> reference_window(int s);

struct HolderFit {
    double alpha = 0;
    double log_C = 0;
    double x_lo = 0, x_hi = 0;
    long n_points = 0;
    double residual_rms = 0;
};

// Slope of ln|u| against ln q for particles with q in [x_lo, x_hi].
HolderFit fit_holder(const Snapshot& snap, double x_lo = 1e-10, double x_hi = 1e-9);
HolderFit fit_holder(const std::vector<double>& q, const std::vector<double>& u, double x_lo, double x_hi);

enum class ProfileSource { SelfSimilarEq, SimulationSnapshot };
std::string to_string(ProfileSource s);

struct RescaledProfile {
    std::vector<double> grid;
    std::vector<double> values;
    ProfileSource source = ProfileSource::SelfSimilarEq;
    double t = 0;
    double w_max = 0;
};

RescaledProfile rescale_snapshot(const Snapshot& snap, int grid_points = 1001);
RescaledProfile profile_from_equation(const std::vector<double>& grid, const std::vector<double>& W_s);

// Piecewise-linear interpolation; x must be increasing, queries are clamped to its range.
double interp_linear(const std::vector<double>& x, const std::vector<double>& y, double xq);

struct ProfileDeviation {
    double sup = 0;
    double l2 = 0; // root mean square over grid points
};

// b is resampled onto a's grid when the grids differ.
ProfileDeviation compare_profiles(const RescaledProfile& a, const RescaledProfile& b);

} // namespace cky

#endif
