#ifndef CKY_TOOLS_COMMANDS_HPP
#define CKY_TOOLS_COMMANDS_HPP

#include <limits>
#include <string>
#include <vector>

#include "runio.hpp"

namespace cky::cli {

inline constexpr double kAuto = std::numeric_limits<double>::quiet_NaN();

struct SeriesCmd {
    int s = 2;
    double c_l = 3.0;
    int K = 50;
    double theta_s = 1.0;
};

struct ShootCmd {
    int s = 2;
    double c_lo = 3.0;
    double c_hi = 8.0;
    double tol = 1e-5;
    int K = 50;
    long n_near = 10000;
    long n_far = 1000000;
    double xi_match = 1.0;
    double eta_end = 1e5;
};

struct CertifyCmd {
    int s = 2;
    double c_l = 3.0;
    double eta_target = 3.0;
    double h = 2.9e-6;
    int m = 20;
    double eta_s = kAuto; // 0.7 at c_l = 8, else 0.1
    double width_cap = 1e-2;
    long checkpoint_every = 100000;
    std::string propagation = "additive";
};

struct ProfileCmd {
    int s = 2;
    double c_l = kAuto; // shoot for it when absent
    double xi_max = 10.0;
    double h = 9e-4;
    int K = 50;
    int grid_points = 1001;
    int dense_samples = 2048;
};

struct SimulateCmd {
    int s = 2;
    std::string w_init = "cos4pi";
    std::string preset = "full";
    double w_max_limit = 1e5;
    double t_max = 10.0;
    std::vector<double> snapshots{1e3, 1e4, 1e5};
    double fit_t_lo = kAuto;
    double fit_t_hi = kAuto;
    double holder_lo = 1e-10;
    double holder_hi = 1e-9;
    int grid_points = 1001;
};

struct ReportCmd {
    std::vector<std::string> inputs;
};

json resolved(const SeriesCmd& c);
json resolved(const ShootCmd& c);
json resolved(const CertifyCmd& c);
json resolved(ProfileCmd c);
json resolved(const SimulateCmd& c);

// Each returns the result summary that also lands in the run manifest.
json run_series(const SeriesCmd& c, const fs::path& root, fs::path* dir_out = nullptr);
json run_shoot(const ShootCmd& c, const fs::path& root, fs::path* dir_out = nullptr);
json run_certify(const CertifyCmd& c, const fs::path& root, fs::path* dir_out = nullptr);
json run_profile(const ProfileCmd& c, const fs::path& root, fs::path* dir_out = nullptr);
json run_simulate(const SimulateCmd& c, const fs::path& root, fs::path* dir_out = nullptr);

class NoRunsFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs are run directories or roots holding them; empty means the default root.
json run_report(const ReportCmd& c, const fs::path& root, std::string* text_out = nullptr, fs::path* dir_out = nullptr);

} // namespace cky::cli

#endif
