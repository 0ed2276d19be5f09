#ifndef CKY_SIMULATE_HPP
#define CKY_SIMULATE_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cky {

class ParticleCrossing : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class WInit { Cos4Pi, Quadratic };
std::string to_string(WInit w);
WInit winit_from_string(const std::string& s);

// n_inner particles evenly on [0, x_split] and n_outer evenly on [x_split, 1];
// the two sets share the node x_split, so the total is n_inner + n_outer - 1.
struct Layout {
    long n_inner = 100001;
    long n_outer = 99900;
    double x_split = 1e-3;

    static Layout full() { return {}; }
    static Layout desk() { return {10001, 9990, 1e-3}; }
    long count() const { return n_inner + n_outer - 1; }
    double inner_spacing() const { return x_split / static_cast<double>(n_inner - 1); }
    double outer_spacing() const { return (1.0 - x_split) / static_cast<double>(n_outer - 1); }
};

struct ParticleSystem {
    std::vector<double> q;
    std::vector<double> theta;
    std::vector<double> w;
    double t = 0;
    int s = 2;
    WInit w_init = WInit::Cos4Pi;
    Layout layout;

    std::size_t size() const { return q.size(); }
};

ParticleSystem init_particles(int s, WInit w_init, const Layout& layout = Layout::full());

// Trapezoidal rule for u(x) = -x int_x^1 w(y)/y dy on the particle nodes.
std::vector<double> velocity(const std::vector<double>& q, const std::vector<double>& w);
std::vector<double> velocity(const ParticleSystem& sys);

// Three-point derivative of theta at the particle nodes; 0 at the origin.
std::vector<double> theta_x(const std::vector<double>& q, const std::vector<double>& theta);
std::vector<double> theta_x(const ParticleSystem& sys);

double adaptive_dt(const std::vector<double>& q, const std::vector<double>& u, double cap = 1e-3);

// One RK4 step of dq/dt = u, dw/dt = theta_x with the given dt.
void step(ParticleSystem& sys, double dt);

struct TraceSample {
    double t, w_max, q_max, dt;
};

struct Snapshot {
    double t = 0;
    double w_max = 0;
    double q_max = 0;
    double threshold = 0;
    std::vector<double> q, theta, w, u;
};

struct BlowupTrace {
    std::vector<TraceSample> samples;
    std::vector<Snapshot> snapshots;
    std::string stop_reason;
};

struct RunOptions {
    double w_max_limit = 1e5;
    double t_max = 10.0;
    long max_steps = 50000000;
    std::vector<double> snapshot_thresholds{1e3, 1e4, 1e5};
    double dt_cap = 1e-3;
};

// Position of the maximal w (first index on ties) and its value.
void locate_max(const ParticleSystem& sys, double& w_max, double& q_max);

Snapshot make_snapshot(const ParticleSystem& sys, double threshold);

BlowupTrace run_until(ParticleSystem& sys, const RunOptions& opt = {});

} // namespace cky

#endif
