#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include <cmath>

using namespace cky::cli;

namespace {

// One flag per config key, so a JSON config file can fill whatever the command line left unset.
struct Binding {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> load;
};

struct Bindings {
    CLI::App* app;
    std::vector<Binding> items;

    template <class T>
    void add(const std::string& key, T& field, const std::string& help, std::string flag = "")
    {
        if (flag.empty())
            flag = "--" + key;
        for (char& ch : flag)
            if (ch == '_')
                ch = '-';
        CLI::Option* o = app->add_option(flag, field, help);
        if constexpr (std::is_floating_point_v<T>) {
            if (std::isfinite(field))
                o->capture_default_str();
        } else {
            o->capture_default_str();
        }
        items.push_back({key, o, [&field](const json& j) {
                             if (!j.is_null())
                                 field = j.get<T>();
                         }});
    }

    void apply(const json& cfg) const
    {
        for (auto it = cfg.begin(); it != cfg.end(); ++it) {
            const Binding* b = nullptr;
            for (const Binding& x : items)
                if (x.key == it.key())
                    b = &x;
            if (!b)
                throw CLI::ValidationError("config", "unknown key '" + it.key() + "' for " + app->get_name());
            if (b->opt->count() == 0)
                b->load(it.value());
        }
    }
};

json section_for(const json& file, const std::string& name)
{
    if (file.contains(name) && file[name].is_object())
        return file[name];
    json flat = json::object();
    for (auto it = file.begin(); it != file.end(); ++it)
        if (!it.value().is_object())
            flat[it.key()] = it.value();
    return flat;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Self-similar blow-up profiles of the CKY model: series, shooting, certificates, particle runs"};
    app.require_subcommand(1);
    std::string out_root = default_out_root().string();
    std::string config_path;
    app.add_option("-o,--out", out_root, std::string("output root (env ") + kOutRootEnv + ")")->capture_default_str();
    app.add_option("-c,--config", config_path, "JSON config file; flags given on the command line win");

    SeriesCmd series;
    ShootCmd shoot;
    CertifyCmd certify;
    ProfileCmd profile;
    SimulateCmd simulate;
    ReportCmd report;

    auto* a_series = app.add_subcommand("series", "power-series coefficients, bounds and radius");
    Bindings b_series{a_series, {}};
    b_series.add("s", series.s, "leading order of Theta at 0");
    b_series.add("c_l", series.c_l, "spatial scaling exponent");
    b_series.add("K", series.K, "number of coefficients");
    b_series.add("theta_s", series.theta_s, "leading Theta coefficient");

    auto* a_shoot = app.add_subcommand("shoot", "find the c_l root of G by bisection");
    Bindings b_shoot{a_shoot, {}};
    b_shoot.add("s", shoot.s, "leading order");
    b_shoot.add("c_lo", shoot.c_lo, "lower bracket end");
    b_shoot.add("c_hi", shoot.c_hi, "upper bracket end");
    b_shoot.add("tol", shoot.tol, "bracket width tolerance");
    b_shoot.add("K", shoot.K, "series terms");
    b_shoot.add("n_near", shoot.n_near, "RK4 steps in the near chart");
    b_shoot.add("n_far", shoot.n_far, "RK4 steps in the far chart");
    b_shoot.add("xi_match", shoot.xi_match, "near/far handoff xi");
    b_shoot.add("eta_end", shoot.eta_end, "far-chart end point");

    auto* a_cert = app.add_subcommand("certify", "interval sign certificate for G(c_l)");
    Bindings b_cert{a_cert, {}};
    b_cert.add("s", certify.s, "leading order");
    b_cert.add("c_l", certify.c_l, "integer c_l to certify");
    b_cert.add("eta_target", certify.eta_target, "final eta");
    b_cert.add("h", certify.h, "step length", "--step");
    b_cert.add("m", certify.m, "series truncation order");
    b_cert.add("eta_s", certify.eta_s, "start of the validated run (default 0.7 at c_l=8, else 0.1)");
    b_cert.add("width_cap", certify.width_cap, "abort when an enclosure gets wider than this");
    b_cert.add("checkpoint_every", certify.checkpoint_every, "checkpoint stride in steps");
    b_cert.add("propagation", certify.propagation, "additive | matrix");

    auto* a_prof = app.add_subcommand("profile", "dense self-similar profile and rescaled W_s");
    Bindings b_prof{a_prof, {}};
    b_prof.add("s", profile.s, "leading order");
    b_prof.add("c_l", profile.c_l, "c_l (default: shoot for it)");
    b_prof.add("xi_max", profile.xi_max, "integrate to this xi");
    b_prof.add("h", profile.h, "RK4 step in xi", "--step");
    b_prof.add("K", profile.K, "series terms");
    b_prof.add("grid_points", profile.grid_points, "points of the W_s grid on [0,1]");
    b_prof.add("dense_samples", profile.dense_samples, "samples per chart in profile.csv");

    auto* a_sim = app.add_subcommand("simulate", "particle simulation to blow-up");
    Bindings b_sim{a_sim, {}};
    b_sim.add("s", simulate.s, "leading order of the initial theta");
    b_sim.add("w_init", simulate.w_init, "cos4pi | quadratic");
    b_sim.add("preset", simulate.preset, "full | desk (1/10 particles)");
    b_sim.add("w_max_limit", simulate.w_max_limit, "stop once w_max reaches this");
    b_sim.add("t_max", simulate.t_max, "stop at this time");
    b_sim.add("snapshots", simulate.snapshots, "w_max thresholds for snapshots");
    b_sim.add("fit_t_lo", simulate.fit_t_lo, "regression window start");
    b_sim.add("fit_t_hi", simulate.fit_t_hi, "regression window end");
    b_sim.add("holder_lo", simulate.holder_lo, "Hoelder window start");
    b_sim.add("holder_hi", simulate.holder_hi, "Hoelder window end");
    b_sim.add("grid_points", simulate.grid_points, "points of the rescaled-profile grid");

    auto* a_rep = app.add_subcommand("report", "tables and profile comparisons from earlier runs");
    a_rep->add_option("runs", report.inputs, "run directories or roots (default: output root)");

    CLI11_PARSE(app, argc, argv);

    try {
        json file = json::object();
        if (!config_path.empty())
            file = read_json(config_path);
        const fs::path root(out_root);
        fs::path dir;
        auto apply = [&](const Bindings& b) { b.apply(section_for(file, b.app->get_name())); };
        json res;
        if (a_series->parsed()) {
            apply(b_series);
            res = run_series(series, root, &dir);
        } else if (a_shoot->parsed()) {
            apply(b_shoot);
            res = run_shoot(shoot, root, &dir);
        } else if (a_cert->parsed()) {
            apply(b_cert);
            res = run_certify(certify, root, &dir);
            res.erase("initial_state");
        } else if (a_prof->parsed()) {
            apply(b_prof);
            res = run_profile(profile, root, &dir);
        } else if (a_sim->parsed()) {
            apply(b_sim);
            res = run_simulate(simulate, root, &dir);
            res.erase("snapshots");
        } else if (a_rep->parsed()) {
            std::string text;
            run_report(report, root, &text, &dir);
            std::cout << text;
            std::cerr << "report written to " << dir.string() << "\n";
            return 0;
        }
        std::cout << res.dump(2) << "\n";
        std::cerr << "outputs in " << dir.string() << "\n";
    } catch (const NoRunsFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
