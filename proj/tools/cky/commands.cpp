#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cky/analysis.hpp"
#include "cky/certify.hpp"
#include "cky/odes.hpp"
#include "cky/series.hpp"
#include "cky/simulate.hpp"

namespace cky::cli {

namespace {

using Clock = std::chrono::steady_clock;

// Two of the bound conditions hold with equality for the constructed triple; allow rounding.
constexpr double kBoundRelTol = 1e-12;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string threshold_tag(double thr)
{
    std::ostringstream o;
    o << "w" << std::llround(thr);
    return o.str();
}

Layout layout_for(const std::string& preset)
{
    if (preset == "full")
        return Layout::full();
    if (preset == "desk")
        return Layout::desk();
    throw std::invalid_argument("unknown preset '" + preset + "' (use full or desk)");
}

Propagation propagation_from(const std::string& s)
{
    if (s == "additive")
        return Propagation::Additive;
    if (s == "matrix")
        return Propagation::Matrix;
    throw std::invalid_argument("unknown propagation '" + s + "' (use additive or matrix)");
}

json state_json(const IntervalState& st)
{
    return json{{"eta", st.eta}, {"U_hat", to_json(st.U_hat)}, {"W_hat", to_json(st.W_hat)},
                {"Theta_hat", to_json(st.Theta_hat)}};
}

json fit_json(const FitResult& f)
{
    return json{{"field", to_string(f.field)},   {"slope", f.slope},     {"intercept", f.intercept},
                {"exponent", f.exponent},         {"T_estimate", f.T_estimate}, {"t_lo", f.t_lo},
                {"t_hi", f.t_hi},                 {"residual_rms", f.residual_rms}, {"n_points", f.n_points}};
}

void write_profile_csv(const fs::path& p, const std::vector<double>& grid, const std::vector<double>& values)
{
    CsvWriter w(p, {"xi", "W_s"});
    for (std::size_t i = 0; i < grid.size(); ++i)
        w.row({grid[i], values[i]});
}

GConfig gconfig_of(const ShootCmd& c)
{
    GConfig g;
    g.K = c.K;
    g.n_near = c.n_near;
    g.n_far = c.n_far;
    g.xi_match = c.xi_match;
    g.eta_end = c.eta_end;
    return g;
}

} // namespace

json resolved(const SeriesCmd& c) { return json{{"s", c.s}, {"c_l", c.c_l}, {"K", c.K}, {"theta_s", c.theta_s}}; }

json resolved(const ShootCmd& c)
{
    return json{{"s", c.s},           {"c_lo", c.c_lo},     {"c_hi", c.c_hi},         {"tol", c.tol},
                {"K", c.K},           {"n_near", c.n_near}, {"n_far", c.n_far},       {"xi_match", c.xi_match},
                {"eta_end", c.eta_end}};
}

json resolved(const CertifyCmd& c)
{
    const double eta_s = std::isfinite(c.eta_s) ? c.eta_s : default_certify_config(c.s, c.c_l).eta_s;
    propagation_from(c.propagation);
    return json{{"s", c.s},
                {"c_l", c.c_l},
                {"eta_target", c.eta_target},
                {"h", c.h},
                {"m", c.m},
                {"eta_s", eta_s},
                {"width_cap", c.width_cap},
                {"checkpoint_every", c.checkpoint_every},
                {"propagation", c.propagation}};
}

json resolved(ProfileCmd c)
{
    return json{{"s", c.s},           {"c_l", nullable(c.c_l)},           {"xi_max", c.xi_max},
                {"h", c.h},           {"K", c.K},                         {"grid_points", c.grid_points},
                {"dense_samples", c.dense_samples}};
}

json resolved(const SimulateCmd& c)
{
    const Layout L = layout_for(c.preset);
    winit_from_string(c.w_init);
    json j{{"s", c.s},
           {"w_init", to_string(winit_from_string(c.w_init))},
           {"preset", c.preset},
           {"n_inner", L.n_inner},
           {"n_outer", L.n_outer},
           {"x_split", L.x_split},
           {"particles", L.count()},
           {"inner_spacing", L.inner_spacing()},
           {"outer_spacing", L.outer_spacing()},
           {"w_max_limit", c.w_max_limit},
           {"t_max", c.t_max},
           {"snapshots", c.snapshots},
           {"holder_window", {c.holder_lo, c.holder_hi}},
           {"grid_points", c.grid_points}};
    if (std::isfinite(c.fit_t_lo) && std::isfinite(c.fit_t_hi)) {
        j["fit_window"] = {c.fit_t_lo, c.fit_t_hi};
        j["fit_window_source"] = "given";
    } else if (auto pw = reference_window(c.s); pw && c.preset == "full" && c.w_init == "cos4pi") {
        j["fit_window"] = {pw->first, pw->second};
        j["fit_window_source"] = "reference";
    } else {
        j["fit_window"] = nullptr;
        j["fit_window_source"] = "auto_last_decade";
    }
    return j;
}

json run_series(const SeriesCmd& c, const fs::path& root, fs::path* dir_out)
{
    const auto t0 = Clock::now();
    ScalingParams p;
    p.s = c.s;
    p.c_l = c.c_l;
    p.theta_s = c.theta_s;
    p.validate();
    RunDir run = open_run(root, "series", resolved(c));
    const SeriesCoefficients co = build_coefficients(p, c.K);
    const BoundTriple b = rigorous_bounds(p);
    const InitialBoundCheck chk = check_initial_bound(p, b);
    {
        CsvWriter w(run.file("coefficients.csv"), {"k", "U", "Theta", "W"});
        for (int k = 1; k <= co.K(); ++k)
            w.row({static_cast<double>(k), co.U[k], co.Theta[k], k < co.K() ? co.W(k) : std::nan("")});
    }
    double worst = 0;
    for (int k = 2; k <= co.K(); ++k) {
        const RecurrenceResidual r = recurrence_residual(co, k);
        const double eps = std::numeric_limits<double>::epsilon();
        worst = std::max({worst, std::fabs(r.theta) / (r.theta_scale * eps), std::fabs(r.w) / (r.w_scale * eps)});
    }
    json res{{"c_w", p.c_w()},
             {"c_u", p.c_u()},
             {"c_theta", p.c_theta()},
             {"bounds", {{"u0", b.u0}, {"theta0", b.theta0}, {"r", b.r}}},
             {"bound_conditions_hold", chk.holds(kBoundRelTol)},
             {"bound_check_rel_tol", kBoundRelTol},
             {"bound_condition_slack", std::vector<double>(chk.slack, chk.slack + 4)},
             {"radius_estimate", co.radius_estimate},
             {"max_residual_ulps", worst},
             {"U", std::vector<double>(co.U.begin() + 1, co.U.end())},
             {"Theta", std::vector<double>(co.Theta.begin() + 1, co.Theta.end())}};
    write_json(run.file("series.json"), res);
    json summary{{"radius_estimate", co.radius_estimate}, {"bound_conditions_hold", chk.holds(kBoundRelTol)},
                 {"max_residual_ulps", worst}};
    run.finish(summary, since(t0));
    if (dir_out)
        *dir_out = run.dir;
    return summary;
}

json run_shoot(const ShootCmd& c, const fs::path& root, fs::path* dir_out)
{
    const auto t0 = Clock::now();
    RunDir run = open_run(root, "shoot", resolved(c));
    const ShootingResult r = find_root_cl(c.s, c.c_lo, c.c_hi, c.tol, gconfig_of(c));
    {
        CsvWriter w(run.file("g_samples.csv"), {"c_l", "G"});
        for (const auto& [x, g] : r.samples)
            w.row({x, g});
    }
    json res{{"s", r.s},         {"c_l_root", r.c_l_root}, {"bracket", {r.lo, r.hi}},
             {"G_lo", r.G_lo},   {"G_hi", r.G_hi},         {"iterations", r.iterations},
             {"G_tail_corrected_at_root", eval_G_tail_corrected(c.s, r.c_l_root, gconfig_of(c))}};
    write_json(run.file("shoot.json"), res);
    run.finish(res, since(t0));
    if (dir_out)
        *dir_out = run.dir;
    return res;
}

json run_certify(const CertifyCmd& c, const fs::path& root, fs::path* dir_out)
{
    const json cfgj = resolved(c);
    RunDir run = open_run(root, "certify", cfgj);
    CertifyConfig cfg;
    cfg.s = c.s;
    cfg.c_l = c.c_l;
    cfg.eta_target = c.eta_target;
    cfg.h = c.h;
    cfg.m = c.m;
    cfg.eta_s = cfgj.at("eta_s").get<double>();
    cfg.width_cap = c.width_cap;
    cfg.checkpoint_every = c.checkpoint_every;
    cfg.propagation = propagation_from(c.propagation);
    const Certificate cert = certify_sign(cfg);
    {
        CsvWriter w(run.file("checkpoints.csv"),
                    {"step", "eta", "U_lo", "U_hi", "W_lo", "W_hi", "Theta_lo", "Theta_hi"});
        for (const Checkpoint& k : cert.checkpoints)
            w.row({static_cast<double>(k.step), k.state.eta, k.state.U_hat.lo, k.state.U_hat.hi, k.state.W_hat.lo,
                   k.state.W_hat.hi, k.state.Theta_hat.lo, k.state.Theta_hat.hi});
    }
    json res{{"verdict", to_string(cert.verdict)},
             {"initial_state", state_json(cert.initial_state)},
             {"final_state", state_json(cert.final_state)},
             {"steps_taken", cert.steps_taken},
             {"n_steps", cert.n_steps},
             {"final_max_width", max_width(cert.final_state)},
             {"width_decreases", cert.width_decreases},
             {"diagnostic", cert.diagnostic}};
    if (cert.conditions_evaluated) {
        res["conditions"] = {{"u0", to_json(cert.cond_u0)}, {"u0_plus_2", to_json(cert.cond_u0_plus_2)}};
        if (cert.verdict != Verdict::GPositive)
            res["conditions"]["negative_test"] = to_json(cert.cond_negative);
    }
    write_json(run.file("certificate.json"), res);
    run.finish(json{{"verdict", res["verdict"]}, {"U_hat_final", res["final_state"]["U_hat"]},
                    {"final_max_width", res["final_max_width"]}},
               cert.seconds);
    if (dir_out)
        *dir_out = run.dir;
    return res;
}

json run_profile(const ProfileCmd& c0, const fs::path& root, fs::path* dir_out)
{
    const auto t0 = Clock::now();
    ProfileCmd c = c0;
    std::string source = "given";
    if (!std::isfinite(c.c_l)) {
        ShootCmd sc;
        sc.s = c.s;
        sc.K = c.K;
        c.c_l = find_root_cl(c.s, sc.c_lo, sc.c_hi, sc.tol, gconfig_of(sc)).c_l_root;
        source = "shoot";
    }
    json cfgj = resolved(c);
    cfgj["c_l_source"] = source;
    RunDir run = open_run(root, "profile", cfgj);
    ProfileConfig pc;
    pc.xi_max = c.xi_max;
    pc.h = c.h;
    pc.K = c.K;
    pc.grid_points = c.grid_points;
    pc.dense_samples = c.dense_samples;
    const ProfileResult pr = compute_profile(c.s, c.c_l, pc);

    // far-chart trajectory from the shooting handoff, sampled geometrically in eta
    GConfig g;
    g.K = c.K;
    const ProfileState far0 = shoot_to_far_start(c.s, c.c_l, g);
    std::vector<ProfileState> far;
    {
        const double e0 = far0.position, e1 = g.eta_end;
        const double ratio = std::pow(e1 / e0, 1.0 / std::max(1, c.dense_samples - 1));
        double next = e0;
        auto obs = [&](double x, const Vec3& y) {
            if (x >= next * (1 - 1e-12)) {
                far.push_back(state_of(Chart::FarField, x, y));
                while (next <= x * (1 + 1e-12))
                    next *= ratio;
            }
        };
        obs(e0, vec_of(far0));
        rk4_integrate([&](double x, const Vec3& y) { return rhs_far(x, y, c.c_l); }, vec_of(far0), e0, e1, g.n_far,
                      obs);
    }
    {
        CsvWriter w(run.file("profile.csv"), {"chart", "position", "U", "W", "Theta"});
        for (const ProfileState& p : thin_samples(pr.samples, c.dense_samples))
            w.row_raw({to_string(p.chart), fmt(p.position), fmt(p.U), fmt(p.W), fmt(p.Theta)});
        for (const ProfileState& p : far)
            w.row_raw({to_string(p.chart), fmt(p.position), fmt(p.U), fmt(p.W), fmt(p.Theta)});
    }
    write_profile_csv(run.file("W_s.csv"), pr.grid, pr.W_s);
    json res{{"s", pr.s}, {"c_l", pr.c_l}, {"xi_handoff", pr.xi_handoff}, {"W_max", pr.W_max}, {"xi0", pr.xi0}};
    write_json(run.file("profile.json"), res);
    run.finish(res, since(t0));
    if (dir_out)
        *dir_out = run.dir;
    return res;
}

json run_simulate(const SimulateCmd& c, const fs::path& root, fs::path* dir_out)
{
    const auto t0 = Clock::now();
    const json cfgj = resolved(c);
    RunDir run = open_run(root, "simulate", cfgj);
    ParticleSystem sys = init_particles(c.s, winit_from_string(c.w_init), layout_for(c.preset));
    RunOptions opt;
    opt.w_max_limit = c.w_max_limit;
    opt.t_max = c.t_max;
    opt.snapshot_thresholds = c.snapshots;
    const BlowupTrace tr = run_until(sys, opt);
    {
        CsvWriter w(run.file("trace.csv"), {"t", "w_max", "q_max", "dt"});
        for (const TraceSample& x : tr.samples)
            w.row({x.t, x.w_max, x.q_max, x.dt});
    }
    json snaps = json::array();
    for (const Snapshot& sn : tr.snapshots) {
        const std::string tag = threshold_tag(sn.threshold);
        {
            CsvWriter w(run.file("snapshot_" + tag + ".csv"), {"q", "theta", "w", "u"});
            for (std::size_t i = 0; i < sn.q.size(); ++i)
                w.row({sn.q[i], sn.theta[i], sn.w[i], sn.u[i]});
        }
        json sj{{"threshold", sn.threshold}, {"t", sn.t}, {"w_max", sn.w_max}, {"q_max", sn.q_max},
                {"file", "snapshot_" + tag + ".csv"}, {"config_hash", run.hash}};
        try {
            const RescaledProfile rp = rescale_snapshot(sn, c.grid_points);
            write_profile_csv(run.file("rescaled_" + tag + ".csv"), rp.grid, rp.values);
            sj["rescaled_file"] = "rescaled_" + tag + ".csv";
        } catch (const std::exception& e) {
            sj["rescale_error"] = e.what();
        }
        snaps.push_back(sj);
    }
    json res{{"s", c.s},
             {"stop_reason", tr.stop_reason},
             {"steps", static_cast<long>(tr.samples.size()) - 1},
             {"t_final", sys.t},
             {"w_max_final", tr.samples.back().w_max},
             {"q_max_final", tr.samples.back().q_max},
             {"snapshots", snaps}};

    double lo = c.fit_t_lo, hi = c.fit_t_hi;
    if (cfgj["fit_window"].is_array()) {
        lo = cfgj["fit_window"][0].get<double>();
        hi = cfgj["fit_window"][1].get<double>();
    } else {
        try {
            std::tie(lo, hi) = auto_window(tr.samples);
        } catch (const std::exception& e) {
            res["fit_error"] = e.what();
        }
    }
    if (std::isfinite(lo)) {
        res["fit_window"] = {lo, hi};
        try {
            res["fit_w_max"] = fit_json(fit_exponent(tr, FitField::WMax, lo, hi));
            res["fit_q_max"] = fit_json(fit_exponent(tr, FitField::QMax, lo, hi));
            res["c_w"] = res["fit_w_max"]["exponent"];
            res["c_l"] = res["fit_q_max"]["exponent"];
        } catch (const std::exception& e) {
            res["fit_error"] = e.what();
        }
    }
    // Hoelder fit on the final state, the closest available to blow-up
    const Snapshot last = make_snapshot(sys, tr.samples.back().w_max);
    try {
        const HolderFit h = fit_holder(last, c.holder_lo, c.holder_hi);
        res["holder"] = {{"alpha", h.alpha}, {"log_C", h.log_C}, {"t", last.t}, {"window", {h.x_lo, h.x_hi}},
                         {"n_points", h.n_points}, {"residual_rms", h.residual_rms}};
    } catch (const std::exception& e) {
        res["holder_error"] = e.what();
    }
    write_json(run.file("simulate.json"), res);
    json summary = res;
    summary.erase("snapshots");
    run.finish(summary, since(t0));
    if (dir_out)
        *dir_out = run.dir;
    return res;
}

namespace {

struct FoundRun {
    fs::path dir;
    json manifest;
};

void collect(const fs::path& p, std::vector<FoundRun>& out)
{
    if (fs::is_regular_file(p / "manifest.json")) {
        json m = read_json(p / "manifest.json");
        if (m.value("command", "") != "report")
            out.push_back({p, std::move(m)});
        return;
    }
    if (!fs::is_directory(p))
        return;
    std::vector<fs::path> kids;
    for (const auto& e : fs::directory_iterator(p))
        if (e.is_directory() && fs::is_regular_file(e.path() / "manifest.json"))
            kids.push_back(e.path());
    std::sort(kids.begin(), kids.end());
    for (const auto& k : kids)
        collect(k, out);
}

std::vector<double> read_column(const fs::path& p, int col)
{
    std::ifstream in(p);
    if (!in)
        throw std::runtime_error("cannot read " + p.string());
    std::string line;
    std::getline(in, line);
    std::vector<double> v;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        for (int i = 0; i <= col; ++i)
            std::getline(ss, cell, ',');
        v.push_back(std::stod(cell));
    }
    return v;
}

RescaledProfile read_profile(const fs::path& p, ProfileSource src)
{
    RescaledProfile r;
    r.grid = read_column(p, 0);
    r.values = read_column(p, 1);
    r.source = src;
    return r;
}

std::string cell(const json& j, int prec = 6)
{
    if (j.is_null())
        return "-";
    if (j.is_number()) {
        std::ostringstream o;
        o.precision(prec);
        o << j.get<double>();
        return o.str();
    }
    if (j.is_string())
        return j.get<std::string>();
    return j.dump();
}

} // namespace

json run_report(const ReportCmd& c, const fs::path& root, std::string* text_out, fs::path* dir_out)
{
    const auto t0 = Clock::now();
    std::vector<FoundRun> runs;
    std::vector<std::string> inputs = c.inputs;
    if (inputs.empty())
        inputs.push_back(root.string());
    for (const auto& in : inputs)
        collect(fs::path(in), runs);
    if (runs.empty()) {
        std::string where;
        for (const auto& in : inputs)
            where += (where.empty() ? "" : ", ") + in;
        throw NoRunsFound("no runs found in " + where);
    }

    std::map<int, double> shoot_root;
    json shoot_rows = json::array(), cert_rows = json::array(), sim_rows = json::array(),
         comparisons = json::array();
    std::map<int, std::vector<FoundRun*>> profiles_by_s;
    for (FoundRun& r : runs) {
        const std::string cmd = r.manifest.value("command", "");
        const json& cfg = r.manifest["config"];
        const json& res = r.manifest["result"];
        if (cmd == "shoot") {
            shoot_root[cfg["s"].get<int>()] = res["c_l_root"].get<double>();
            shoot_rows.push_back({{"s", cfg["s"]}, {"c_l", res["c_l_root"]}, {"run", r.dir.string()}});
        } else if (cmd == "certify") {
            cert_rows.push_back({{"s", cfg["s"]}, {"c_l", cfg["c_l"]}, {"propagation", cfg["propagation"]},
                                 {"verdict", res["verdict"]}, {"U_hat", res["U_hat_final"]},
                                 {"width", res["final_max_width"]}, {"run", r.dir.string()}});
        } else if (cmd == "profile") {
            profiles_by_s[cfg["s"].get<int>()].push_back(&r);
        }
    }
    for (FoundRun& r : runs) {
        if (r.manifest.value("command", "") != "simulate")
            continue;
        const json& cfg = r.manifest["config"];
        const json& res = r.manifest["result"];
        const int s = cfg["s"].get<int>();
        json row{{"s", s},
                 {"w_init", cfg["w_init"]},
                 {"preset", cfg["preset"]},
                 {"c_w", res.value("c_w", json(nullptr))},
                 {"c_l_fit", res.value("c_l", json(nullptr))},
                 {"T_estimate", res.contains("fit_w_max") ? res["fit_w_max"]["T_estimate"] : json(nullptr)},
                 {"alpha", res.contains("holder") ? res["holder"]["alpha"] : json(nullptr)},
                 {"run", r.dir.string()}};
        double cl_ref = std::nan("");
        if (auto it = shoot_root.find(s); it != shoot_root.end())
            cl_ref = it->second;
        else if (auto pit = profiles_by_s.find(s); pit != profiles_by_s.end())
            cl_ref = pit->second.front()->manifest["result"]["c_l"].get<double>();
        row["c_l_self_similar"] = nullable(cl_ref);
        row["one_minus_inv_c_l"] = std::isfinite(cl_ref) ? json(1 - 1 / cl_ref) : json(nullptr);
        sim_rows.push_back(row);

        const json snaps = read_json(r.dir / "simulate.json")["snapshots"];
        std::vector<std::pair<std::string, RescaledProfile>> rescaled;
        for (const json& sj : snaps)
            if (sj.contains("rescaled_file"))
                rescaled.emplace_back(sj["rescaled_file"].get<std::string>(),
                                      read_profile(r.dir / sj["rescaled_file"].get<std::string>(),
                                                   ProfileSource::SimulationSnapshot));
        for (std::size_t i = 0; i < rescaled.size(); ++i)
            for (std::size_t j = i + 1; j < rescaled.size(); ++j) {
                const ProfileDeviation d = compare_profiles(rescaled[i].second, rescaled[j].second);
                comparisons.push_back({{"s", s}, {"a", r.dir.string() + "/" + rescaled[i].first},
                                       {"b", r.dir.string() + "/" + rescaled[j].first}, {"sup", d.sup},
                                       {"l2", d.l2}});
            }
        if (auto pit = profiles_by_s.find(s); pit != profiles_by_s.end())
            for (FoundRun* pr : pit->second) {
                const RescaledProfile eq = read_profile(pr->dir / "W_s.csv", ProfileSource::SelfSimilarEq);
                for (const auto& [name, rp] : rescaled) {
                    const ProfileDeviation d = compare_profiles(rp, eq);
                    comparisons.push_back({{"s", s}, {"a", r.dir.string() + "/" + name},
                                           {"b", (pr->dir / "W_s.csv").string()}, {"sup", d.sup}, {"l2", d.l2}});
                }
            }
    }

    json report{{"runs", runs.size()},
                {"c_l_self_similar", shoot_rows},
                {"certificates", cert_rows},
                {"simulations", sim_rows},
                {"profile_comparisons", comparisons}};

    std::ostringstream t;
    t << "runs: " << runs.size() << "\n";
    if (!shoot_rows.empty()) {
        t << "\nself-similar c_l (shooting)\n  s  c_l\n";
        for (const json& r : shoot_rows)
            t << "  " << cell(r["s"]) << "  " << cell(r["c_l"], 8) << "\n";
    }
    if (!cert_rows.empty()) {
        t << "\nsign certificates\n  s  c_l  propagation  verdict  U^(eta_target)  width\n";
        for (const json& r : cert_rows)
            t << "  " << cell(r["s"]) << "  " << cell(r["c_l"]) << "  " << cell(r["propagation"]) << "  "
              << cell(r["verdict"]) << "  [" << cell(r["U_hat"]["lo"], 15) << ", " << cell(r["U_hat"]["hi"], 15)
              << "]  " << cell(r["width"], 3) << "\n";
    }
    if (!sim_rows.empty()) {
        t << "\nsimulation exponents\n  s  w_init  preset  c_w  c_l(fit)  c_l(self-similar)  T  alpha  1-1/c_l\n";
        for (const json& r : sim_rows)
            t << "  " << cell(r["s"]) << "  " << cell(r["w_init"]) << "  " << cell(r["preset"]) << "  "
              << cell(r["c_w"]) << "  " << cell(r["c_l_fit"]) << "  " << cell(r["c_l_self_similar"]) << "  "
              << cell(r["T_estimate"], 8) << "  " << cell(r["alpha"]) << "  " << cell(r["one_minus_inv_c_l"])
              << "\n";
    }
    if (!comparisons.empty()) {
        t << "\nprofile comparisons (sup, rms)\n";
        for (const json& r : comparisons)
            t << "  s=" << cell(r["s"]) << "  " << fs::path(r["a"].get<std::string>()).filename().string() << " vs "
              << fs::path(r["b"].get<std::string>()).filename().string() << "  " << cell(r["sup"], 3) << "  "
              << cell(r["l2"], 3) << "\n";
    }

    json cfg{{"inputs", inputs}};
    RunDir run = open_run(root, "report", cfg);
    write_json(run.file("report.json"), report);
    {
        std::ofstream o(run.file("report.txt"));
        o << t.str();
    }
    run.finish(json{{"runs", runs.size()}}, since(t0));
    if (text_out)
        *text_out = t.str();
    if (dir_out)
        *dir_out = run.dir;
    return report;
}

} // namespace cky::cli
