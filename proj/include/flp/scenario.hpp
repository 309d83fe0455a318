#pragma once

#include "flp/fullline.hpp"
#include "flp/halfline.hpp"
#include "flp/io.hpp"
#include "flp/nonlocal.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace flp {

/// Settings for one scenario run. Unset fields take mode-specific defaults.
struct ScenarioConfig {
    std::string mode = "figure1";
    std::optional<double> U;
    std::optional<std::string> profile;
    std::optional<int> nx, nt;
    std::optional<double> xmin, xmax, tmax, kmax;
    std::string closure = "given-xxx";
    /// Optional SurfaceState CSV for nonlocal-check.
    std::optional<std::string> state;
    std::filesystem::path out = ".";
};

inline const std::vector<std::string>& scenario_modes()
{
    static const std::vector<std::string> m{"figure1", "full-line", "imomega", "dispersion", "kernel",
                                            "wellposed", "half-line", "nonlocal-check"};
    return m;
}

/// Reads keys mode, U, profile, nx, nt, xmin, xmax, tmax, kmax, closure, state, out.
inline ScenarioConfig config_from_json(const nlohmann::json& j, ScenarioConfig c = {})
{
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& key = it.key();
            const auto& v = it.value();
            if (key == "mode") c.mode = v.get<std::string>();
            else if (key == "U") c.U = v.get<double>();
            else if (key == "profile") c.profile = v.get<std::string>();
            else if (key == "nx") c.nx = v.get<int>();
            else if (key == "nt") c.nt = v.get<int>();
            else if (key == "xmin") c.xmin = v.get<double>();
            else if (key == "xmax") c.xmax = v.get<double>();
            else if (key == "tmax") c.tmax = v.get<double>();
            else if (key == "kmax") c.kmax = v.get<double>();
            else if (key == "closure") c.closure = v.get<std::string>();
            else if (key == "state") c.state = v.get<std::string>();
            else if (key == "out") c.out = v.get<std::string>();
            else throw InvalidArgument("unknown config key: " + key);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad config value: ") + e.what());
    }
    return c;
}

namespace detail {

inline std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return v;
}

inline Profile scenario_profile(const std::string& name)
{
    if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") return load_profile_csv(name);
    return profile_by_name(name);
}

struct Resolved {
    double U, xmin, xmax, tmax, kmax;
    int nx, nt;
    std::string profile;
};

inline Resolved resolve(const ScenarioConfig& c, Resolved d)
{
    Resolved r{c.U.value_or(d.U), c.xmin.value_or(d.xmin), c.xmax.value_or(d.xmax), c.tmax.value_or(d.tmax),
               c.kmax.value_or(d.kmax), c.nx.value_or(d.nx), c.nt.value_or(d.nt), c.profile.value_or(d.profile)};
    if (r.nx < 2 || r.nt < 2) throw InvalidArgument("nx and nt must be at least 2");
    if (!(r.xmax > r.xmin)) throw InvalidArgument("x range is empty");
    if (!(r.tmax > 0.0)) throw InvalidArgument("tmax must be positive");
    if (!(r.kmax > 0.0)) throw InvalidArgument("kmax must be positive");
    return r;
}

inline void run_full_line(const ScenarioConfig& c, const std::string& file)
{
    const auto r = resolve(c, {1.0, -10.0, 10.0, 2.0, 10.0, 401, 81, "gaussian"});
    const PlateParams p(r.U, 1e-12, 1e-6, r.kmax);
    const auto sol = solve_full_line(scenario_profile(r.profile), p, SpectralGrid::make_for(p));
    const auto xs = linspace(r.xmin, r.xmax, r.nx);
    CsvWriter w(c.out / file, {"t", "x", "eta", "phi"});
    for (double t : linspace(0.0, r.tmax, r.nt)) {
        const auto f = evaluate_field(sol, xs, t);
        for (std::size_t i = 0; i < xs.size(); ++i) w.row({t, xs[i], f.eta.values[i], f.phi.values[i]});
    }
    w.close();
}

inline void run_imomega(const ScenarioConfig& c)
{
    // x range is Re k, [-kmax, kmax] is Im k.
    const auto r = resolve(c, {1.0, -4.0, 4.0, 1.0, 4.0, 161, 161, "gaussian"});
    const PlateParams p(r.U);
    const double nan = std::nan("");
    CsvWriter w(c.out / "imomega.csv", {"re_k", "im_k", "im_omega_plus", "im_omega_minus"});
    for (double ki : linspace(-r.kmax, r.kmax, r.nt))
        for (double kr : linspace(r.xmin, r.xmax, r.nx)) {
            const cplx k(kr, ki);
            double a = nan, b = nan;
            if (std::abs(k) > 1e-12) {
                try {
                    const auto [wp, wm] = omega_pm(k, p);
                    a = wp.imag();
                    b = wm.imag();
                } catch (const BranchPointProximity&) {
                }
            }
            w.row({kr, ki, a, b});
        }
    w.close();
}

inline void run_dispersion(const ScenarioConfig& c)
{
    // Log-spaced real k in [10^xmin, kmax].
    const auto r = resolve(c, {1.0, -3.0, 3.0, 1.0, 1e3, 200, 2, "gaussian"});
    const PlateParams p(r.U);
    CsvWriter w(c.out / "dispersion.csv", {"k", "re_omega_plus", "im_omega_plus", "re_omega_minus", "im_omega_minus",
                                           "residual_plus", "residual_minus"});
    const double lo = r.xmin, hi = std::log10(r.kmax);
    if (!(hi > lo)) throw InvalidArgument("dispersion range is empty");
    for (double e : linspace(lo, hi, r.nx)) {
        const double k = std::pow(10.0, e);
        try {
            const auto [wp, wm] = omega_pm(k, p);
            w.row({k, wp.real(), wp.imag(), wm.real(), wm.imag(), std::abs(dispersion_residual(k, wp, p)),
                   std::abs(dispersion_residual(k, wm, p))});
        } catch (const BranchPointProximity&) {
        }
    }
    w.close();
}

inline void run_kernel(const ScenarioConfig& c)
{
    const auto r = resolve(c, {1.0, 0.0, 1.0, 1.0, 1.0, 2, 200, "hinge4"});
    const PlateParams p(r.U);
    // kmax, when given, is the deformation radius.
    const auto path = kernel_contour(p, c.kmax ? r.kmax : 0.0);
    const auto N = static_cast<std::size_t>(r.nt);
    KernelOptions ko;
    ko.build_weights = false;
    const auto K = compute_kernel(p, path, uniform_times(r.tmax, N), ko);
    CsvWriter w(c.out / "kernel.csv", {"t", "re_K", "im_K", "sqrt_t_abs_K"});
    for (std::size_t n = 0; n < K.t_nodes.size(); ++n)
        w.row({K.t_nodes[n], K.K_values[n].real(), K.K_values[n].imag(), std::sqrt(K.t_nodes[n]) * std::abs(K.K_values[n])});
    w.close();
    const auto prof = scenario_profile(r.profile);
    const auto G = compute_g(prof, p, forcing_contour(p), uniform_times(r.tmax, N, true));
    CsvWriter wg(c.out / "forcing.csv", {"t", "re_g", "im_g"});
    for (std::size_t n = 0; n < G.t_nodes.size(); ++n) wg.row({G.t_nodes[n], G.g_values[n].real(), G.g_values[n].imag()});
    wg.close();
    auto j = contour_to_json(path);
    j["weak_singularity_constant"] = K.weak_sing_constant;
    write_json(c.out / "contour.json", j);
}

inline void run_wellposed(const ScenarioConfig& c)
{
    const auto r = resolve(c, {1.0, -10.0, 10.0, 2.0, 10.0, 2, 21, "gaussian"});
    const PlateParams p(r.U, 1e-12, 1e-6, r.kmax);
    const auto sol = solve_full_line(scenario_profile(r.profile), p, SpectralGrid::make_for(p));
    const auto rep = wellposedness_report(sol, linspace(0.0, r.tmax, r.nt));
    CsvWriter w(c.out / "wellposed.csv",
                {"t", "eta_l2", "eta0_h2", "ratio", "identity_residual", "identity_residual_continued"});
    for (const auto& row : rep.rows)
        w.row({row.t, row.eta_l2, row.eta0_h2, row.ratio, row.identity_residual, row.identity_residual_continued});
    w.close();
}

inline void run_half_line(const ScenarioConfig& c)
{
    const auto r = resolve(c, {1.0, 0.0, 10.0, 1.0, 40.0, 101, 11, "hinge4"});
    const PlateParams p(r.U);
    const auto grid = SpectralGrid::make(r.kmax, 0.25);
    HalfLineOptions o;
    o.T = r.tmax;
    o.output_times = linspace(0.0, r.tmax, r.nt);
    o.x_nodes = linspace(r.xmin, r.xmax, r.nx);
    TraceClosure tc;
    tc.policy = closure_from_string(c.closure);
    const std::vector<cplx> zero(o.N + 1, 0.0);
    tc.eta_xx0 = zero;
    tc.eta_xxx0 = zero;
    const auto sol = solve_half_line(scenario_profile(r.profile), p, grid, tc, o);
    CsvWriter wt(c.out / "traces.csv", {"t", "re_eta_xx", "im_eta_xx", "re_eta_xxx", "im_eta_xxx", "re_g", "im_g"});
    for (std::size_t n = 0; n < sol.traces.t_nodes.size(); ++n)
        wt.row({sol.traces.t_nodes[n], sol.traces.eta_xx0[n].real(), sol.traces.eta_xx0[n].imag(),
                sol.traces.eta_xxx0[n].real(), sol.traces.eta_xxx0[n].imag(), sol.forcing.g_values[n].real(),
                sol.forcing.g_values[n].imag()});
    wt.close();
    CsvWriter wf(c.out / "half_line.csv", {"t", "x", "eta"});
    for (const auto& f : sol.field)
        for (std::size_t i = 0; i < f.x_nodes.size(); ++i) wf.row({f.time, f.x_nodes[i], f.values[i]});
    wf.close();
    nlohmann::json j;
    j["closure"] = c.closure;
    j["clamp_residual_eta"] = sol.clamp_residual_eta;
    j["clamp_residual_eta_x"] = sol.clamp_residual_eta_x;
    j["consistency_residual"] = sol.consistency_residual;
    j["deconvolution_disagreement"] = sol.deconvolution_disagreement;
    j["weak_singularity_constant"] = sol.kernel.weak_sing_constant;
    write_json(c.out / "half_line_report.json", j);
}

inline void run_nonlocal_check(const ScenarioConfig& c)
{
    const auto r = resolve(c, {1.0, -200.0, 200.0, 0.5, 10.0, 8001, 2, "gaussian"});
    const PlateParams p(r.U, 1e-12, 1e-6, r.kmax);
    const std::vector<double> ks{0.25, 0.5, 1.0, 2.0};
    if (c.state) {
        const auto s = load_surface_state_csv(*c.state);
        const auto b = bernoulli_beam_residual(s, p);
        CsvWriter w(c.out / "nonlocal_state.csv", {"x", "bernoulli_residual"});
        for (std::size_t i = 0; i < s.size(); ++i) w.row({s.x_nodes[i], b[i]});
        w.close();
        CsvWriter wg(c.out / "nonlocal_global.csv", {"k", "re_residual", "im_residual"});
        for (double k : ks) {
            const cplx g = global_relation_residual(s, k, p);
            wg.row({k, g.real(), g.imag()});
        }
        wg.close();
        return;
    }
    const auto sol = solve_full_line(scenario_profile(r.profile), p, SpectralGrid::make_for(p));
    const auto xs = linspace(r.xmin, r.xmax, r.nx);
    CsvWriter w(c.out / "nonlocal.csv", {"eps", "max_bernoulli_residual", "max_global_residual", "max_linearised_residual"});
    for (double eps : {1e-2, 5e-3, 2.5e-3}) {
        const auto s = linearised_state(sol, r.tmax, xs, eps);
        double mb = 0.0, mg = 0.0, ml = 0.0;
        for (double v : bernoulli_beam_residual(s, p)) mb = std::max(mb, std::abs(v));
        for (double k : ks) {
            mg = std::max(mg, std::abs(global_relation_residual(s, k, p)));
            ml = std::max(ml, std::abs(global_relation_residual(s, k, p, true)));
        }
        w.row({eps, mb, mg, ml});
    }
    w.close();
}

}  // namespace detail

/// Runs one scenario and writes its artifacts under config.out.
inline void run_scenario(const ScenarioConfig& c)
{
    std::error_code ec;
    std::filesystem::create_directories(c.out, ec);
    if (ec) throw IoError("cannot create output directory " + c.out.string());
    if (c.mode == "figure1") detail::run_full_line(c, "figure1.csv");
    else if (c.mode == "full-line") detail::run_full_line(c, "full_line.csv");
    else if (c.mode == "imomega") detail::run_imomega(c);
    else if (c.mode == "dispersion") detail::run_dispersion(c);
    else if (c.mode == "kernel") detail::run_kernel(c);
    else if (c.mode == "wellposed") detail::run_wellposed(c);
    else if (c.mode == "half-line") detail::run_half_line(c);
    else if (c.mode == "nonlocal-check") detail::run_nonlocal_check(c);
    else throw InvalidArgument("unknown mode: " + c.mode);
}

/// Process exit status for an exception raised by run_scenario.
inline int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const IoError*>(&e)) return 3;
    if (dynamic_cast<const NumericalError*>(&e)) return 2;
    return 1;
}

}  // namespace flp
