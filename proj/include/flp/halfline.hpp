#pragma once

#include "flp/fullline.hpp"
#include "flp/kernel.hpp"
#include "flp/volterra.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace flp {

struct BoundaryTraces {
    std::vector<double> t_nodes;
    std::vector<cplx> eta_xx0;
    std::vector<cplx> eta_xxx0;

    void validate() const
    {
        if (t_nodes.empty() || t_nodes.front() != 0.0) throw InvalidArgument("traces must start at t = 0");
        if (eta_xx0.size() != t_nodes.size() || eta_xxx0.size() != t_nodes.size())
            throw InvalidArgument("trace sample counts differ from the time nodes");
        for (std::size_t i = 1; i < t_nodes.size(); ++i)
            if (!(t_nodes[i] > t_nodes[i - 1])) throw InvalidArgument("trace times must increase");
    }

    static BoundaryTraces zero(const std::vector<double>& t)
    {
        return {t, std::vector<cplx>(t.size(), 0.0), std::vector<cplx>(t.size(), 0.0)};
    }
};

/// phi_hat = eta_hat_t / k + i U eta_hat for k in the closed fourth quadrant.
inline cplx surface_potential_relation(cplx eta_hat, cplx eta_hat_t, cplx k, const PlateParams& p)
{
    if (k == cplx(0.0)) throw InvalidArgument("surface_potential_relation: k = 0");
    if (k.real() < 0.0 || k.imag() > 0.0) throw InvalidArgument("surface_potential_relation: k outside the fourth quadrant");
    return phi_hat_from(eta_hat, eta_hat_t, k, p);
}

/// Largest |w| dt accepted by the trace quadrature.
inline constexpr double default_oscillation_threshold = 100.0;

namespace detail {

/// int over one trace interval of e^{i w tau} f(tau), f linear between fa and fb.
inline cplx interval_integral(cplx omega, double ta, double dt, cplx fa, cplx fb)
{
    const cplx a = I * omega * dt;
    return std::exp(I * omega * ta) * dt * (fa * phase_moment(0, a) + (fb - fa) * phase_moment(1, a));
}

inline void check_resolution(cplx omega, const BoundaryTraces& tr, double threshold)
{
    double dt = 0.0;
    for (std::size_t i = 1; i < tr.t_nodes.size(); ++i) dt = std::max(dt, tr.t_nodes[i] - tr.t_nodes[i - 1]);
    if (std::abs(omega) * dt > threshold) throw UnderResolvedOscillation("trace sampling too coarse for the frequency");
}

}  // namespace detail

/// F_t = int_0^t e^{i w tau} [eta_xxx(0, tau) + i k eta_xx(0, tau)] dtau with the traces interpolated linearly.
inline cplx F_t(cplx omega, cplx k, const BoundaryTraces& tr, double t, double threshold = default_oscillation_threshold)
{
    tr.validate();
    if (t < 0.0 || t > tr.t_nodes.back() * (1 + 1e-12)) throw InvalidArgument("F_t: t outside the trace interval");
    detail::check_resolution(omega, tr, threshold);
    cplx s = 0.0;
    for (std::size_t i = 0; i + 1 < tr.t_nodes.size() && tr.t_nodes[i] < t; ++i) {
        const double ta = tr.t_nodes[i];
        const double tb = tr.t_nodes[i + 1];
        const cplx fa = tr.eta_xxx0[i] + I * k * tr.eta_xx0[i];
        const cplx fb = tr.eta_xxx0[i + 1] + I * k * tr.eta_xx0[i + 1];
        const double end = std::min(t, tb);
        const cplx fend = fa + (fb - fa) * ((end - ta) / (tb - ta));
        s += detail::interval_integral(omega, ta, end - ta, fa, fend);
    }
    return s;
}

/// F at every trace node.
inline std::vector<cplx> F_t_cumulative(cplx omega, cplx k, const BoundaryTraces& tr,
                                        double threshold = default_oscillation_threshold)
{
    detail::check_resolution(omega, tr, threshold);
    std::vector<cplx> out(tr.t_nodes.size(), 0.0);
    for (std::size_t i = 0; i + 1 < tr.t_nodes.size(); ++i) {
        const cplx fa = tr.eta_xxx0[i] + I * k * tr.eta_xx0[i];
        const cplx fb = tr.eta_xxx0[i + 1] + I * k * tr.eta_xx0[i + 1];
        out[i + 1] = out[i] + detail::interval_integral(omega, tr.t_nodes[i], tr.t_nodes[i + 1] - tr.t_nodes[i], fa, fb);
    }
    return out;
}

/// Forced part from F values at time t.
inline cplx forced_response(cplx k, double t, cplx F_plus, cplx F_minus, const PlateParams& p)
{
    if (F_plus == cplx(0.0) && F_minus == cplx(0.0)) return 0.0;
    const PlateParams open(p.U(), p.tol_root(), p.k_min(), p.k_max(), 0.0);
    const auto [wp, wm] = omega_pm(k, open);
    if (std::abs(wm - wp) < 1e-12 * (1.0 + std::norm(k))) throw DegenerateRoots("forced response at coincident roots");
    const cplx alpha = 1.0 / (I * (wm - wp));
    const cplx beta = alpha * k / ((k + 1.0) * std::sqrt(2.0 * std::numbers::pi));
    return beta * (F_plus * std::exp(-I * wp * t) - F_minus * std::exp(-I * wm * t));
}

/// eta_hat(k, t) for the half-line problem: free evolution of eta0_hat plus the response to the boundary traces.
inline cplx global_relation_eta_hat(cplx k, double t, const BoundaryTraces& tr, cplx eta0_hat, const PlateParams& p,
                                    double threshold = default_oscillation_threshold)
{
    const cplx free = free_evolution(k, t, eta0_hat, p).eta;
    const PlateParams open(p.U(), p.tol_root(), p.k_min(), p.k_max(), 0.0);
    const auto [wp, wm] = omega_pm(k, open);
    return free + forced_response(k, t, F_t(wp, k, tr, t, threshold), F_t(wm, k, tr, t, threshold), p);
}

enum class ClosurePolicy { given_xxx, given_xx, free_edge_zero };

inline ClosurePolicy closure_from_string(const std::string& s)
{
    if (s == "given-xxx") return ClosurePolicy::given_xxx;
    if (s == "given-xx") return ClosurePolicy::given_xx;
    if (s == "free-edge-zero") return ClosurePolicy::free_edge_zero;
    throw InvalidArgument("unknown closure policy: " + s);
}

struct TraceClosure {
    ClosurePolicy policy = ClosurePolicy::given_xxx;
    /// Samples on t_n = n T / N, n = 0..N.
    std::optional<std::vector<cplx>> eta_xx0;
    std::optional<std::vector<cplx>> eta_xxx0;
};

struct HalfLineOptions {
    double T = 1.0;
    std::size_t N = 1000;
    std::vector<double> output_times{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> x_nodes;
    double resolution = 1.0;
    double deconvolution_tol = 1e-4;
};

struct HalfLineSolution {
    PlateParams params;
    BoundaryTraces traces;
    SpectralGrid grid;
    std::vector<cplx> eta0_hat;
    std::vector<double> output_times;
    /// eta_hat[n][j] at output_times[n] and grid node j.
    std::vector<std::vector<cplx>> eta_hat;
    std::vector<FieldSlice> field;
    KernelTable kernel;
    KernelTable forcing;
    /// max_t |eta(0, t)| and max_t |eta_x(0, t)| from the inverted field.
    double clamp_residual_eta = 0.0;
    double clamp_residual_eta_x = 0.0;
    /// max_n |2 pi i eta_xx - g + K * eta_xxx| when both traces were supplied.
    double consistency_residual = 0.0;
    /// Backend disagreement for the deconvolution policy.
    double deconvolution_disagreement = 0.0;
};

inline HalfLineSolution solve_half_line(const Profile& profile, const PlateParams& params, const SpectralGrid& grid,
                                        const TraceClosure& closure, const HalfLineOptions& opt = {})
{
    if (profile.support() != Support::half_line) throw InvalidArgument("solve_half_line needs a half-line profile");
    if (!profile.is_zero()) check_hinge(profile, 3);
    if (opt.N < 4 || !(opt.T > 0.0)) throw InvalidArgument("solve_half_line needs N >= 4 and T > 0");
    const std::size_t N = opt.N;
    const auto t_all = uniform_times(opt.T, N, true);
    const std::vector<double> t_pos(t_all.begin() + 1, t_all.end());

    auto need = [&](const std::optional<std::vector<cplx>>& v, const char* what) -> const std::vector<cplx>& {
        if (!v) throw ClosureUnavailable(std::string("closure policy needs ") + what);
        if (v->size() != N + 1) throw InvalidArgument(std::string(what) + " must have N + 1 samples");
        return *v;
    };
    if (closure.policy != ClosurePolicy::given_xxx) need(closure.eta_xx0, "eta_xx(0, t)");
    if (closure.policy != ClosurePolicy::given_xx) need(closure.eta_xxx0, "eta_xxx(0, t)");

    HalfLineSolution sol{params, {}, grid, {}, {}, {}, {}, {}, {}, 0.0, 0.0, 0.0, 0.0};
    KernelOptions ko;
    ko.resolution = opt.resolution;
    sol.kernel = compute_kernel(params, kernel_contour(params), t_pos, ko);
    ForcingOptions fo;
    fo.resolution = opt.resolution;
    sol.forcing = compute_g(profile, params, forcing_contour(params, fo.tail_radius), t_all, fo);

    BoundaryTraces tr;
    tr.t_nodes = t_all;
    switch (closure.policy) {
    case ClosurePolicy::given_xxx:
        tr.eta_xxx0 = need(closure.eta_xxx0, "eta_xxx(0, t)");
        tr.eta_xx0 = solve_eta_xx_given_eta_xxx(sol.forcing, sol.kernel, tr.eta_xxx0);
        break;
    case ClosurePolicy::given_xx: {
        tr.eta_xx0 = need(closure.eta_xx0, "eta_xx(0, t)");
        auto r = solve_eta_xxx_given_eta_xx(sol.forcing, sol.kernel, tr.eta_xx0, opt.deconvolution_tol);
        tr.eta_xxx0 = r.theta;
        sol.deconvolution_disagreement = r.disagreement;
        break;
    }
    case ClosurePolicy::free_edge_zero: {
        tr.eta_xx0 = need(closure.eta_xx0, "eta_xx(0, t)");
        tr.eta_xxx0 = need(closure.eta_xxx0, "eta_xxx(0, t)");
        const auto predicted = solve_eta_xx_given_eta_xxx(sol.forcing, sol.kernel, tr.eta_xxx0);
        for (std::size_t n = 0; n <= N; ++n)
            sol.consistency_residual = std::max(sol.consistency_residual,
                                                2.0 * std::numbers::pi * std::abs(predicted[n] - tr.eta_xx0[n]));
        break;
    }
    }
    sol.traces = tr;

    // Output times are snapped to the trace grid.
    for (double t : opt.output_times) {
        if (t < 0.0 || t > opt.T * (1 + 1e-12)) throw InvalidArgument("output time outside [0, T]");
        sol.output_times.push_back(t_all[static_cast<std::size_t>(std::lround(t / opt.T * static_cast<double>(N)))]);
    }
    sol.eta0_hat.resize(grid.nodes.size());
    sol.eta_hat.assign(sol.output_times.size(), std::vector<cplx>(grid.nodes.size(), 0.0));
    const PlateParams open(params.U(), params.tol_root(), params.k_min(), params.k_max(), 0.0);
    for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
        const double k = grid.nodes[j];
        sol.eta0_hat[j] = fourier_forward(profile, k);
        const auto [wp, wm] = omega_pm(k, open);
        const auto Fp = F_t_cumulative(wp, k, tr);
        const auto Fm = F_t_cumulative(wm, k, tr);
        for (std::size_t n = 0; n < sol.output_times.size(); ++n) {
            const double t = sol.output_times[n];
            const auto idx = static_cast<std::size_t>(std::lround(t / opt.T * static_cast<double>(N)));
            sol.eta_hat[n][j] = free_evolution(k, t, sol.eta0_hat[j], params).eta + forced_response(k, t, Fp[idx], Fm[idx], params);
        }
    }
    for (std::size_t n = 0; n < sol.output_times.size(); ++n) {
        if (!opt.x_nodes.empty())
            sol.field.push_back(fourier_inverse_real(sol.eta_hat[n], grid, opt.x_nodes, sol.output_times[n]));
        const auto e0 = fourier_inverse_real(sol.eta_hat[n], grid, {0.0}, sol.output_times[n]);
        const auto e1 = fourier_inverse_real(sol.eta_hat[n], grid, {0.0}, sol.output_times[n], 1);
        sol.clamp_residual_eta = std::max(sol.clamp_residual_eta, std::abs(e0.values[0]));
        sol.clamp_residual_eta_x = std::max(sol.clamp_residual_eta_x, std::abs(e1.values[0]));
    }
    return sol;
}

}  // namespace flp
