#pragma once

#include "flp/contour.hpp"
#include "flp/dispersion.hpp"
#include "flp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace flp {

/// int_0^1 s^m e^{a s} ds for m = 0, 1, 2.
inline cplx phase_moment(int m, cplx a)
{
    if (std::abs(a) < 1.0) {
        cplx term = 1.0;
        cplx sum = 1.0 / static_cast<double>(m + 1);
        for (int n = 1; n < 40; ++n) {
            term *= a / static_cast<double>(n);
            const cplx add = term / static_cast<double>(m + n + 1);
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    const cplx ea = std::exp(a);
    cplx J = (ea - 1.0) / a;
    for (int j = 1; j <= m; ++j) J = (ea - static_cast<double>(j) * J) / a;
    return J;
}

struct ConvolutionWeights {
    double h = 0.0;
    /// mu[m][i] = int_{ih}^{(i+1)h} K(s) ((s - ih)/h)^m ds, i = 0..N-1.
    std::array<std::vector<cplx>, 3> mu;
    /// Laplace samples for the convolution-quadrature backend: Omega_l = L[K](delta(zeta_l)/h) on |zeta| = rho.
    double rho = 0.0;
    std::vector<cplx> omega_samples;

    std::size_t size() const { return mu[0].size(); }
};

struct KernelTable {
    std::vector<double> t_nodes;
    std::vector<cplx> K_values;
    std::vector<cplx> g_values;
    double weak_sing_constant = 0.0;
    /// Present when the table was built on a uniform grid t_n = n h.
    ConvolutionWeights weights;
    bool has_weights() const { return weights.size() > 0; }
};

/// Options controlling kernel quadrature.
struct KernelOptions {
    double resolution = 1.0;
    /// Build product-integration and Laplace weights when the nodes are t_n = n h, n = 1..N.
    bool build_weights = true;
};

namespace detail {

inline bool uniform_from_h(const std::vector<double>& t, double& h)
{
    if (t.empty() || !(t[0] > 0.0)) return false;
    h = t[0];
    for (std::size_t n = 0; n < t.size(); ++n)
        if (std::abs(t[n] - h * static_cast<double>(n + 1)) > 1e-12 * std::max(1.0, t[n])) return false;
    return true;
}

inline double max_imag_omega_minus(const std::vector<PathNode>& nodes, const PathDispersion& d)
{
    double a = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) a = std::max(a, d.omega_minus[i].imag());
    return a;
}

}  // namespace detail

/// K(t) = int_gamma e^{-i w-(k) t} dw-(k) / k along the given path.
inline cplx kernel_value(const ContourPath& path, const PlateParams& p, double t, double resolution = 1.0)
{
    if (!(t > 0.0)) throw InvalidArgument("kernel is singular at t = 0");
    QuadratureHints h;
    h.time = t;
    h.resolution = resolution;
    const auto nodes = discretise(path, p, h);
    const auto d = path_dispersion(nodes, p);
    cplx s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += std::exp(-I * d.omega_minus[i] * t) * d.d_omega_minus[i] / nodes[i].k * nodes[i].w;
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw NonconvergentQuadrature("kernel quadrature overflowed");
    return s;
}

/// L[K](s) = int_gamma dw-(k) / (k (s + i w-(k))), valid for Re s above max Im w- on the path.
inline cplx kernel_laplace(const ContourPath& path, const PlateParams& p, cplx s, double resolution = 1.0)
{
    QuadratureHints h;
    h.ray_scale = std::sqrt(std::abs(s));
    h.resolution = resolution;
    h.extra_rate = 0.0;
    const auto nodes = discretise(path, p, h);
    const auto d = path_dispersion(nodes, p);
    if (s.real() <= detail::max_imag_omega_minus(nodes, d))
        throw IllConditionedDeconvolution("Laplace abscissa lies below the growth rate of the kernel");
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += d.d_omega_minus[i] / (nodes[i].k * (s + I * d.omega_minus[i])) * nodes[i].w;
    return sum;
}

/// Moments of K against powers of the local coordinate on [ih, (i+1)h].
inline std::array<cplx, 3> kernel_cell_moments(const ContourPath& path, const PlateParams& p, double h, std::size_t i,
                                               double resolution = 1.0)
{
    QuadratureHints q;
    q.time = static_cast<double>(i) * h;
    q.ray_scale = 1.0 / std::sqrt(h);
    q.extra_rate = 2.0 * h;
    q.resolution = resolution;
    const auto nodes = discretise(path, p, q);
    const auto d = path_dispersion(nodes, p);
    std::array<cplx, 3> mu{};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const cplx w = d.omega_minus[j];
        const cplx base = h * std::exp(-I * w * q.time) * d.d_omega_minus[j] / nodes[j].k * nodes[j].w;
        for (int m = 0; m < 3; ++m) mu[static_cast<std::size_t>(m)] += base * phase_moment(m, -I * w * h);
    }
    return mu;
}

/// BDF2 symbol delta(zeta) = (1 - zeta) + (1 - zeta)^2 / 2.
inline cplx bdf2_symbol(cplx z) { return (1.0 - z) + 0.5 * (1.0 - z) * (1.0 - z); }

inline ConvolutionWeights kernel_convolution_weights(const ContourPath& path, const PlateParams& p, double h, std::size_t N,
                                                     double resolution = 1.0)
{
    if (!(h > 0.0) || N < 2) throw InvalidArgument("convolution weights need h > 0 and N >= 2");
    ConvolutionWeights cw;
    cw.h = h;
    for (auto& v : cw.mu) v.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto mu = kernel_cell_moments(path, p, h, i, resolution);
        for (int m = 0; m < 3; ++m) cw.mu[static_cast<std::size_t>(m)][i] = mu[static_cast<std::size_t>(m)];
    }
    // Circle radius with rho^N = 1e-6 keeps aliasing near 1e-12 and amplification near 1e6.
    const std::size_t L = 2 * (N + 1);
    cw.rho = std::pow(10.0, -6.0 / static_cast<double>(N));
    cw.omega_samples.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        const cplx zeta = std::polar(cw.rho, 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(L));
        cw.omega_samples[l] = kernel_laplace(path, p, bdf2_symbol(zeta) / h, resolution);
    }
    return cw;
}

inline KernelTable compute_kernel(const PlateParams& p, const ContourPath& path, const std::vector<double>& t_nodes,
                                  const KernelOptions& opt = {})
{
    check_contour(path, p);
    KernelTable tab;
    tab.t_nodes = t_nodes;
    tab.K_values.reserve(t_nodes.size());
    for (double t : t_nodes) {
        if (!(t > 0.0)) throw InvalidArgument("compute_kernel: t_nodes must be positive");
        tab.K_values.push_back(kernel_value(path, p, t, opt.resolution));
        if (t <= 1.0) tab.weak_sing_constant = std::max(tab.weak_sing_constant, std::sqrt(t) * std::abs(tab.K_values.back()));
    }
    double h = 0.0;
    if (opt.build_weights && t_nodes.size() >= 2 && detail::uniform_from_h(t_nodes, h))
        tab.weights = kernel_convolution_weights(path, p, h, t_nodes.size(), opt.resolution);
    return tab;
}

/// Uniform nodes h, 2h, ..., T with h = T / N.
inline std::vector<double> uniform_times(double T, std::size_t N, bool include_zero = false)
{
    std::vector<double> t;
    for (std::size_t n = include_zero ? 0 : 1; n <= N; ++n) t.push_back(T * static_cast<double>(n) / static_cast<double>(N));
    return t;
}

namespace detail {

/// Endpoint expansion of the half-line transform: (1/sqrt(2 pi)) sum_j eta0^(j)(0) / (ik)^(j+1), truncated where the
/// terms stop decreasing at |k| = radius.
inline std::vector<double> tail_model_coefficients(const Profile& profile, double radius)
{
    std::vector<double> d = profile.hinge_taylor();
    if (d.empty())
        for (int j = 0; j <= 4; ++j) d.push_back(profile.derivative(j, 0.0));
    std::vector<double> out;
    double prev = std::numeric_limits<double>::infinity();
    bool started = false;
    for (std::size_t j = 0; j < d.size(); ++j) {
        const double mag = std::abs(d[j]) / std::pow(radius, static_cast<double>(j + 1));
        if (d[j] != 0.0) {
            if (started && mag > prev) break;
            started = true;
            prev = mag;
            if (mag < 1e-20) {
                out.push_back(d[j]);
                break;
            }
        }
        out.push_back(d[j]);
    }
    return out;
}

inline cplx tail_model(const std::vector<double>& coef, cplx k)
{
    const cplx ik = I * k;
    cplx p = 1.0 / ik;
    cplx s = 0.0;
    for (double c : coef) {
        s += c * p;
        p /= ik;
    }
    return s / std::sqrt(2.0 * std::numbers::pi);
}

/// sqrt(2 pi) (1 + 1/k) c-/alpha per unit eta0_hat, times dw-/dk / k.
inline cplx forcing_density(cplx k, const PlateParams& p, cplx d_omega_minus)
{
    const PlateParams open(p.U(), p.tol_root(), p.k_min(), p.k_max(), 0.0);
    const cplx wp = omega_pm(k, open).first;
    const cplx k4 = k * k * k * k;
    const cplx cm_over_alpha = -I * (wp * wp - k4) * (k + 1.0) / (2.0 * p.U() * k);
    return std::sqrt(2.0 * std::numbers::pi) * (1.0 + 1.0 / k) * cm_over_alpha * d_omega_minus / k;
}

}  // namespace detail

struct ForcingOptions {
    double resolution = 1.0;
    /// |k| beyond which the transform of the profile is replaced by its endpoint expansion.
    double tail_radius = 20.0;
};

/// g(t) = sqrt(2 pi) int_gamma (1 + 1/k) (c-/alpha) e^{-i w- t} dw- / k.
inline KernelTable compute_g(const Profile& profile, const PlateParams& p, const ContourPath& path,
                             const std::vector<double>& t_nodes, const ForcingOptions& opt = {})
{
    if (profile.support() != Support::half_line) throw InvalidArgument("compute_g needs a half-line profile");
    if (profile.hinge_class() < 2) throw HingeViolation("compute_g needs hinge class >= 2");
    check_hinge(profile, 2);
    KernelTable tab;
    tab.t_nodes = t_nodes;
    tab.g_values.assign(t_nodes.size(), 0.0);
    if (profile.is_zero()) return tab;
    if (path.deformation_radius() < opt.tail_radius)
        throw InvalidArgument("compute_g needs a contour whose deformation radius is at least the tail radius");
    check_contour(path, p);
    const double t_max = t_nodes.empty() ? 0.0 : *std::max_element(t_nodes.begin(), t_nodes.end());

    ContourPath bounded;
    ContourPath rays;
    for (const auto& s : path.segments) (s.kind == SegmentKind::ray ? rays : bounded).segments.push_back(s);
    QuadratureHints hb;
    hb.time = t_max;
    hb.extra_rate = profile.extent();
    hb.resolution = opt.resolution;
    const auto bnodes = discretise(bounded, p, hb);
    const auto bd = path_dispersion(bnodes, p);
    const auto coef = detail::tail_model_coefficients(profile, opt.tail_radius);
    std::vector<cplx> bden(bnodes.size());
    for (std::size_t i = 0; i < bnodes.size(); ++i) {
        const cplx k = bnodes[i].k;
        const bool exact = bnodes[i].role == SegmentRole::gamma && std::abs(k) < opt.tail_radius;
        const cplx e0 = exact ? fourier_forward(profile, k) : detail::tail_model(coef, k);
        bden[i] = detail::forcing_density(k, p, bd.d_omega_minus[i]) * e0 * bnodes[i].w;
    }
    for (std::size_t n = 0; n < t_nodes.size(); ++n) {
        const double t = t_nodes[n];
        if (t < 0.0) throw InvalidArgument("compute_g: negative time");
        cplx s = 0.0;
        for (std::size_t i = 0; i < bnodes.size(); ++i) s += std::exp(-I * bd.omega_minus[i] * t) * bden[i];
        QuadratureHints hr;
        hr.time = t;
        hr.ray_scale = 1.0;
        hr.resolution = opt.resolution;
        const auto rnodes = discretise(rays, p, hr);
        const auto rd = path_dispersion(rnodes, p);
        for (std::size_t i = 0; i < rnodes.size(); ++i) {
            const cplx k = rnodes[i].k;
            s += std::exp(-I * rd.omega_minus[i] * t) * detail::forcing_density(k, p, rd.d_omega_minus[i]) *
                 detail::tail_model(coef, k) * rnodes[i].w;
        }
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw NonconvergentQuadrature("forcing quadrature overflowed");
        tab.g_values[n] = s;
    }
    return tab;
}

/// Contour for the forcing: kernel contour with radius at least the tail radius.
inline ContourPath forcing_contour(const PlateParams& p, double tail_radius = 20.0)
{
    return kernel_contour(p, std::max(default_split_radius(p), tail_radius));
}

struct DeltaCheckOptions {
    /// Support [0, T] of the test function and its inner quadrature.
    double T = 2.0;
    /// Truncation radius of gamma.
    double radius = 12.0;
    double resolution = 1.0;
};

/// (1/2 pi) int_gamma int_0^T e^{-i w-(t - tau)} f(tau) dtau dw-, gamma truncated to |k| <= radius.
inline cplx delta_identity_check(const ContourPath& contour, const PlateParams& p, const std::function<double(double)>& f,
                                 double t, const DeltaCheckOptions& opt = {})
{
    QuadratureHints h;
    h.time = std::max(t, opt.T) + opt.T;
    h.resolution = opt.resolution;
    const auto nodes = discretise(contour, p, h);
    const auto d = path_dispersion(nodes, p);
    const auto inner = composite_rule(uniform_breaks(0.0, opt.T, static_cast<std::size_t>(std::ceil(40 * opt.T))));
    std::vector<double> fv(inner.nodes.size());
    for (std::size_t j = 0; j < fv.size(); ++j) fv[j] = f(inner.nodes[j]);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const cplx w = d.omega_minus[i];
        cplx ft = 0.0;
        for (std::size_t j = 0; j < fv.size(); ++j) ft += inner.weights[j] * std::exp(I * w * (inner.nodes[j] - t)) * fv[j];
        sum += ft * d.d_omega_minus[i] * nodes[i].w;
    }
    return sum / (2.0 * std::numbers::pi);
}

}  // namespace flp
