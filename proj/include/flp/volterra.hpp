#pragma once

#include "flp/kernel.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace flp {

enum class Interpolation { linear, quadratic };

/// (K * theta)(t_n) for n = 0..N from samples theta_0..theta_N, with theta interpolated piecewise and integrated
/// exactly against the kernel moments.
inline std::vector<cplx> convolve(const ConvolutionWeights& cw, std::span<const cplx> theta,
                                  Interpolation interp = Interpolation::quadratic)
{
    const std::size_t N = cw.size();
    if (theta.size() != N + 1) throw InvalidArgument("convolve: sample count must be N + 1");
    const auto& m0 = cw.mu[0];
    const auto& m1 = cw.mu[1];
    const auto& m2 = cw.mu[2];
    std::vector<cplx> out(N + 1, 0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t p = n - i - 1;
            if (interp == Interpolation::linear || N < 2) {
                s += theta[p] * m1[i] + theta[p + 1] * (m0[i] - m1[i]);
            } else if (p + 2 <= N) {
                s += theta[p] * 0.5 * (m1[i] + m2[i]) + theta[p + 1] * (m0[i] - m2[i]) + theta[p + 2] * 0.5 * (m2[i] - m1[i]);
            } else {
                s += theta[p - 1] * 0.5 * (m2[i] - m1[i]) + theta[p] * (2.0 * m1[i] - m2[i]) +
                     theta[p + 1] * 0.5 * (2.0 * m0[i] - 3.0 * m1[i] + m2[i]);
            }
        }
        out[n] = s;
    }
    return out;
}

namespace detail {

inline std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> A, std::vector<cplx> b)
{
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        if (std::abs(A[c][c]) == 0.0) throw IllConditionedDeconvolution("singular start-up system");
        for (std::size_t r = c + 1; r < n; ++r) {
            const cplx f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t r = n; r-- > 0;) {
        cplx s = b[r];
        for (std::size_t k = r + 1; k < n; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return x;
}

}  // namespace detail

/// Product-trapezoid solve of (K * theta)(t_n) = rhs_n, n = 1..N. theta_0 comes from the first three equations
/// together with the requirement that the third difference of theta vanishes at the start.
inline std::vector<cplx> deconvolve_time_domain(const ConvolutionWeights& cw, std::span<const cplx> rhs)
{
    const std::size_t N = cw.size();
    if (rhs.size() != N + 1) throw InvalidArgument("deconvolve: sample count must be N + 1");
    if (N < 4) throw InvalidArgument("deconvolve: need at least 4 steps");
    const auto& m0 = cw.mu[0];
    const auto& m1 = cw.mu[1];
    // Row n: sum_i theta_{n-i-1} m1_i + theta_{n-i} (m0_i - m1_i).
    auto coeff = [&](std::size_t n, std::size_t j) -> cplx {
        cplx c = 0.0;
        if (j >= 1 && j <= n) c += m0[n - j] - m1[n - j];
        if (j + 1 <= n) c += m1[n - j - 1];
        return c;
    };
    std::vector<std::vector<cplx>> A(4, std::vector<cplx>(4, 0.0));
    std::vector<cplx> b(4, 0.0);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::size_t j = 0; j <= 3; ++j) A[n - 1][j] = coeff(n, j);
        b[n - 1] = rhs[n];
    }
    A[3] = {1.0, -3.0, 3.0, -1.0};
    const auto start = detail::solve_dense(A, b);
    std::vector<cplx> theta(N + 1, 0.0);
    for (std::size_t j = 0; j <= 3; ++j) theta[j] = start[j];
    const cplx diag = m0[0] - m1[0];
    for (std::size_t n = 4; n <= N; ++n) {
        cplx s = rhs[n] - theta[0] * m1[n - 1];
        for (std::size_t i = 1; i < n; ++i) s -= theta[n - i] * (m0[i] - m1[i] + m1[i - 1]);
        theta[n] = s / diag;
    }
    return theta;
}

/// BDF2 convolution quadrature solved in the Laplace domain: Theta(zeta) = R(zeta) / Omega(zeta) sampled on
/// |zeta| = rho and inverted by the Cauchy integral over that circle. Samples with |Omega| below
/// `threshold` * max |Omega| are discarded.
inline std::vector<cplx> deconvolve_laplace(const ConvolutionWeights& cw, std::span<const cplx> rhs, double threshold = 1e-10)
{
    const std::size_t N = cw.size();
    if (rhs.size() != N + 1) throw InvalidArgument("deconvolve: sample count must be N + 1");
    const std::size_t L = cw.omega_samples.size();
    if (L < N + 1) throw InvalidArgument("deconvolve: too few Laplace samples");
    double omax = 0.0;
    for (const auto& o : cw.omega_samples) omax = std::max(omax, std::abs(o));
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<cplx> Theta(L, 0.0);
    for (std::size_t l = 0; l < L; ++l) {
        const cplx zeta = std::polar(cw.rho, two_pi * static_cast<double>(l) / static_cast<double>(L));
        cplx R = 0.0;
        for (std::size_t n = N + 1; n-- > 0;) R = R * zeta + rhs[n];
        const cplx om = cw.omega_samples[l];
        Theta[l] = std::abs(om) < threshold * omax ? cplx(0.0) : R / om;
    }
    std::vector<cplx> theta(N + 1, 0.0);
    for (std::size_t n = 0; n <= N; ++n) {
        cplx s = 0.0;
        for (std::size_t l = 0; l < L; ++l) {
            const double ang = -two_pi * static_cast<double>((n * l) % L) / static_cast<double>(L);
            s += Theta[l] * cplx(std::cos(ang), std::sin(ang));
        }
        theta[n] = s / (static_cast<double>(L) * std::pow(cw.rho, static_cast<double>(n)));
    }
    return theta;
}

/// Discrete L2 norm on a uniform grid (trapezoid weights).
inline double grid_l2(std::span<const cplx> v, double h)
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        s += w * std::norm(v[i]);
    }
    return std::sqrt(s * h);
}

struct DeconvolutionResult {
    std::vector<cplx> theta;
    std::vector<cplx> theta_laplace;
    /// L2 distance between the two backends.
    double disagreement = 0.0;
};

/// Runs both backends and raises IllConditionedDeconvolution when they disagree by more than
/// tol * max(1, ||theta||).
inline DeconvolutionResult deconvolve(const ConvolutionWeights& cw, std::span<const cplx> rhs, double tol = 1e-4)
{
    DeconvolutionResult r;
    r.theta = deconvolve_time_domain(cw, rhs);
    r.theta_laplace = deconvolve_laplace(cw, rhs);
    std::vector<cplx> diff(r.theta.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = r.theta[i] - r.theta_laplace[i];
    r.disagreement = grid_l2(diff, cw.h);
    const double scale = std::max(1.0, grid_l2(r.theta, cw.h));
    if (!(r.disagreement <= tol * scale))
        throw IllConditionedDeconvolution("time-domain and Laplace deconvolutions disagree");
    return r;
}

namespace detail {

inline void check_aligned(const KernelTable& g, const KernelTable& K, std::size_t samples)
{
    if (!K.has_weights()) throw InvalidArgument("kernel table lacks convolution weights (uniform grid required)");
    const std::size_t N = K.weights.size();
    if (g.g_values.size() != N + 1 || samples != N + 1)
        throw InvalidArgument("g and traces must be sampled at t_n = n h, n = 0..N");
    if (std::abs(g.t_nodes.back() - K.t_nodes.back()) > 1e-12 * std::max(1.0, K.t_nodes.back()))
        throw InvalidArgument("g and K tables cover different intervals");
}

}  // namespace detail

/// eta_xx(0, t) = (g(t) - (K * eta_xxx(0, .))(t)) / (2 pi i).
inline std::vector<cplx> solve_eta_xx_given_eta_xxx(const KernelTable& g, const KernelTable& K, std::span<const cplx> eta_xxx0)
{
    detail::check_aligned(g, K, eta_xxx0.size());
    const auto conv = convolve(K.weights, eta_xxx0);
    std::vector<cplx> out(conv.size());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = (g.g_values[n] - conv[n]) / (2.0 * std::numbers::pi * I);
    return out;
}

/// Recovers eta_xxx(0, t) from K * eta_xxx = g - 2 pi i eta_xx(0, .).
inline DeconvolutionResult solve_eta_xxx_given_eta_xx(const KernelTable& g, const KernelTable& K, std::span<const cplx> eta_xx0,
                                                      double tol = 1e-4)
{
    detail::check_aligned(g, K, eta_xx0.size());
    std::vector<cplx> rhs(eta_xx0.size());
    for (std::size_t n = 0; n < rhs.size(); ++n) rhs[n] = g.g_values[n] - 2.0 * std::numbers::pi * I * eta_xx0[n];
    return deconvolve(K.weights, rhs, tol);
}

}  // namespace flp
