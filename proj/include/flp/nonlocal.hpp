#pragma once

#include "flp/fullline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace flp {

/// Samples of the plate and of the potential on the moving surface.
struct SurfaceState {
    std::vector<double> x_nodes;
    std::vector<double> eta, eta_t, eta_tt, eta_x, eta_xx, eta_xxxx;
    std::vector<double> varphi, varphi_t, varphi_x;

    std::size_t size() const { return x_nodes.size(); }

    void validate() const
    {
        const std::size_t n = x_nodes.size();
        if (n < 2) throw InvalidArgument("SurfaceState needs at least two nodes");
        for (const auto* v : {&eta, &eta_t, &eta_x, &eta_xx, &eta_xxxx, &varphi, &varphi_t, &varphi_x})
            if (v->size() != n) throw InvalidArgument("SurfaceState sample arrays differ in length");
        if (!eta_tt.empty() && eta_tt.size() != n) throw InvalidArgument("SurfaceState eta_tt has the wrong length");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_nodes[i] > x_nodes[i - 1])) throw InvalidArgument("SurfaceState x nodes must increase");
    }

    static SurfaceState rest(const std::vector<double>& x)
    {
        const std::vector<double> z(x.size(), 0.0);
        return {x, z, z, z, z, z, z, z, z, z};
    }
};

/// Largest mismatch between supplied x-derivatives and central differences of the samples.
inline double derivative_consistency(const SurfaceState& s)
{
    s.validate();
    double worst = 0.0;
    auto check = [&](const std::vector<double>& f, const std::vector<double>& df) {
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            const double fd = (f[i + 1] - f[i - 1]) / (s.x_nodes[i + 1] - s.x_nodes[i - 1]);
            worst = std::max(worst, std::abs(fd - df[i]));
        }
    };
    check(s.eta, s.eta_x);
    check(s.eta_x, s.eta_xx);
    check(s.varphi, s.varphi_x);
    return worst;
}

struct SurfaceGradients {
    std::vector<double> phi_x, phi_y, phi_t;
};

/// Gradient of the bulk potential on the surface, recovered from the surface potential and the kinematic condition.
inline SurfaceGradients surface_gradients(const SurfaceState& s, const PlateParams& p)
{
    s.validate();
    const double U = p.U();
    SurfaceGradients g;
    g.phi_x.resize(s.size());
    g.phi_y.resize(s.size());
    g.phi_t.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double ex = s.eta_x[i], et = s.eta_t[i], vx = s.varphi_x[i];
        const double q = 1.0 + ex * ex;
        g.phi_x[i] = (vx - ex * (et + U * ex)) / q;
        g.phi_y[i] = (vx * ex + et + U * ex) / q;
        g.phi_t[i] = s.varphi_t[i] - et * (et + U * ex + ex * vx) / q;
    }
    return g;
}

/// Pointwise residual of the beam equation with the Bernoulli pressure, in surface variables.
inline std::vector<double> bernoulli_beam_residual(const SurfaceState& s, const PlateParams& p)
{
    s.validate();
    if (s.eta_tt.empty()) throw InvalidArgument("bernoulli_beam_residual needs eta_tt samples");
    const double U = p.U();
    std::vector<double> r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double ex = s.eta_x[i], et = s.eta_t[i];
        const double w = U + s.varphi_x[i] - ex * et;
        r[i] = s.eta_tt[i] + s.eta_xxxx[i] + s.varphi_t[i] - 0.5 * et * et - 0.5 * U * U + w * w / (2.0 * (1.0 + ex * ex));
    }
    return r;
}

namespace detail {

/// Finite-difference weights for derivatives 0..m at z from the nodes x (Fornberg's recursion).
inline std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& x, int m)
{
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(static_cast<std::size_t>(m) + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

/// int_X^inf e^{-ikx} h dx (right) or int_-inf^X (left) from the asymptotic series in 1/(ik).
inline cplx oscillatory_tail(double k, const std::vector<double>& xs, const std::vector<cplx>& hs, bool right)
{
    const double X = right ? xs.back() : xs.front();
    // The tail varies on the scale |X|, so the stencil spans a tenth of the sampled half-width.
    const std::size_t m = std::min<std::size_t>(8, xs.size());
    const double span = 0.1 * 0.5 * (xs.back() - xs.front());
    const double mean_dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    const std::size_t stride =
        std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(span / (m - 1) / mean_dx), (xs.size() - 1) / (m - 1)));
    std::vector<double> nx(m);
    std::vector<cplx> nh(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t idx = right ? xs.size() - 1 - i * stride : i * stride;
        nx[i] = xs[idx];
        nh[i] = hs[idx];
    }
    const int order = static_cast<int>(m) - 4;
    const auto w = fd_weights(X, nx, order);
    cplx sum = 0.0, ik_pow = I * k;
    for (int d = 0; d <= order; ++d) {
        cplx deriv = 0.0;
        for (std::size_t i = 0; i < m; ++i) deriv += w[static_cast<std::size_t>(d)][i] * nh[i];
        sum += deriv / ik_pow;
        ik_pow *= I * k;
    }
    return (right ? 1.0 : -1.0) * std::exp(-I * k * X) * sum;
}

}  // namespace detail

/// int e^{-ikx + k eta} (eta_t + U eta_x + i varphi_x) dx: trapezoid rule on the state nodes plus an
/// asymptotic correction for the algebraically decaying tails beyond the sampled range.
/// With linearised = true the factor e^{k eta} is dropped.
inline cplx global_relation_residual(const SurfaceState& s, double k, const PlateParams& p, bool linearised = false)
{
    s.validate();
    if (!(k > 0.0)) throw InvalidArgument("global_relation_residual needs k > 0");
    const double U = p.U();
    std::vector<cplx> h(s.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double growth = linearised ? 1.0 : std::exp(k * s.eta[i]);
        h[i] = growth * cplx(s.eta_t[i] + U * s.eta_x[i], s.varphi_x[i]);
        peak = std::max(peak, std::abs(h[i]));
    }
    const double edge = std::max(std::abs(h.front()), std::abs(h.back()));
    if (peak > 0.0 && edge > 1e-2 * peak)
        throw NonconvergentQuadrature("surface state does not decay at the ends of the x range");
    cplx sum = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const cplx fa = std::exp(-I * k * s.x_nodes[i]) * h[i];
        const cplx fb = std::exp(-I * k * s.x_nodes[i + 1]) * h[i + 1];
        sum += 0.5 * (s.x_nodes[i + 1] - s.x_nodes[i]) * (fa + fb);
    }
    if (peak > 0.0 && s.size() >= 6)
        sum += detail::oscillatory_tail(k, s.x_nodes, h, true) + detail::oscillatory_tail(k, s.x_nodes, h, false);
    return sum;
}

/// Linear full-line solution at time t scaled by eps, with all derivatives taken spectrally.
inline SurfaceState linearised_state(const FullLineSolution& sol, double t, const std::vector<double>& x, double eps)
{
    const auto& grid = sol.grid();
    const auto e0 = sol.eta_hat_at(t, 0);
    const auto e1 = sol.eta_hat_at(t, 1);
    const auto e2 = sol.eta_hat_at(t, 2);
    const auto p0 = sol.phi_hat_at(t, 0);
    const auto p1 = sol.phi_hat_at(t, 1);
    auto field = [&](const std::vector<cplx>& a, int dx) {
        auto v = fourier_inverse_real(a, grid, x, t, dx).values;
        for (double& y : v) y *= eps;
        return v;
    };
    SurfaceState s;
    s.x_nodes = x;
    s.eta = field(e0, 0);
    s.eta_t = field(e1, 0);
    s.eta_tt = field(e2, 0);
    s.eta_x = field(e0, 1);
    s.eta_xx = field(e0, 2);
    s.eta_xxxx = field(e0, 4);
    s.varphi = field(p0, 0);
    s.varphi_t = field(p1, 0);
    s.varphi_x = field(p0, 1);
    return s;
}

/// CSV with header x,eta,eta_t,eta_x,eta_xx,eta_xxxx,varphi,varphi_t,varphi_x and optional eta_tt.
inline SurfaceState load_surface_state_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty surface state file " + path);
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) {
            c.erase(std::remove_if(c.begin(), c.end(), [](unsigned char ch) { return std::isspace(ch); }), c.end());
            cols.push_back(c);
        }
    }
    SurfaceState s;
    auto target = [&](const std::string& name) -> std::vector<double>* {
        if (name == "x") return &s.x_nodes;
        if (name == "eta") return &s.eta;
        if (name == "eta_t") return &s.eta_t;
        if (name == "eta_tt") return &s.eta_tt;
        if (name == "eta_x") return &s.eta_x;
        if (name == "eta_xx") return &s.eta_xx;
        if (name == "eta_xxxx") return &s.eta_xxxx;
        if (name == "varphi") return &s.varphi;
        if (name == "varphi_t") return &s.varphi_t;
        if (name == "varphi_x") return &s.varphi_x;
        throw InvalidArgument("unknown surface state column " + name);
    };
    std::vector<std::vector<double>*> dest;
    for (const auto& c : cols) dest.push_back(target(c));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t i = 0;
        while (std::getline(ss, cell, ',')) {
            if (i >= dest.size()) throw IoError("too many cells in " + path);
            try {
                dest[i++]->push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("bad number '" + cell + "' in " + path);
            }
        }
        if (i != dest.size()) throw IoError("too few cells in " + path);
    }
    s.validate();
    return s;
}

}  // namespace flp
