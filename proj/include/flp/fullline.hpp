#pragma once

#include "flp/dispersion.hpp"
#include "flp/spectral.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace flp {

/// eta_hat and its first two time derivatives at one (k, t).
struct FreeState {
    cplx eta;
    cplx eta_t;
    cplx eta_tt;
};

/// Unforced evolution of one spectral mode. Written as e^{-imt}[cos(dt) + iB sin(dt)/d], which is even in d,
/// so it stays regular at k -> 0 and at the real branch point where the two roots merge.
inline FreeState free_evolution(cplx k, double t, cplx eta0_hat, const PlateParams& p)
{
    const double U = p.U();
    const cplx kp1 = k + 1.0;
    const cplx m = U * k / kp1;
    const cplx d2 = k * k * k * (k * k * k + k * k - U * U) / (kp1 * kp1);
    const cplx B = m - k * (k * k + U * U) / (2.0 * U);
    const cplx z2 = d2 * t * t;
    cplx C;
    cplx Sn;
    if (std::abs(z2) < 1e-6) {
        C = 1.0 - z2 / 2.0 + z2 * z2 / 24.0 - z2 * z2 * z2 / 720.0;
        Sn = t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0);
    } else {
        const cplx d = std::sqrt(d2);
        C = std::cos(d * t);
        Sn = std::sin(d * t) / d;
    }
    const cplx H = C + I * B * Sn;
    const cplx Hp = -d2 * Sn + I * B * C;
    const cplx e = std::exp(-I * m * t) * eta0_hat;
    return {e * H, e * (-I * m * H + Hp), e * (-m * m * H - 2.0 * I * m * Hp - d2 * H)};
}

/// phi_hat = eta_hat_t / k + i U eta_hat.
inline cplx phi_hat_from(cplx eta_hat, cplx eta_hat_t, cplx k, const PlateParams& p)
{
    if (k == cplx(0.0)) throw InvalidArgument("phi_hat: k = 0");
    return eta_hat_t / k + I * p.U() * eta_hat;
}

struct SpectralNode {
    double k;
    double weight;
    cplx eta0_hat;
    cplx omega_plus;
    cplx omega_minus;
};

class FullLineSolution {
public:
    FullLineSolution(PlateParams params, SpectralGrid grid, std::vector<cplx> eta0_hat)
        : params_(params), grid_(std::move(grid)), eta0_hat_(std::move(eta0_hat))
    {
        const PlateParams open(params_.U(), params_.tol_root(), params_.k_min(), params_.k_max(), 0.0);
        nodes_.reserve(grid_.nodes.size());
        for (std::size_t j = 0; j < grid_.nodes.size(); ++j) {
            const auto [wp, wm] = omega_pm(grid_.nodes[j], open);
            nodes_.push_back({grid_.nodes[j], grid_.weights[j], eta0_hat_[j], wp, wm});
        }
    }

    const PlateParams& params() const { return params_; }
    const SpectralGrid& grid() const { return grid_; }
    const std::vector<cplx>& eta0_hat() const { return eta0_hat_; }
    const std::vector<SpectralNode>& decomposition() const { return nodes_; }

    FreeState state(std::size_t j, double t) const
    {
        return free_evolution(grid_.nodes[j], t, eta0_hat_[j], params_);
    }
    cplx eta_hat(std::size_t j, double t) const { return state(j, t).eta; }
    cplx phi_hat(std::size_t j, double t) const
    {
        const auto s = state(j, t);
        return phi_hat_from(s.eta, s.eta_t, grid_.nodes[j], params_);
    }

    /// Time derivative of order 0..2 of eta_hat on all nodes.
    std::vector<cplx> eta_hat_at(double t, int t_order = 0) const
    {
        std::vector<cplx> out(grid_.nodes.size());
        for (std::size_t j = 0; j < out.size(); ++j) {
            const auto s = state(j, t);
            out[j] = t_order == 0 ? s.eta : (t_order == 1 ? s.eta_t : s.eta_tt);
        }
        return out;
    }

    /// phi_hat (t_order 0) or its time derivative (t_order 1) on all nodes.
    std::vector<cplx> phi_hat_at(double t, int t_order = 0) const
    {
        std::vector<cplx> out(grid_.nodes.size());
        for (std::size_t j = 0; j < out.size(); ++j) {
            const auto s = state(j, t);
            out[j] = t_order == 0 ? phi_hat_from(s.eta, s.eta_t, grid_.nodes[j], params_)
                                  : phi_hat_from(s.eta_t, s.eta_tt, grid_.nodes[j], params_);
        }
        return out;
    }

private:
    PlateParams params_;
    SpectralGrid grid_;
    std::vector<cplx> eta0_hat_;
    std::vector<SpectralNode> nodes_;
};

inline FullLineSolution solve_full_line(const Profile& profile, const PlateParams& params, const SpectralGrid& grid)
{
    if (profile.support() != Support::full_line) throw InvalidArgument("solve_full_line needs a full-line profile");
    std::vector<cplx> eh(grid.nodes.size());
    for (std::size_t j = 0; j < eh.size(); ++j) eh[j] = fourier_forward(profile, grid.nodes[j]);
    return FullLineSolution(params, grid, std::move(eh));
}

struct FieldPair {
    FieldSlice eta;
    FieldSlice phi;
};

inline FieldPair evaluate_field(const FullLineSolution& sol, const std::vector<double>& x_nodes, double t)
{
    if (t < 0.0) throw InvalidArgument("evaluate_field: t must be non-negative");
    return {fourier_inverse_real(sol.eta_hat_at(t), sol.grid(), x_nodes, t),
            fourier_inverse_real(sol.phi_hat_at(t), sol.grid(), x_nodes, t)};
}

struct WellposednessRow {
    double t;
    double eta_l2;
    double eta0_h2;
    double ratio;
    /// Largest relative residual of the trigonometric identity where Q^2 > 0.
    double identity_residual;
    /// Same where Q^2 < 0 (checked through the analytic continuation).
    double identity_residual_continued;
};

struct WellposednessReport {
    std::vector<WellposednessRow> rows;
    double sup_ratio = 0.0;
};

/// Both sides of the modulus identity at one (k, t): |c~- e^{-iw- t} + c~+ e^{-iw+ t}|^2 and the closed form in Q.
inline std::pair<double, double> modulus_identity_sides(double k, double t, const PlateParams& p)
{
    const double U = p.U();
    const PlateParams open(U, p.tol_root(), p.k_min(), p.k_max(), 0.0);
    const auto d = coefficients(k, 1.0, open);
    const double lhs = std::norm(d.c_minus * std::exp(-I * d.omega_minus * t) + d.c_plus * std::exp(-I * d.omega_plus * t));
    const cplx Q = std::sqrt(cplx(k * (k * k * k + k * k - U * U)));
    const cplx arg = k * Q * t / (1.0 + k);
    const double rhs = std::norm(std::cos(arg) + (Q / U + k * k * U / Q) * std::sin(arg) / (2.0 * I * k));
    return {lhs, rhs};
}

inline WellposednessReport wellposedness_report(const FullLineSolution& sol, const std::vector<double>& t_nodes)
{
    const auto& g = sol.grid();
    const auto& e0 = sol.eta0_hat();
    const double U = sol.params().U();
    double h2 = 0.0;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        const double w = 1.0 + g.nodes[j] * g.nodes[j];
        h2 += g.weights[j] * w * w * std::norm(e0[j]);
    }
    h2 = std::sqrt(2.0 * h2);
    WellposednessReport rep;
    for (double t : t_nodes) {
        WellposednessRow row{t, 0.0, h2, 0.0, 0.0, 0.0};
        double l2 = 0.0;
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            const double k = g.nodes[j];
            l2 += g.weights[j] * std::norm(sol.eta_hat(j, t));
            double lhs = 0.0;
            double rhs = 0.0;
            try {
                std::tie(lhs, rhs) = modulus_identity_sides(k, t, sol.params());
            } catch (const DegenerateRoots&) {
                continue;
            }
            const double res = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
            if (k * k * k + k * k - U * U > 0.0)
                row.identity_residual = std::max(row.identity_residual, res);
            else
                row.identity_residual_continued = std::max(row.identity_residual_continued, res);
        }
        row.eta_l2 = std::sqrt(2.0 * l2);
        row.ratio = h2 > 0.0 ? row.eta_l2 / h2 : 0.0;
        rep.sup_ratio = std::max(rep.sup_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace flp
