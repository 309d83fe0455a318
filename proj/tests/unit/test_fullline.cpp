#include "flp/fullline.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace flp;

TEST(FullLine, SingleModeExample)
{
    PlateParams p(1.0);
    for (double t : {0.0, 0.3, 1.7, 5.0}) {
        const auto s = free_evolution(1.0, t, 1.0, p);
        EXPECT_NEAR(std::abs(s.eta - std::exp(-I * t)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(phi_hat_from(s.eta, s.eta_t, 1.0, p)), 0.0, 1e-14);
    }
}

TEST(FullLine, AgreesWithRootForm)
{
    // c+ e^{-iw+ t} + c- e^{-iw- t} from the coefficient route.
    PlateParams p(1.3);
    for (double k : {0.05, 0.4, 2.0, 7.0}) {
        const auto d = coefficients(k, 1.0, p);
        for (double t : {0.1, 1.0, 2.0}) {
            const cplx direct = d.c_plus * std::exp(-I * d.omega_plus * t) + d.c_minus * std::exp(-I * d.omega_minus * t);
            EXPECT_LE(std::abs(free_evolution(k, t, 1.0, p).eta - direct), 1e-11 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(FullLine, InitialConditionsAndOdeResidual)
{
    PlateParams p(1.0);
    const double U = p.U();
    auto sol = solve_full_line(gaussian_profile(), p, SpectralGrid::make(9.0, 0.1));
    const auto& g = sol.grid();
    for (std::size_t j = 0; j < g.nodes.size(); j += 7) {
        const double k = g.nodes[j];
        const auto s0 = sol.state(j, 0.0);
        EXPECT_LE(std::abs(s0.eta - sol.eta0_hat()[j]), 1e-12);
        EXPECT_LE(std::abs(s0.eta_tt / k + 2.0 * I * U * s0.eta_t - k * U * U * sol.eta0_hat()[j]), 1e-12 * (1 + k * k * k));
        for (double t : {0.0, 0.5, 1.3, 2.0}) {
            const auto s = sol.state(j, t);
            const cplx res = (1.0 + 1.0 / k) * s.eta_tt + 2.0 * I * U * s.eta_t + (k * k * k * k - U * U * k) * s.eta;
            EXPECT_LE(std::abs(res), 1e-9 * (1 + std::pow(k, 4)));
            // Independent check of the time derivative by central differences.
            const double h = 1e-5;
            const cplx fd = (sol.eta_hat(j, t + h) - sol.eta_hat(j, t - h)) / (2 * h);
            EXPECT_LE(std::abs(fd - s.eta_t), 1e-6 * (1 + k * k));
        }
    }
}

TEST(FullLine, ZeroProfileGivesZeroField)
{
    PlateParams p(1.0);
    auto sol = solve_full_line(zero_profile(Support::full_line), p, SpectralGrid::make(9.0, 0.2));
    auto f = evaluate_field(sol, {-1.0, 0.0, 2.0}, 1.0);
    for (double v : f.eta.values) EXPECT_EQ(v, 0.0);
    for (double v : f.phi.values) EXPECT_EQ(v, 0.0);
}

TEST(FullLine, InitialFieldReproducesProfile)
{
    PlateParams p(1.0);
    auto sol = solve_full_line(gaussian_profile(), p, SpectralGrid::make(9.0, 0.1));
    std::vector<double> xs;
    for (int i = 0; i <= 80; ++i) xs.push_back(-10.0 + 0.25 * i);
    auto f = evaluate_field(sol, xs, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(f.eta.values[i], std::exp(-xs[i] * xs[i] / 2), 1e-8);
}

TEST(FullLine, Linearity)
{
    PlateParams p(0.7);
    auto grid = SpectralGrid::make(9.0, 0.2);
    auto a = solve_full_line(gaussian_profile(), p, grid);
    auto shifted = function_profile("shift", Support::full_line, [](double x) { return std::exp(-(x - 1) * (x - 1)); }, 10.0);
    auto b = solve_full_line(shifted, p, grid);
    std::vector<cplx> mix(grid.nodes.size());
    for (std::size_t j = 0; j < mix.size(); ++j) mix[j] = 2.0 * a.eta0_hat()[j] - 3.0 * b.eta0_hat()[j];
    FullLineSolution c(p, grid, mix);
    for (std::size_t j = 0; j < mix.size(); j += 11) {
        const cplx lhs = c.eta_hat(j, 1.5);
        const cplx rhs = 2.0 * a.eta_hat(j, 1.5) - 3.0 * b.eta_hat(j, 1.5);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (1 + std::abs(rhs)));
    }
}

TEST(FullLine, MethodOfLinesSlice)
{
    PlateParams p(1.0);
    auto grid = SpectralGrid::make(9.0, 0.1);
    auto sol = solve_full_line(gaussian_profile(), p, grid);
    std::vector<cplx> oracle_hat(grid.nodes.size());
    for (std::size_t j = 0; j < grid.nodes.size(); ++j)
        oracle_hat[j] = oracle::method_of_lines(grid.nodes[j], 1.0, sol.eta0_hat()[j], {0.0, 2.0}).back();
    std::vector<double> xs;
    for (int i = 0; i <= 80; ++i) xs.push_back(-10.0 + 0.25 * i);
    auto a = evaluate_field(sol, xs, 2.0).eta;
    auto b = fourier_inverse_real(oracle_hat, grid, xs, 2.0);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-6);
}

TEST(FullLine, WellposednessReport)
{
    PlateParams p(1.0);
    auto sol = solve_full_line(gaussian_profile(), p, SpectralGrid::make(9.0, 0.1));
    std::vector<double> ts;
    for (int i = 0; i <= 20; ++i) ts.push_back(0.1 * i);
    auto rep = wellposedness_report(sol, ts);
    EXPECT_NEAR(rep.rows[0].ratio, sobolev_norm(gaussian_profile(), 0) / sobolev_norm(gaussian_profile(), 2), 1e-9);
    EXPECT_LE(rep.rows[0].ratio, 1.0);
    EXPECT_TRUE(std::isfinite(rep.sup_ratio));
    for (const auto& r : rep.rows) {
        EXPECT_LE(r.identity_residual, 1e-10);
        EXPECT_LE(r.identity_residual_continued, 1e-8);
    }
    const auto [l, r] = modulus_identity_sides(2.0, 1.0, p);
    EXPECT_LE(std::abs(l - r), 1e-10);
}
