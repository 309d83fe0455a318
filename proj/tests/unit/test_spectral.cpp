#include "flp/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace flp;

namespace {

// Half-line transform with a dense uniform composite rule, independent of the library panels.
cplx dense_half_transform(const Profile& p, cplx k, int panels)
{
    const double b = p.extent();
    auto nw = composite_rule(uniform_breaks(0.0, b, static_cast<std::size_t>(panels)));
    cplx s = 0.0;
    for (std::size_t i = 0; i < nw.nodes.size(); ++i) s += nw.weights[i] * std::exp(-I * k * nw.nodes[i]) * p(nw.nodes[i]);
    return s / std::sqrt(2 * std::numbers::pi);
}

}  // namespace

TEST(Spectral, GaussianSelfReciprocal)
{
    auto g = gaussian_profile();
    for (double k : {0.0, 0.5, 1.0, 3.0, 6.0}) {
        EXPECT_NEAR(std::abs(fourier_forward(g, k) - std::exp(-k * k / 2)), 0.0, 1e-14);
    }
    EXPECT_THROW(fourier_forward(g, cplx(1.0, -1.0)), InvalidArgument);
}

TEST(Spectral, ZeroProfile)
{
    auto z = zero_profile(Support::full_line);
    EXPECT_EQ(fourier_forward(z, 2.0), cplx(0.0));
    EXPECT_EQ(sobolev_norm(z, 2), 0.0);
}

TEST(Spectral, HalfLineTransformAgainstDenseOracle)
{
    auto h = hinge_profile(4);
    const cplx k(1.0, -1.0);
    const cplx a = dense_half_transform(h, k, 400);
    const cplx b = dense_half_transform(h, k, 800);
    EXPECT_LE(std::abs(a - b), 1e-14);
    EXPECT_LE(std::abs(fourier_forward(h, k) - b), 1e-10);
    EXPECT_THROW(fourier_forward(h, cplx(1.0, 0.5)), InvalidArgument);
}

TEST(Spectral, HalfLineCauchyRiemann)
{
    auto h = hinge_profile(4);
    const cplx k0(1.5, -0.7);
    const double d = 1e-4;
    const cplx fx = (fourier_forward(h, k0 + d) - fourier_forward(h, k0 - d)) / (2 * d);
    const cplx fy = (fourier_forward(h, k0 + I * d) - fourier_forward(h, k0 - I * d)) / (2 * d);
    EXPECT_LE(std::abs(fy - I * fx), 1e-6);
}

TEST(Spectral, InverseOfGaussianPair)
{
    auto grid = SpectralGrid::make(9.0, 0.1);
    std::vector<cplx> eh(grid.nodes.size());
    for (std::size_t j = 0; j < eh.size(); ++j) eh[j] = std::exp(-grid.nodes[j] * grid.nodes[j] / 2);
    std::vector<double> xs;
    for (int i = -40; i <= 40; ++i) xs.push_back(0.25 * i);
    auto f = fourier_inverse_real(eh, grid, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(f.values[i], std::exp(-xs[i] * xs[i] / 2), 1e-8);
    auto z = fourier_inverse_real(std::vector<cplx>(eh.size(), 0.0), grid, xs);
    for (double v : z.values) EXPECT_EQ(v, 0.0);
}

TEST(Spectral, RoundTripHalfLineProfile)
{
    auto h = hinge_profile(4);
    auto grid = SpectralGrid::make(120.0, 0.25);
    std::vector<cplx> eh(grid.nodes.size());
    for (std::size_t j = 0; j < eh.size(); ++j) eh[j] = fourier_forward(h, grid.nodes[j]);
    std::vector<double> xs;
    for (int i = -10; i <= 30; ++i) xs.push_back(0.1 * i);
    auto f = fourier_inverse_real(eh, grid, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double exact = xs[i] > 0 ? h(xs[i]) : 0.0;
        EXPECT_NEAR(f.values[i], exact, 1e-7) << xs[i];
    }
}

TEST(Spectral, GridInvariants)
{
    auto grid = SpectralGrid::make(9.0, 0.1);
    for (std::size_t i = 1; i < grid.nodes.size(); ++i) EXPECT_GT(grid.nodes[i], grid.nodes[i - 1]);
    for (double w : grid.weights) EXPECT_GT(w, 0.0);
    EXPECT_GE(grid.nodes.front(), 1e-6);
    EXPECT_LE(grid.nodes.back(), 9.0);
}

TEST(Spectral, ParsevalAndSobolev)
{
    auto g = gaussian_profile();
    // ||e^{-x^2/2}||_{L2} = pi^{1/4}.
    EXPECT_NEAR(sobolev_norm(g, 0), std::pow(std::numbers::pi, 0.25), 1e-9);
    EXPECT_NEAR(sobolev_norm(g, 0), sobolev_norm_x(g, 0), 1e-9);
    // ||f||^2 + 2||f'||^2 + ||f''||^2 = (1 + 1 + 3/4) sqrt(pi).
    EXPECT_NEAR(sobolev_norm(g, 2), std::sqrt(2.75 * std::sqrt(std::numbers::pi)), 1e-6);
    EXPECT_NEAR(sobolev_norm(g, 2), sobolev_norm_x(g, 2), 1e-6);
    auto h = hinge_profile(4);
    EXPECT_NEAR(sobolev_norm(h, 0), sobolev_norm_x(h, 0), 1e-8);
}

TEST(Spectral, ExtensionCheck)
{
    auto h4 = hinge_profile(4);
    const double r3 = extension_check(h4, 3);
    const double r2 = extension_check(h4, 2);
    EXPECT_TRUE(std::isfinite(r3));
    EXPECT_NEAR(r3, 1.0, 1e-5);
    EXPECT_NEAR(r2, 1.0, 1e-6);
    EXPECT_EQ(h4.hinge_class(), 3);
    auto h2 = hinge_profile(2);
    EXPECT_THROW(extension_check(h2, 3), HingeViolation);
}

TEST(Spectral, SampledProfileFromCsvData)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (int i = 0; i <= 800; ++i) {
        xs.push_back(0.01 * i);
        ys.push_back(std::pow(xs.back(), 4) * std::exp(-xs.back() * xs.back()));
    }
    auto s = sampled_profile("sampled", xs, ys);
    EXPECT_EQ(s.support(), Support::half_line);
    auto h = hinge_profile(4);
    EXPECT_NEAR(s(1.234), h(1.234), 1e-7);
    EXPECT_NEAR(s.derivative(1, 1.234), h.derivative(1, 1.234), 1e-4);
    EXPECT_NEAR(std::abs(fourier_forward(s, 1.0) - fourier_forward(h, 1.0)), 0.0, 1e-6);
}

TEST(Spectral, FiniteDifferenceProfile)
{
    auto f = function_profile("fd", Support::full_line, [](double x) { return std::exp(-x * x / 2); }, 9.0);
    for (int j = 0; j <= 4; ++j) {
        auto g = gaussian_profile();
        EXPECT_NEAR(f.derivative(j, 0.7), g.derivative(j, 0.7), 1e-4) << j;
    }
}
