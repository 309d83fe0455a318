#include "flp/kernel.hpp"
#include "flp/volterra.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace flp;

TEST(Contour, KernelPathIsConnectedAndOriented)
{
    for (double U : {0.5, 1.0, 2.0}) {
        PlateParams p(U);
        const auto c = kernel_contour(p);
        EXPECT_TRUE(c.is_connected());
        EXPECT_EQ(c.orientation, "real-to-vertical");
        EXPECT_NO_THROW(check_contour(c, p));
        EXPECT_GT(c.deformation_radius(), branch_radius(p));
    }
}

TEST(Contour, RejectsRadiusInsideQuarter)
{
    PlateParams p(1.0);
    EXPECT_THROW(kernel_contour(p, 0.2), InvalidArgument);
}

TEST(Contour, RealBranchPointIsOnGamma)
{
    // The real branch point solves k^3 + k^2 = U^2.
    for (double U : {0.5, 1.0, 2.0}) {
        PlateParams p(U);
        const double r = real_branch_point(p);
        EXPECT_NEAR(r * r * r + r * r, U * U, 1e-12);
    }
}

TEST(Kernel, PhaseMomentMatchesAdaptiveQuadrature)
{
    using boost::math::quadrature::gauss_kronrod;
    for (int m : {0, 1, 2}) {
        for (cplx a : {cplx(0.0), cplx(1e-9, 0.0), cplx(0.3, -2.0), cplx(0.0, 40.0), cplx(-3.0, 150.0)}) {
            auto re = [&](double s) { return (std::pow(s, m) * std::exp(a * s)).real(); };
            auto im = [&](double s) { return (std::pow(s, m) * std::exp(a * s)).imag(); };
            const cplx ref(gauss_kronrod<double, 61>::integrate(re, 0.0, 1.0, 8, 1e-13),
                           gauss_kronrod<double, 61>::integrate(im, 0.0, 1.0, 8, 1e-13));
            EXPECT_LE(std::abs(phase_moment(m, a) - ref), 1e-12) << "m=" << m << " a=" << a;
        }
    }
}

TEST(Kernel, WeakSingularityConstant)
{
    // Near t = 0 the large-|k| part dominates: sqrt(t) K(t) -> 2 sqrt(pi) e^{i pi/4}.
    PlateParams p(1.0);
    const auto c = kernel_contour(p);
    const cplx limit = 2.0 * std::sqrt(std::numbers::pi) * std::exp(I * std::numbers::pi / 4.0);
    EXPECT_LE(std::abs(std::sqrt(1e-8) * kernel_value(c, p, 1e-8) - limit), 1e-3);
    double sup = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double t = std::pow(10.0, -6.0 * (1.0 - i / 200.0));
        sup = std::max(sup, std::sqrt(t) * std::abs(kernel_value(c, p, t)));
    }
    EXPECT_TRUE(std::isfinite(sup));
    EXPECT_LT(sup, 10.0);
}

TEST(Kernel, DeformationIndependence)
{
    for (double U : {0.5, 1.0, 2.0}) {
        PlateParams p(U);
        const auto c1 = kernel_contour(p);
        const auto c2 = kernel_contour(p, 3.0 * default_split_radius(p));
        for (double t : {0.1, 0.3, 0.7, 1.0}) {
            const cplx a = kernel_value(c1, p, t);
            const cplx b = kernel_value(c2, p, t, 2.0);
            EXPECT_LE(std::abs(a - b), 1e-6 * std::abs(a)) << "U=" << U << " t=" << t;
        }
    }
}

TEST(Kernel, ResolutionIndependenceAtSmallTimes)
{
    PlateParams p(1.0);
    const auto c = kernel_contour(p);
    for (double t : {1e-6, 1e-4, 1e-2}) {
        const cplx a = kernel_value(c, p, t);
        EXPECT_LE(std::abs(a - kernel_value(c, p, t, 3.0)), 1e-9 * std::abs(a));
    }
}

TEST(Kernel, DeltaIdentityReproducesTestFunction)
{
    PlateParams p(1.0);
    const auto g = truncated_gamma(12.0);
    auto f = [](double tau) { return std::exp(-25.0 * (tau - 1.0) * (tau - 1.0)); };
    for (double t : {0.8, 1.0, 1.3}) {
        const cplx d = delta_identity_check(g, p, f, t);
        EXPECT_LE(std::abs(d - f(t)), 1e-3) << "t=" << t;
    }
}

TEST(Kernel, ConvolutionWeightsMatchDirectIntegral)
{
    PlateParams p(1.0);
    const auto c = kernel_contour(p);
    const std::size_t N = 200;
    const auto cw = kernel_convolution_weights(c, p, 1.0 / N, N);
    std::vector<cplx> th(N + 1);
    for (std::size_t n = 0; n <= N; ++n) th[n] = std::pow(static_cast<double>(n) / N, 2);
    const auto r = convolve(cw, th);
    // int_0^T K(tau) (T - tau)^2 dtau with tau = u^2 to remove the endpoint singularity.
    for (double T : {0.25, 1.0}) {
        const auto nw = composite_rule(uniform_breaks(0.0, std::sqrt(T), 64));
        cplx s = 0.0;
        for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
            const double u = nw.nodes[i];
            s += nw.weights[i] * 2.0 * u * kernel_value(c, p, u * u) * std::pow(T - u * u, 2);
        }
        EXPECT_LE(std::abs(r[static_cast<std::size_t>(T * N)] - s), 1e-10);
    }
}

TEST(Forcing, HingeClassThreeVanishesAtZero)
{
    PlateParams p(1.0);
    const auto tab = compute_g(hinge_profile(4), p, forcing_contour(p), {0.0, 0.1, 0.5});
    EXPECT_LE(std::abs(tab.g_values[0]), 1e-6);
    EXPECT_GT(std::abs(tab.g_values[1]), 1e-2);
}

TEST(Forcing, HingeClassTwoDoesNotVanishAtZero)
{
    PlateParams p(1.0);
    const auto tab = compute_g(hinge_profile(3), p, forcing_contour(p), {0.0});
    EXPECT_GT(std::abs(tab.g_values[0]), 1.0);
}

TEST(Forcing, TailRadiusAndResolutionIndependence)
{
    PlateParams p(1.0);
    const std::vector<double> ts{0.0, 0.01, 0.2, 1.0};
    const auto a = compute_g(hinge_profile(4), p, forcing_contour(p), ts);
    ForcingOptions o;
    o.resolution = 2.0;
    o.tail_radius = 25.0;
    const auto b = compute_g(hinge_profile(4), p, forcing_contour(p, 25.0), ts, o);
    for (std::size_t i = 0; i < ts.size(); ++i)
        EXPECT_LE(std::abs(a.g_values[i] - b.g_values[i]), 1e-8 * std::max(1.0, std::abs(a.g_values[i])));
}

TEST(Forcing, ZeroProfileGivesZero)
{
    PlateParams p(1.0);
    const auto tab = compute_g(zero_profile(Support::half_line), p, forcing_contour(p), {0.0, 0.5});
    for (const auto& v : tab.g_values) EXPECT_EQ(std::abs(v), 0.0);
}

TEST(Forcing, RejectsFullLineProfile)
{
    PlateParams p(1.0);
    EXPECT_THROW(compute_g(gaussian_profile(), p, forcing_contour(p), {0.0}), InvalidArgument);
}
