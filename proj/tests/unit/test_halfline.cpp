#include "flp/halfline.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace flp;

namespace {

BoundaryTraces smooth_traces(std::size_t N, double T)
{
    BoundaryTraces tr;
    for (std::size_t n = 0; n <= N; ++n) {
        const double t = T * static_cast<double>(n) / static_cast<double>(N);
        tr.t_nodes.push_back(t);
        tr.eta_xx0.push_back(cplx(0.3 * t * t, -0.1 * t));
        tr.eta_xxx0.push_back(cplx(std::sin(3.0 * t) * t, 0.0));
    }
    return tr;
}

}  // namespace

TEST(HalfLine, ZeroTracesReduceToFullLine)
{
    PlateParams p(1.0);
    const auto grid = SpectralGrid::make(20.0, 0.25);
    const auto prof = hinge_profile(4);
    std::vector<cplx> e0(grid.nodes.size());
    for (std::size_t j = 0; j < e0.size(); ++j) e0[j] = fourier_forward(prof, grid.nodes[j]);
    const FullLineSolution full(p, grid, e0);
    const auto tr = BoundaryTraces::zero(uniform_times(2.0, 100, true));
    for (double t : {0.0, 0.5, 2.0})
        for (std::size_t j = 0; j < e0.size(); j += 13)
            EXPECT_LE(std::abs(global_relation_eta_hat(grid.nodes[j], t, tr, e0[j], p) - full.eta_hat(j, t)), 1e-13);
}

TEST(HalfLine, ConstantTraceMatchesClosedForm)
{
    BoundaryTraces tr;
    tr.t_nodes = {0.0, 0.4, 1.0};
    tr.eta_xx0 = {0.5, 0.5, 0.5};
    tr.eta_xxx0 = {2.0, 2.0, 2.0};
    const cplx k(1.5, -0.2), w(0.7, 0.3);
    const cplx f = 2.0 + I * k * 0.5;
    for (double t : {0.2, 0.4, 0.9}) {
        const cplx exact = f * (std::exp(I * w * t) - 1.0) / (I * w);
        EXPECT_LE(std::abs(F_t(w, k, tr, t) - exact), 1e-13);
    }
}

TEST(HalfLine, LinearTraceMatchesClosedForm)
{
    BoundaryTraces tr;
    tr.t_nodes = {0.0, 1.0};
    tr.eta_xx0 = {0.0, 0.0};
    tr.eta_xxx0 = {0.0, 1.0};
    const cplx w(3.0, 0.0);
    const double t = 1.0;
    // int_0^1 tau e^{i w tau} dtau
    const cplx exact = std::exp(I * w * t) * (t / (I * w) + 1.0 / (w * w)) - 1.0 / (w * w);
    EXPECT_LE(std::abs(F_t(w, 1.0, tr, t) - exact), 1e-14);
}

TEST(HalfLine, CumulativeMatchesPointwise)
{
    const auto tr = smooth_traces(50, 1.0);
    const cplx w(10.0, -0.5), k(2.0, -0.1);
    const auto all = F_t_cumulative(w, k, tr);
    for (std::size_t n = 0; n < tr.t_nodes.size(); n += 7) EXPECT_LE(std::abs(all[n] - F_t(w, k, tr, tr.t_nodes[n])), 1e-13);
}

TEST(HalfLine, UnderResolvedOscillationIsReported)
{
    const auto tr = smooth_traces(10, 1.0);
    EXPECT_THROW(F_t(cplx(5000.0), 1.0, tr, 1.0), UnderResolvedOscillation);
    EXPECT_NO_THROW(F_t(cplx(5000.0), 1.0, tr, 1.0, 1e4));
}

TEST(HalfLine, ForcedOdeResidual)
{
    // (1 + 1/k) y'' + 2iU y' + (k^4 - U^2 k) y = (eta_xxx + i k eta_xx) / sqrt(2 pi), checked by central differences.
    PlateParams p(1.0);
    const std::size_t N = 1000;
    const auto tr = smooth_traces(N, 1.0);
    for (cplx k : {cplx(0.7), cplx(2.0), cplx(1.5, -0.5), cplx(3.0, -1.0)}) {
        const double U = p.U();
        const cplx e0 = 0.3 - 0.1 * I;
        const double t = 0.5005, h = 1e-4;
        auto E = [&](double s) { return global_relation_eta_hat(k, s, tr, e0, p); };
        const cplx y = E(t), y1 = (E(t + h) - E(t - h)) / (2 * h), y2 = (E(t + h) - 2.0 * y + E(t - h)) / (h * h);
        const cplx f = (cplx(std::sin(3.0 * t) * t) + I * k * cplx(0.3 * t * t, -0.1 * t)) / std::sqrt(2 * std::numbers::pi);
        const cplx res = (1.0 + 1.0 / k) * y2 + 2.0 * I * U * y1 + (std::pow(k, 4) - U * U * k) * y - f;
        EXPECT_LE(std::abs(res), 1e-5 * (1.0 + std::abs(std::pow(k, 4) * y))) << "k=" << k;
    }
}

TEST(HalfLine, InitialValueIsData)
{
    PlateParams p(1.0);
    const auto tr = smooth_traces(100, 1.0);
    const cplx k(2.0, -0.3), e0(0.4, 0.2);
    EXPECT_LE(std::abs(global_relation_eta_hat(k, 0.0, tr, e0, p) - e0), 1e-15);
}

TEST(HalfLine, SurfacePotentialRelationDomain)
{
    PlateParams p(1.0);
    EXPECT_THROW(surface_potential_relation(1.0, 1.0, cplx(1.0, 0.5), p), InvalidArgument);
    EXPECT_THROW(surface_potential_relation(1.0, 1.0, cplx(-1.0, -0.5), p), InvalidArgument);
    EXPECT_THROW(surface_potential_relation(1.0, 1.0, cplx(0.0), p), InvalidArgument);
    const cplx k(2.0, -1.0);
    EXPECT_LE(std::abs(surface_potential_relation(0.5, 0.25, k, p) - (0.25 / k + I * p.U() * 0.5)), 1e-15);
}

TEST(HalfLine, TraceValidation)
{
    BoundaryTraces tr;
    tr.t_nodes = {0.1, 0.2};
    tr.eta_xx0 = {0.0, 0.0};
    tr.eta_xxx0 = {0.0, 0.0};
    EXPECT_THROW(tr.validate(), InvalidArgument);
    tr.t_nodes = {0.0, 0.2, 0.1};
    tr.eta_xx0 = tr.eta_xxx0 = {0.0, 0.0, 0.0};
    EXPECT_THROW(tr.validate(), InvalidArgument);
}

namespace {

HalfLineOptions small_options()
{
    HalfLineOptions o;
    o.N = 200;
    o.output_times = {0.0, 0.5, 1.0};
    o.x_nodes = {0.0, 0.5, 1.0, 2.0};
    return o;
}

}  // namespace

TEST(HalfLineSolver, ZeroDataGivesZero)
{
    PlateParams p(1.0);
    const auto o = small_options();
    TraceClosure c;
    c.eta_xxx0 = std::vector<cplx>(o.N + 1, 0.0);
    const auto sol = solve_half_line(zero_profile(Support::half_line), p, SpectralGrid::make(10.0, 0.5), c, o);
    for (const auto& f : sol.field)
        for (double v : f.values) EXPECT_EQ(v, 0.0);
    for (const auto& v : sol.traces.eta_xx0) EXPECT_EQ(std::abs(v), 0.0);
}

TEST(HalfLineSolver, RejectsLowHingeClass)
{
    PlateParams p(1.0);
    TraceClosure c;
    c.eta_xxx0 = std::vector<cplx>(201, 0.0);
    EXPECT_THROW(solve_half_line(hinge_profile(3), p, SpectralGrid::make(10.0, 0.5), c, small_options()), HingeViolation);
}

TEST(HalfLineSolver, MissingTraceIsClosureUnavailable)
{
    PlateParams p(1.0);
    TraceClosure c;
    c.policy = ClosurePolicy::given_xx;
    EXPECT_THROW(solve_half_line(hinge_profile(4), p, SpectralGrid::make(10.0, 0.5), c, small_options()), ClosureUnavailable);
    EXPECT_THROW(closure_from_string("both"), InvalidArgument);
}

TEST(HalfLineSolver, ClosurePoliciesAgree)
{
    PlateParams p(1.0);
    const auto o = small_options();
    const auto grid = SpectralGrid::make(10.0, 0.5);
    TraceClosure a;
    std::vector<cplx> xxx(o.N + 1);
    for (std::size_t n = 0; n <= o.N; ++n) xxx[n] = std::sin(2.0 * n / static_cast<double>(o.N)) * (n / static_cast<double>(o.N));
    a.eta_xxx0 = xxx;
    const auto sa = solve_half_line(hinge_profile(4), p, grid, a, o);

    TraceClosure b;
    b.policy = ClosurePolicy::given_xx;
    b.eta_xx0 = sa.traces.eta_xx0;
    const auto sb = solve_half_line(hinge_profile(4), p, grid, b, o);
    double d = 0.0;
    for (std::size_t n = 0; n <= o.N; ++n) d = std::max(d, std::abs(sb.traces.eta_xxx0[n] - xxx[n]));
    EXPECT_LE(d, 1e-3);

    TraceClosure c;
    c.policy = ClosurePolicy::free_edge_zero;
    c.eta_xx0 = sa.traces.eta_xx0;
    c.eta_xxx0 = xxx;
    EXPECT_LE(solve_half_line(hinge_profile(4), p, grid, c, o).consistency_residual, 1e-12);
    auto off = sa.traces.eta_xx0;
    for (auto& v : off) v += 0.1;
    c.eta_xx0 = off;
    EXPECT_GT(solve_half_line(hinge_profile(4), p, grid, c, o).consistency_residual, 0.5);
}

TEST(HalfLineSolver, FieldAtTimeZeroIsProfile)
{
    PlateParams p(1.0);
    auto o = small_options();
    o.output_times = {0.0};
    o.x_nodes = {0.5, 1.0, 1.5};
    TraceClosure c;
    c.eta_xxx0 = std::vector<cplx>(o.N + 1, 0.0);
    const auto prof = hinge_profile(4);
    const auto sol = solve_half_line(prof, p, SpectralGrid::make(40.0, 0.25), c, o);
    for (std::size_t i = 0; i < o.x_nodes.size(); ++i) {
        const double x = o.x_nodes[i];
        EXPECT_NEAR(sol.field[0].values[i], std::pow(x, 4) * std::exp(-x * x), 1e-5);
    }
}
