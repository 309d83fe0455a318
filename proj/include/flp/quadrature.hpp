#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace flp {

/// Gauss-Legendre rule with 16 nodes on [-1, 1].
struct GaussRule {
    static constexpr std::size_t order = 16;
    std::array<double, order> x{};
    std::array<double, order> w{};

    static const GaussRule& get()
    {
        static const GaussRule rule = [] {
            using G = boost::math::quadrature::gauss<double, order>;
            GaussRule r;
            const auto& a = G::abscissa();
            const auto& wt = G::weights();
            const std::size_t half = order / 2;
            for (std::size_t i = 0; i < half; ++i) {
                r.x[half - 1 - i] = -a[i];
                r.w[half - 1 - i] = wt[i];
                r.x[half + i] = a[i];
                r.w[half + i] = wt[i];
            }
            return r;
        }();
        return rule;
    }
};

struct NodesWeights {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Appends Gauss-Legendre nodes for [a, b] to out.
inline void append_panel(NodesWeights& out, double a, double b)
{
    const auto& g = GaussRule::get();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    for (std::size_t i = 0; i < GaussRule::order; ++i) {
        out.nodes.push_back(c + h * g.x[i]);
        out.weights.push_back(h * g.w[i]);
    }
}

/// Composite rule over consecutive panel boundaries.
inline NodesWeights composite_rule(const std::vector<double>& breaks)
{
    NodesWeights out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) append_panel(out, breaks[i], breaks[i + 1]);
    return out;
}

/// Breaks on [a, b] with n equal panels.
inline std::vector<double> uniform_breaks(double a, double b, std::size_t n)
{
    if (n == 0) n = 1;
    std::vector<double> br(n + 1);
    for (std::size_t i = 0; i <= n; ++i) br[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    br[n] = b;
    return br;
}

/// Breaks on [0, b] halving geometrically towards 0 for `levels` panels below `first`, uniform afterwards.
inline std::vector<double> graded_breaks(double first, int levels, double b, double width)
{
    std::vector<double> br{0.0};
    for (int j = levels; j >= 1; --j) br.push_back(first * std::ldexp(1.0, -j));
    br.push_back(first);
    double pos = first;
    const auto n = static_cast<std::size_t>(std::ceil((b - first) / width - 1e-12));
    for (std::size_t i = 1; i <= n; ++i) {
        pos = first + (b - first) * static_cast<double>(i) / static_cast<double>(n);
        br.push_back(pos);
    }
    return br;
}

}  // namespace flp
