#pragma once

#include "flp/dispersion.hpp"
#include "flp/errors.hpp"
#include "flp/quadrature.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace flp {

enum class Support { full_line, half_line };

/// Initial plate shape with derivative access.
class Profile {
public:
    /// derivative(order, x) for order >= 0.
    using Derivative = std::function<double(int, double)>;

    Profile(std::string name, Support support, int hinge_class, Derivative derivative, double extent,
            std::vector<double> hinge_taylor = {}, bool zero = false)
        : name_(std::move(name)), support_(support), hinge_class_(hinge_class),
          derivative_(std::move(derivative)), extent_(extent), hinge_taylor_(std::move(hinge_taylor)), zero_(zero)
    {
        if (!(extent_ > 0.0)) throw InvalidArgument("profile extent must be positive");
    }

    const std::string& name() const { return name_; }
    Support support() const { return support_; }
    int hinge_class() const { return hinge_class_; }
    double extent() const { return extent_; }
    bool is_zero() const { return zero_; }
    /// Derivatives of all orders at x = 0+ (empty when unknown beyond finite differences).
    const std::vector<double>& hinge_taylor() const { return hinge_taylor_; }

    double operator()(double x) const { return zero_ ? 0.0 : derivative_(0, x); }
    double derivative(int order, double x) const { return zero_ ? 0.0 : derivative_(order, x); }

private:
    std::string name_;
    Support support_;
    int hinge_class_;
    Derivative derivative_;
    double extent_;
    std::vector<double> hinge_taylor_;
    bool zero_;
};

namespace detail {

/// Coefficients (ascending) of P_j where d^j/dx^j [x^n e^{-a x^2}] = P_j(x) e^{-a x^2}.
inline std::vector<std::vector<double>> poly_gauss_derivatives(int n, double a, int max_order)
{
    std::vector<std::vector<double>> out;
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p[static_cast<std::size_t>(n)] = 1.0;
    out.push_back(p);
    for (int j = 1; j <= max_order; ++j) {
        std::vector<double> q(p.size() + 1, 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] += static_cast<double>(i) * p[i];
        for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] -= 2.0 * a * p[i];
        p = q;
        out.push_back(p);
    }
    return out;
}

inline double horner(const std::vector<double>& c, double x)
{
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

/// Five-point central differences; steps grow with the order to balance rounding error.
inline double fd_derivative(const std::function<double(double)>& f, int order, double x)
{
    switch (order) {
    case 0:
        return f(x);
    case 1: {
        const double h = 1e-5;
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    }
    case 2: {
        const double h = 1e-3;
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
    }
    case 3: {
        const double h = 5e-3;
        return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    }
    case 4: {
        const double h = 1e-2;
        return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / (h * h * h * h);
    }
    default:
        throw InvalidArgument("finite-difference derivatives are available up to order 4");
    }
}

inline int measured_hinge_class(const Profile::Derivative& d, int max_order = 4)
{
    int s = -1;
    for (int j = 0; j <= max_order; ++j) {
        if (std::abs(d(j, 0.0)) > 1e-10) break;
        s = j;
    }
    return s;
}

}  // namespace detail

/// x^n e^{-a x^2}; on the half line the hinge class is n - 1.
inline Profile poly_gaussian_profile(std::string name, int n, double a, Support support)
{
    constexpr int max_order = 40;
    auto polys = std::make_shared<const std::vector<std::vector<double>>>(detail::poly_gauss_derivatives(n, a, max_order));
    double extent = 1.0;
    while (std::pow(extent, n) * std::exp(-a * extent * extent) > 1e-18) extent += 0.25;
    std::vector<double> taylor;
    for (int j = 0; j <= max_order; ++j) taylor.push_back((*polys)[static_cast<std::size_t>(j)][0]);
    auto d = [polys, a](int order, double x) {
        if (order < 0 || order > max_order) throw InvalidArgument("derivative order out of range");
        return detail::horner((*polys)[static_cast<std::size_t>(order)], x) * std::exp(-a * x * x);
    };
    const int hinge = support == Support::half_line ? n - 1 : -1;
    return Profile(std::move(name), support, hinge, d, extent, taylor);
}

inline Profile gaussian_profile()
{
    return poly_gaussian_profile("gaussian", 0, 0.5, Support::full_line);
}

inline Profile hinge_profile(int n)
{
    return poly_gaussian_profile("hinge" + std::to_string(n), n, 1.0, Support::half_line);
}

inline Profile zero_profile(Support support)
{
    return Profile("zero", support, support == Support::half_line ? 1000 : -1,
                   [](int, double) { return 0.0; }, 1.0, std::vector<double>(41, 0.0), true);
}

/// Profile from a value function; derivatives by finite differences.
inline Profile function_profile(std::string name, Support support, std::function<double(double)> f, double extent)
{
    auto fp = std::make_shared<std::function<double(double)>>(std::move(f));
    Profile::Derivative d = [fp](int order, double x) { return detail::fd_derivative(*fp, order, x); };
    const int hinge = support == Support::half_line ? detail::measured_hinge_class(d) : -1;
    return Profile(std::move(name), support, hinge, d, extent);
}

/// Uniformly sampled profile interpolated by a cubic B-spline; zero outside the sampled range.
inline Profile sampled_profile(std::string name, const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size() || xs.size() < 5) throw InvalidArgument("sampled profile needs >= 5 equal-length columns");
    const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(h > 0.0)) throw InvalidArgument("sampled profile abscissae must increase");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (std::abs((xs[i] - xs[i - 1]) - h) > 1e-8 * std::max(1.0, std::abs(h)))
            throw InvalidArgument("sampled profile abscissae must be uniformly spaced");
    }
    const Support support = xs.front() >= -1e-12 ? Support::half_line : Support::full_line;
    using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
    auto spline = std::make_shared<Spline>(ys.data(), ys.size(), xs.front(), h);
    const double lo = xs.front();
    const double hi = xs.back();
    Profile::Derivative d = [spline, lo, hi](int order, double x) -> double {
        if (x < lo - 1e-12 || x > hi) return 0.0;
        switch (order) {
        case 0: return (*spline)(x);
        case 1: return spline->prime(x);
        case 2: return spline->double_prime(x);
        default: {
            auto f2 = [&](double y) { return spline->double_prime(std::clamp(y, lo, hi)); };
            return detail::fd_derivative(f2, order - 2, x);
        }
        }
    };
    const int hinge = support == Support::half_line ? detail::measured_hinge_class(d, 2) : -1;
    const double extent = std::max(std::abs(lo), std::abs(hi));
    return Profile(std::move(name), support, hinge, d, extent);
}

/// Reads a CSV with header and columns x, eta0.
inline Profile load_profile_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile file: " + path);
    std::string line;
    std::getline(in, line);
    std::vector<double> xs;
    std::vector<double> ys;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0;
        double y = 0.0;
        if (!(row >> x >> y)) throw IoError("malformed profile row: " + line);
        xs.push_back(x);
        ys.push_back(y);
    }
    return sampled_profile(path, xs, ys);
}

/// Bundled profiles: gaussian, zero, zero-half, hinge2..hinge8.
inline Profile profile_by_name(const std::string& name)
{
    if (name == "gaussian") return gaussian_profile();
    if (name == "zero") return zero_profile(Support::full_line);
    if (name == "zero-half") return zero_profile(Support::half_line);
    if (name.rfind("hinge", 0) == 0 && name.size() == 6 && name[5] >= '2' && name[5] <= '8')
        return hinge_profile(name[5] - '0');
    throw InvalidArgument("unknown profile: " + name);
}

struct SpectralGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::string scheme;

    /// Panels of width `panel_width` on [0, k_max]; the first panel is halved `levels` times towards 0.
    static SpectralGrid make(double k_max, double panel_width = 0.1, int levels = 8, double k_min = 1e-6)
    {
        if (!(k_max > panel_width) || !(panel_width > 0.0)) throw InvalidArgument("invalid spectral grid extent");
        SpectralGrid g;
        auto nw = composite_rule(graded_breaks(panel_width, levels, k_max, panel_width));
        g.nodes = std::move(nw.nodes);
        g.weights = std::move(nw.weights);
        g.scheme = "gauss16-graded";
        if (g.nodes.front() < k_min) throw InvalidArgument("spectral grid reaches below k_min");
        return g;
    }

    static SpectralGrid make_for(const PlateParams& p, double panel_width = 0.1, int levels = 8)
    {
        return make(p.k_max(), panel_width, levels, p.k_min());
    }
};

struct FieldSlice {
    std::vector<double> x_nodes;
    std::vector<double> values;
    double time = 0.0;
};

/// (1/sqrt(2 pi)) * integral of e^{-ikx} eta0(x) over the support.
inline cplx fourier_forward(const Profile& profile, cplx k, int x_derivative = 0)
{
    if (profile.is_zero()) return 0.0;
    const double ak = std::abs(k);
    const double width = std::min(0.5, 2.5 / std::max(ak, 1e-300));
    double a = 0.0;
    double b = profile.extent();
    std::vector<double> breaks;
    if (profile.support() == Support::full_line) {
        if (k.imag() != 0.0) throw InvalidArgument("full-line transforms require real k");
        a = -b;
        breaks = uniform_breaks(a, b, static_cast<std::size_t>(std::ceil((b - a) / width)));
    } else {
        if (k.imag() > 1e-14 * std::max(1.0, ak)) throw InvalidArgument("half-line transforms require Im k <= 0");
        if (k.imag() < 0.0) b = std::min(b, 45.0 / -k.imag());
        breaks = {0.0};
        for (int j = 6; j >= 1; --j) breaks.push_back(std::min(b, width * std::ldexp(1.0, -j)));
        const auto n = static_cast<std::size_t>(std::ceil(b / width));
        for (std::size_t i = 1; i <= n; ++i) breaks.push_back(std::max(breaks.back(), b * static_cast<double>(i) / static_cast<double>(n)));
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    }
    const auto nw = composite_rule(breaks);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
        const double x = nw.nodes[i];
        sum += nw.weights[i] * std::exp(-I * k * x) * profile.derivative(x_derivative, x);
    }
    const double edge = std::abs(profile.derivative(x_derivative, profile.extent()));
    if (edge > 1e-13 * std::max(1.0, std::abs(sum)))
        throw NonconvergentQuadrature("profile does not decay within its declared extent");
    return sum / std::sqrt(2.0 * std::numbers::pi);
}

/// Real field (1/sqrt(2 pi)) * int_0^inf (e^{ikx} a(k) + c.c.) dk, with a(k) = (ik)^n eta_hat(k).
inline FieldSlice fourier_inverse_real(const std::vector<cplx>& eta_hat, const SpectralGrid& grid,
                                       const std::vector<double>& x_nodes, double time = 0.0, int x_derivative = 0)
{
    if (eta_hat.size() != grid.nodes.size()) throw InvalidArgument("eta_hat must be sampled on the grid nodes");
    FieldSlice out;
    out.x_nodes = x_nodes;
    out.time = time;
    out.values.assign(x_nodes.size(), 0.0);
    std::vector<cplx> a(eta_hat.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = grid.weights[j] * std::pow(I * grid.nodes[j], x_derivative) * eta_hat[j];
    const double scale = 2.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < x_nodes.size(); ++i) {
        double s = 0.0;
        const double x = x_nodes[i];
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double ph = grid.nodes[j] * x;
            s += a[j].real() * std::cos(ph) - a[j].imag() * std::sin(ph);
        }
        out.values[i] = scale * s;
    }
    return out;
}

inline double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// x-space norm (sum_j C(s,j) ||eta0^(j)||^2)^(1/2) over the support.
inline double sobolev_norm_x(const Profile& profile, int s)
{
    if (profile.is_zero()) return 0.0;
    const double b = profile.extent();
    const double a = profile.support() == Support::full_line ? -b : 0.0;
    const auto nw = composite_rule(uniform_breaks(a, b, static_cast<std::size_t>(std::ceil((b - a) / 0.1))));
    double total = 0.0;
    for (int j = 0; j <= s; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
            const double v = profile.derivative(j, nw.nodes[i]);
            acc += nw.weights[i] * v * v;
        }
        total += binomial(s, j) * acc;
    }
    return std::sqrt(total);
}

/// ||(1+k^2)^{s/2} eta0_hat||_{L^2(R)}, with the half-line profile zero-extended.
inline double sobolev_norm(const Profile& profile, int s)
{
    if (profile.is_zero()) return 0.0;
    const bool half = profile.support() == Support::half_line;
    const double k_cut = half ? 60.0 : 40.0;
    const auto nw = composite_rule(uniform_breaks(0.0, k_cut, static_cast<std::size_t>(k_cut / 0.25)));
    double acc = 0.0;
    for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
        const double k = nw.nodes[i];
        acc += nw.weights[i] * std::pow(1.0 + k * k, s) * std::norm(fourier_forward(profile, k));
    }
    acc *= 2.0;
    if (half) {
        // |eta0_hat| ~ |eta0^(m)(0)| / (sqrt(2 pi) k^(m+1)) with m the first non-vanishing hinge derivative.
        const int m = profile.hinge_class() + 1;
        const double dm = std::abs(profile.derivative(m, 0.0)) / std::sqrt(2.0 * std::numbers::pi);
        const double p = 2.0 * m + 1.0 - 2.0 * s;
        if (p <= 0.0) throw HingeViolation("zero extension is not in the requested Sobolev space");
        acc += 2.0 * dm * dm * std::pow(k_cut, -p) / p;
    }
    return std::sqrt(acc);
}

/// Verifies that derivatives 0..s vanish at the hinge.
inline void check_hinge(const Profile& profile, int s)
{
    if (profile.support() != Support::half_line) throw InvalidArgument("hinge check needs a half-line profile");
    for (int j = 0; j <= s; ++j) {
        if (std::abs(profile.derivative(j, 0.0)) > 1e-10)
            throw HingeViolation("derivative of order " + std::to_string(j) + " does not vanish at the hinge");
    }
}

/// Ratio of the spectral H^s(R) norm of the zero extension to the x-space H^s(R+) norm.
inline double extension_check(const Profile& profile, int s)
{
    check_hinge(profile, s);
    if (profile.is_zero()) return 1.0;
    return sobolev_norm(profile, s) / sobolev_norm_x(profile, s);
}

inline double extension_check(const Profile& profile) { return extension_check(profile, profile.hinge_class()); }

}  // namespace flp
