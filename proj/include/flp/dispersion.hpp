#pragma once

#include "flp/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace flp {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

class PlateParams {
public:
    explicit PlateParams(double U, double tol_root = 1e-12, double k_min = 1e-6, double k_max = 10.0,
                         double exclusion_radius = 1e-3)
        : U_(U), tol_root_(tol_root), k_min_(k_min), k_max_(k_max), exclusion_radius_(exclusion_radius)
    {
        if (!(U > 0.0) || !std::isfinite(U)) throw InvalidArgument("U must be positive and finite");
        if (!(tol_root > 0.0)) throw InvalidArgument("tol_root must be positive");
        if (!(k_min > 0.0) || !(k_min < k_max)) throw InvalidArgument("require 0 < k_min < k_max");
        if (!(exclusion_radius >= 0.0)) throw InvalidArgument("exclusion radius must be non-negative");
    }

    double U() const { return U_; }
    double tol_root() const { return tol_root_; }
    double k_min() const { return k_min_; }
    double k_max() const { return k_max_; }
    double exclusion_radius() const { return exclusion_radius_; }

private:
    double U_;
    double tol_root_;
    double k_min_;
    double k_max_;
    double exclusion_radius_;
};

struct DispersionData {
    cplx k;
    cplx omega_plus;
    cplx omega_minus;
    cplx c_plus;
    cplx c_minus;
    cplx alpha;
};

/// Polyline approximating one branch cut.
struct CutPolyline {
    std::vector<cplx> points;
};

struct BranchStructure {
    /// k = 0 first, then the real cubic root, then the remaining two roots.
    std::vector<cplx> branch_points;
    std::vector<CutPolyline> cuts;
};

/// Side of the segment (0, r) of the real axis from which real k are evaluated.
enum class RootBranch { lower_side, upper_side };

/// D(k, w) = -(1 + 1/k) w^2 + 2 U w + (k^4 - U^2 k).
inline cplx dispersion_residual(cplx k, cplx omega, const PlateParams& p)
{
    if (k == cplx(0.0)) throw InvalidArgument("dispersion_residual: k = 0");
    const double U = p.U();
    return -(1.0 + 1.0 / k) * omega * omega + 2.0 * U * omega + (k * k * k * k - U * U * k);
}

namespace detail {

/// Roots of (1 + s) k^3 + k^2 - U^2 = 0: the positive real root first, then the other two
/// (the one with non-negative imaginary part first).
inline std::array<cplx, 3> cubic_roots(double U, double s = 0.0)
{
    const double a = 1.0 + s;
    auto f = [&](double k) { return (a * k + 1.0) * k * k - U * U; };
    double lo = 0.0;
    double hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid; else hi = mid;
        if (hi - lo <= 1e-17 * hi) break;
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double fp = 3.0 * a * r * r + 2.0 * r;
        const double step = f(r) / fp;
        if (!std::isfinite(step)) break;
        r -= step;
    }
    // (a k^3 + k^2 - U^2) = (k - r)(a k^2 + b k + c)
    const double b = 1.0 + a * r;
    const double c = b * r;
    const double disc = b * b - 4.0 * a * c;
    cplx q1;
    cplx q2;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double t = -0.5 * (b + sq);
        q1 = t / a;
        q2 = c / t;
    } else {
        const double sq = std::sqrt(-disc);
        q1 = cplx(-b / (2.0 * a), sq / (2.0 * a));
        q2 = std::conj(q1);
    }
    return {cplx(r), q1, q2};
}

}  // namespace detail

inline BranchStructure branch_points(const PlateParams& p)
{
    BranchStructure out;
    const auto roots = detail::cubic_roots(p.U());
    out.branch_points = {cplx(0.0), roots[0], roots[1], roots[2]};
    // Cuts of the principal square root: w(k) = -s for s >= 0, traced from each root (s = 0) to k = 0.
    constexpr int samples = 96;
    out.cuts.resize(3);
    for (int j = 0; j <= samples; ++j) {
        const double u = static_cast<double>(j) / samples;
        const auto pts = u < 1.0 ? detail::cubic_roots(p.U(), std::pow(u / (1.0 - u), 3.0)) : std::array<cplx, 3>{};
        for (int c = 0; c < 3; ++c) out.cuts[c].points.push_back(pts[c]);
    }
    return out;
}

/// Largest branch-point modulus.
inline double branch_radius(const PlateParams& p)
{
    double m = 0.0;
    for (const auto& b : detail::cubic_roots(p.U())) m = std::max(m, std::abs(b));
    return m;
}

/// The positive real branch point r with r^3 + r^2 = U^2.
inline double real_branch_point(const PlateParams& p)
{
    return detail::cubic_roots(p.U())[0].real();
}

namespace detail {

inline void check_exclusion(cplx k, const PlateParams& p)
{
    if (k == cplx(0.0)) throw InvalidArgument("k = 0 is a branch point");
    if (p.exclusion_radius() <= 0.0) return;
    for (const auto& b : cubic_roots(p.U())) {
        if (std::abs(k - b) < p.exclusion_radius())
            throw BranchPointProximity("k lies within the exclusion radius of a branch point");
    }
    if (std::abs(k) < p.exclusion_radius() * 1e-3)
        throw BranchPointProximity("k lies too close to the branch point k = 0");
}

/// S(k) = k^2 sqrt(1 + 1/k - U^2/k^3), principal root, with real k on (0, r) taken from the chosen side.
inline cplx root_S(cplx k, double U, RootBranch branch)
{
    const cplx w = 1.0 + 1.0 / k - U * U / (k * k * k);
    cplx sq;
    if (k.imag() == 0.0 && k.real() > 0.0 && w.real() < 0.0) {
        const double m = std::sqrt(-w.real());
        sq = branch == RootBranch::lower_side ? cplx(0.0, -m) : cplx(0.0, m);
    } else {
        sq = std::sqrt(w);
    }
    return k * k * sq;
}

}  // namespace detail

/// Roots (w+, w-) of the dispersion relation.
inline std::pair<cplx, cplx> omega_pm(cplx k, const PlateParams& p, RootBranch branch = RootBranch::lower_side)
{
    detail::check_exclusion(k, p);
    const double U = p.U();
    const cplx S = detail::root_S(k, U, branch);
    const cplx f = k / (k + 1.0);
    return {(U + S) * f, (U - S) * f};
}

/// Derivatives (dw+/dk, dw-/dk).
inline std::pair<cplx, cplx> omega_pm_derivative(cplx k, const PlateParams& p,
                                                 RootBranch branch = RootBranch::lower_side)
{
    detail::check_exclusion(k, p);
    const double U = p.U();
    const cplx S = detail::root_S(k, U, branch);
    const cplx dS = (4.0 * k * k * k + 3.0 * k * k - U * U) / (2.0 * S);
    const cplx kp1 = k + 1.0;
    const cplx den = kp1 * kp1;
    return {((U + S) + k * kp1 * dS) / den, ((U - S) - k * kp1 * dS) / den};
}

inline DispersionData coefficients(cplx k, cplx eta0_hat, const PlateParams& p,
                                   RootBranch branch = RootBranch::lower_side)
{
    const auto [wp, wm] = omega_pm(k, p, branch);
    const cplx k4 = k * k * k * k;
    const cplx den = wm * wm - wp * wp;
    if (std::abs(den) < 1e-12 * (1.0 + std::abs(k4)))
        throw DegenerateRoots("coefficients: the two dispersion roots coincide");
    DispersionData d;
    d.k = k;
    d.omega_plus = wp;
    d.omega_minus = wm;
    d.c_plus = (wm * wm - k4) / den * eta0_hat;
    d.c_minus = -(wp * wp - k4) / den * eta0_hat;
    d.alpha = 1.0 / (I * (wm - wp));
    return d;
}

/// Large-|k| form +-k^2 -+ k/2 + (U +- 3/8).
inline cplx asymptotic_omega(cplx k, const PlateParams& p, int sign)
{
    const double s = sign >= 0 ? 1.0 : -1.0;
    return s * k * k - s * k / 2.0 + (p.U() + s * 0.375);
}

}  // namespace flp
