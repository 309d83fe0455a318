#pragma once

#include "flp/dispersion.hpp"
#include "flp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace flp {

enum class SegmentKind { line, arc, ray };

/// gamma marks pieces lying on the original contour; deformation marks arcs and rays swung off it.
enum class SegmentRole { gamma, deformation };

struct Segment {
    SegmentKind kind = SegmentKind::line;
    SegmentRole role = SegmentRole::gamma;
    /// line: endpoints. ray: start is the origin of the ray.
    cplx start{};
    cplx end{};
    /// arc: radius and angles (traversed from theta0 to theta1). ray: radius is the starting distance, theta0 the direction.
    double radius = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    /// ray only: traversed from infinity towards the starting point.
    bool inward = false;

    static Segment line(cplx a, cplx b, SegmentRole role = SegmentRole::gamma)
    {
        Segment s;
        s.kind = SegmentKind::line;
        s.role = role;
        s.start = a;
        s.end = b;
        return s;
    }
    static Segment arc(double r, double t0, double t1, SegmentRole role = SegmentRole::deformation)
    {
        Segment s;
        s.kind = SegmentKind::arc;
        s.role = role;
        s.radius = r;
        s.theta0 = t0;
        s.theta1 = t1;
        return s;
    }
    static Segment ray(cplx origin, double distance, double theta, bool inward, SegmentRole role = SegmentRole::deformation)
    {
        Segment s;
        s.kind = SegmentKind::ray;
        s.role = role;
        s.start = origin;
        s.radius = distance;
        s.theta0 = theta;
        s.inward = inward;
        return s;
    }

    /// Point where traversal begins (infinity is reported as NaN).
    cplx first_point() const
    {
        switch (kind) {
        case SegmentKind::line: return start;
        case SegmentKind::arc: return std::polar(radius, theta0);
        case SegmentKind::ray:
            return inward ? cplx(std::nan(""), std::nan("")) : start + std::polar(radius, theta0);
        }
        return {};
    }
    cplx last_point() const
    {
        switch (kind) {
        case SegmentKind::line: return end;
        case SegmentKind::arc: return std::polar(radius, theta1);
        case SegmentKind::ray:
            return inward ? start + std::polar(radius, theta0) : cplx(std::nan(""), std::nan(""));
        }
        return {};
    }
};

enum class ContourLabel { gamma, gamma1, gamma2, deformed_ray };

inline std::string to_string(ContourLabel l)
{
    switch (l) {
    case ContourLabel::gamma: return "gamma";
    case ContourLabel::gamma1: return "gamma1";
    case ContourLabel::gamma2: return "gamma2";
    case ContourLabel::deformed_ray: return "deformed-ray";
    }
    return "gamma";
}

struct ContourPath {
    std::vector<Segment> segments;
    ContourLabel label = ContourLabel::gamma;
    /// Traversal direction: from the real end of gamma (w- -> -inf) to its vertical end (w- -> +inf).
    std::string orientation = "real-to-vertical";

    /// Consecutive finite endpoints coincide.
    bool is_connected(double tol = 1e-12) const
    {
        for (std::size_t i = 1; i < segments.size(); ++i) {
            const cplx a = segments[i - 1].last_point();
            const cplx b = segments[i].first_point();
            if (std::isnan(a.real()) || std::isnan(b.real())) return false;
            if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
        }
        return true;
    }

    /// Radius of the deformation arcs (0 when the path has none).
    double deformation_radius() const
    {
        double r = 0.0;
        for (const auto& s : segments)
            if (s.kind == SegmentKind::arc) r = std::max(r, s.radius);
        return r;
    }
};

/// Split radius of the deformed contour: 1 + largest branch-point modulus.
inline double default_split_radius(const PlateParams& p) { return 1.0 + branch_radius(p); }

/// gamma = [1/4, inf) joined to (1/4 - i inf, 1/4], traversed from +inf along the real axis down the vertical line.
inline ContourPath gamma_contour()
{
    ContourPath c;
    c.label = ContourLabel::gamma;
    c.segments.push_back(Segment::ray(0.25, 0.0, 0.0, true, SegmentRole::gamma));
    c.segments.push_back(Segment::ray(0.25, 0.0, -std::numbers::pi / 2, false, SegmentRole::gamma));
    return c;
}

/// gamma inside |k| <= R with its two ends swung onto the rays arg k = pi/4 and arg k = -3pi/4.
inline ContourPath kernel_contour(const PlateParams& p, double R = 0.0)
{
    if (R <= 0.0) R = default_split_radius(p);
    if (!(R > 0.25)) throw InvalidArgument("contour radius must exceed 1/4");
    const double pi = std::numbers::pi;
    const double depth = std::sqrt(R * R - 0.0625);
    const cplx bottom(0.25, -depth);
    ContourPath c;
    c.label = ContourLabel::deformed_ray;
    c.segments.push_back(Segment::ray(0.0, R, pi / 4, true));
    c.segments.push_back(Segment::arc(R, pi / 4, 0.0));
    c.segments.push_back(Segment::line(R, 0.25));
    c.segments.push_back(Segment::line(0.25, bottom));
    c.segments.push_back(Segment::arc(R, std::arg(bottom), -3 * pi / 4));
    c.segments.push_back(Segment::ray(0.0, R, -3 * pi / 4, false));
    return c;
}

/// gamma truncated to |k| <= R (no deformation).
inline ContourPath truncated_gamma(double R)
{
    ContourPath c;
    c.label = ContourLabel::gamma;
    c.segments.push_back(Segment::line(R, 0.25));
    c.segments.push_back(Segment::line(0.25, cplx(0.25, -std::sqrt(R * R - 0.0625))));
    return c;
}

struct QuadratureHints {
    /// t in e^{-i w t}; sets ray truncation and the oscillation rate (2|k| + 1) t.
    double time = 0.0;
    /// Additional oscillation rate in radians per unit length.
    double extra_rate = 0.0;
    /// Algebraic scale on the rays when there is no time decay.
    double ray_scale = 1.0;
    /// Multiplies all panel counts.
    double resolution = 1.0;
};

struct PathNode {
    cplx k;
    /// Includes orientation and Jacobian: the integral is sum f(k) * w.
    cplx w;
    SegmentRole role;
};

namespace detail {

inline std::size_t panel_count(double length, double rate, double resolution)
{
    const double n = std::max(2.0, length * rate / 3.0) * resolution;
    return static_cast<std::size_t>(std::ceil(n));
}

inline double oscillation_rate(double modulus, const QuadratureHints& h)
{
    return (2.0 * modulus + 1.0) * h.time + h.extra_rate + 1.0;
}

/// Line p -> q; with sqrt_at_start the map k = p + (q - p) u^2 removes a square-root singularity at p.
inline void append_line(std::vector<PathNode>& out, cplx p, cplx q, bool sqrt_at_start, double sign, SegmentRole role,
                        const QuadratureHints& h)
{
    const double L = std::abs(q - p);
    if (L == 0.0) return;
    const double rate = oscillation_rate(std::max(std::abs(p), std::abs(q)), h);
    const auto n = panel_count(sqrt_at_start ? 2.0 * L : L, rate, h.resolution);
    const auto nw = composite_rule(uniform_breaks(0.0, 1.0, n));
    for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
        const double u = nw.nodes[i];
        if (sqrt_at_start)
            out.push_back({p + (q - p) * u * u, sign * (q - p) * 2.0 * u * nw.weights[i], role});
        else
            out.push_back({p + (q - p) * u, sign * (q - p) * nw.weights[i], role});
    }
}

inline void append_ray(std::vector<PathNode>& out, const Segment& s, const QuadratureHints& h)
{
    const cplx dir = std::polar(1.0, s.theta0);
    const double sign = s.inward ? -1.0 : 1.0;
    const double rho0 = s.radius;
    const double t = h.time;
    std::vector<double> breaks{rho0};
    const bool tail = !(t > 0.0);
    double rho_end = std::sqrt(rho0 * rho0 + 46.0 / t) + 1.0;
    if (tail) rho_end = 20.0 * std::max({rho0, h.ray_scale, 1.0});
    const double first = std::max(rho0, 0.5);
    double pos = rho0;
    while (pos < rho_end) {
        double w = 0.3 * std::max(pos, first) / h.resolution;
        if (t > 0.0) w = std::min(w, 4.0 / (std::max(pos, 1.0) * t * h.resolution));
        if (h.extra_rate > 0.0) w = std::min(w, 3.0 / (h.extra_rate * h.resolution));
        pos = std::min(rho_end, pos + w);
        breaks.push_back(pos);
    }
    const auto nw = composite_rule(breaks);
    for (std::size_t i = 0; i < nw.nodes.size(); ++i)
        out.push_back({s.start + nw.nodes[i] * dir, sign * dir * nw.weights[i], s.role});
    if (tail) {
        // rho = rho_end / u on (0, 1].
        const auto tw = composite_rule(uniform_breaks(0.0, 1.0, static_cast<std::size_t>(std::ceil(4 * h.resolution))));
        for (std::size_t i = 0; i < tw.nodes.size(); ++i) {
            const double u = tw.nodes[i];
            const double rho = rho_end / u;
            out.push_back({s.start + rho * dir, sign * dir * (rho_end / (u * u)) * tw.weights[i], s.role});
        }
    }
}

}  // namespace detail

/// Quadrature nodes along the path. Real line pieces passing through the real branch point are split there and
/// mapped so the square-root behaviour of the roots is integrated smoothly.
inline std::vector<PathNode> discretise(const ContourPath& path, const PlateParams& p, const QuadratureHints& h)
{
    const double r = real_branch_point(p);
    std::vector<PathNode> out;
    for (const auto& s : path.segments) {
        switch (s.kind) {
        case SegmentKind::line: {
            const bool real = s.start.imag() == 0.0 && s.end.imag() == 0.0;
            const double lo = std::min(s.start.real(), s.end.real());
            const double hi = std::max(s.start.real(), s.end.real());
            if (real && lo < r && r < hi) {
                // a -> r is integrated as -(r -> a).
                detail::append_line(out, r, s.start, true, -1.0, s.role, h);
                detail::append_line(out, r, s.end, true, 1.0, s.role, h);
            } else {
                detail::append_line(out, s.start, s.end, false, 1.0, s.role, h);
            }
            break;
        }
        case SegmentKind::arc: {
            const double L = s.radius * std::abs(s.theta1 - s.theta0);
            const auto n = detail::panel_count(L, detail::oscillation_rate(s.radius, h), h.resolution);
            const auto nw = composite_rule(uniform_breaks(s.theta0, s.theta1, n));
            for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
                const cplx k = std::polar(s.radius, nw.nodes[i]);
                out.push_back({k, I * k * nw.weights[i], s.role});
            }
            break;
        }
        case SegmentKind::ray:
            detail::append_ray(out, s, h);
            break;
        }
    }
    return out;
}

/// w- and dw-/dk at every node (no exclusion test: nodes never sit on a branch point).
struct PathDispersion {
    std::vector<cplx> omega_minus;
    std::vector<cplx> d_omega_minus;
};

inline PathDispersion path_dispersion(const std::vector<PathNode>& nodes, const PlateParams& p)
{
    const PlateParams open(p.U(), p.tol_root(), p.k_min(), p.k_max(), 0.0);
    PathDispersion d;
    d.omega_minus.reserve(nodes.size());
    d.d_omega_minus.reserve(nodes.size());
    for (const auto& n : nodes) {
        d.omega_minus.push_back(omega_pm(n.k, open).second);
        d.d_omega_minus.push_back(omega_pm_derivative(n.k, open).second);
    }
    return d;
}

/// Distance from the path's finite pieces to the nearest nonzero branch point other than the real one on gamma.
inline void check_contour(const ContourPath& path, const PlateParams& p)
{
    const auto bs = branch_points(p);
    for (const auto& s : path.segments) {
        if (s.kind == SegmentKind::arc) {
            for (std::size_t i = 1; i < bs.branch_points.size(); ++i)
                if (std::abs(std::abs(bs.branch_points[i]) - s.radius) < p.exclusion_radius())
                    throw BranchPointProximity("contour arc passes through a branch point");
            if (s.radius <= branch_radius(p))
                throw InvalidArgument("deformation arcs must enclose every branch point");
        }
    }
    if (std::abs(real_branch_point(p) - 0.25) < p.exclusion_radius())
        throw BranchPointProximity("real branch point coincides with the corner of gamma");
}

}  // namespace flp
