#include "quadmoduli/fibers.hpp"

#include "quadmoduli/cones.hpp"
#include "quadmoduli/dihedral.hpp"
#include "quadmoduli/height.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <tuple>
#include <array>
#include <limits>

namespace quadmoduli {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double slack_tol = 4e-14;
constexpr int scan_samples = 400;

void require_level(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw Error(ErrorKind::Domain, "level must satisfy 0 < s < 1");
}

double wrap_positive(double a) {
    a = std::fmod(a, 2.0 * pi);
    return a < 0 ? a + 2.0 * pi : a;
}

// How far [0, 1, z3, z4] is from violating the level-s conditions with the first side longest.
// Individual constraints; a point is admissible when all are >= 0.
std::array<double, 12> constraints(Complex z3, Complex z4, double s) {
    const Complex z1(0, 0), z2(1, 0);
    std::array<double, 12> c{};
    c[0] = 1.0 - std::abs(z3 - z2);
    c[1] = 1.0 - std::abs(z4 - z3);
    c[2] = 1.0 - std::abs(z4);
    const Complex v[4] = {z1, z2, z3, z4};
    std::size_t i = 3;
    for (int j = 0; j < 4; ++j)
        for (int off = 1; off <= 2; ++off) {
            int k = (j + off) % 4;
            c[i++] = dist_point_segment(v[j], v[k], v[(k + 1) % 4]) - s;
        }
    c[11] = segments_intersect(z1, z2, z3, z4) || segments_intersect(z2, z3, z4, z1) ? -1.0 : 1.0;
    return c;
}

double slack(Complex z3, Complex z4, double s) {
    auto c = constraints(z3, z4, s);
    return *std::min_element(c.begin(), c.end());
}

struct Candidate {
    std::vector<CurvePiece> pieces;
    std::vector<double> offsets;
    double total = 0.0;

    void add(CurvePiece p) {
        offsets.push_back(total);
        total += piece_length(p);
        pieces.push_back(p);
    }

    [[nodiscard]] Complex at(double u) const {
        u = std::clamp(u, 0.0, total);
        for (std::size_t i = pieces.size(); i-- > 0;)
            if (u >= offsets[i] || i == 0)
                return piece_point(pieces[i], u - offsets[i]);
        return piece_point(pieces.front(), 0.0);
    }
};

CurvePiece clip(const CurvePiece &p, double a, double b) {
    if (const auto *seg = std::get_if<Segment>(&p)) {
        double len = std::abs(seg->b - seg->a);
        Complex d = len > 0 ? (seg->b - seg->a) / len : Complex(0, 0);
        return Segment{seg->a + a * d, seg->a + b * d};
    }
    const auto &arc = std::get<Arc>(p);
    double dir = arc.sweep >= 0 ? 1.0 : -1.0;
    return Arc{arc.center, arc.radius, arc.start + dir * a / arc.radius, dir * (b - a) / arc.radius};
}

// Clockwise tangent point on the circle |z - c| = rad seen from the external point e.
Complex tangent_point(Complex c, double rad, Complex e, double sign) {
    double dist = std::abs(e - c);
    if (dist <= rad)
        throw Error(ErrorKind::Domain, "base point inside the tangency circle");
    double beta = std::acos(rad / dist);
    return c + std::polar(rad, std::arg(e - c) + sign * beta);
}

Candidate candidate_u(double s, Complex z4) {
    Candidate c;
    const Complex one(1, 0);
    Complex p = tangent_point(one, s, z4, -1.0);
    double phi = std::arg(p - one);
    c.add(Segment{Complex(0, s), Complex(1, s)});
    c.add(Arc{one, s, pi / 2, -(pi / 2 - phi)});
    double reach = std::max(0.0, 1.0 - std::abs(p - z4));
    Complex dir = (p - z4) / std::abs(p - z4);
    c.add(Segment{p, p + reach * dir});
    return c;
}

Candidate candidate_w(double s, Complex z4) {
    Candidate c;
    const Complex one(1, 0);
    double alpha = std::arg(z4);
    Complex e = std::polar(1.0, alpha);
    Complex a = Complex(0, -s) * e;
    Complex q = z4 + a;
    Complex p = tangent_point(z4, s, one, 1.0);
    double start = alpha - pi / 2;
    double sweep = wrap_positive(std::arg(p - z4) - start);
    c.add(Segment{a, q});
    c.add(Arc{z4, s, start, sweep});
    double reach = std::max(0.0, 1.0 - std::abs(p - one));
    Complex dir = (p - one) / std::abs(p - one);
    c.add(Segment{p, p + reach * dir});
    return c;
}

double golden_max(const std::function<double(double)> &f, double a, double b) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

// Boundary between a valid point and an invalid one, as (good, bad).
std::pair<double, double> bisect_bracket(const std::function<bool(double)> &valid, double good, double bad) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (good + bad);
        if (mid == good || mid == bad)
            break;
        (valid(mid) ? good : bad) = mid;
    }
    return {good, bad};
}

double bisect_edge(const std::function<bool(double)> &valid, double good, double bad) {
    return bisect_bracket(valid, good, bad).first;
}

std::pair<double, double> slice_of(FiberFamily family, double s, double x) {
    auto r = omega_region(family, s).slice(x);
    if (!r)
        throw Error(ErrorKind::Domain, "point outside the base region");
    return *r;
}

}  // namespace

double omega_alpha0(double s) {
    require_level(s);
    return std::acos(-std::sqrt((1.0 - s * std::sqrt(2.0 - s * s)) / 2.0));
}

double omega_lambda(double s, double alpha) {
    double c = std::cos(alpha);
    return c + std::sqrt(c * c + s * (2.0 * std::sin(alpha) - s));
}

double omega_t_alpha(double s, double alpha) {
    require_level(s);
    double th = std::asin(s);
    if (alpha < th - 1e-15 || alpha > pi - th + 1e-15)
        throw Error(ErrorKind::Domain, "direction outside the W base sector");
    if (alpha <= pi / 2)
        return s / std::sin(alpha);
    if (alpha <= omega_alpha0(s))
        return s;
    double lam = omega_lambda(s, alpha);
    return (s * s + lam * lam) / (2.0 * lam);
}

double OmegaRegion::theta() const { return std::asin(s); }

double OmegaRegion::x_min() const { return -std::cos(theta()); }

double OmegaRegion::x_max() const { return std::cos(theta()); }

bool OmegaRegion::contains(Complex z, double eps) const {
    if (std::abs(z) > 1.0 + eps)
        return false;
    if (family == FiberFamily::U)
        return z.imag() >= s - eps;
    if (std::abs(z) == 0.0)
        return false;
    double th = theta();
    double a = std::arg(z);
    if (a < th - eps || a > pi - th + eps)
        return false;
    a = std::clamp(a, th, pi - th);
    return std::abs(z) >= omega_t_alpha(s, a) - eps;
}

std::optional<std::pair<double, double>> OmegaRegion::slice(double x) const {
    double lo_x = x_min(), hi_x = x_max();
    if (x < lo_x - 1e-15 || x > hi_x + 1e-15)
        return std::nullopt;
    x = std::clamp(x, lo_x, hi_x);
    double top = std::sqrt(std::max(0.0, 1.0 - x * x));
    if (family == FiberFamily::U || x >= 0.0)
        return std::make_pair(std::min(s, top), top);
    double a0 = omega_alpha0(s);
    if (x >= s * std::cos(a0))
        return std::make_pair(std::sqrt(std::max(0.0, s * s - x * x)), top);
    // lower boundary along the curve of q_alpha, alpha in [alpha0, pi - asin s]
    double a = a0, b = pi - theta();
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (mid == a || mid == b)
            break;
        double xm = omega_t_alpha(s, mid) * std::cos(mid);
        (xm > x ? a : b) = mid;
    }
    double al = 0.5 * (a + b);
    return std::make_pair(std::min(omega_t_alpha(s, al) * std::sin(al), top), top);
}

Complex OmegaRegion::sample(std::mt19937_64 &rng) const {
    std::uniform_real_distribution<double> ux(x_min(), x_max()), uy(0.0, 1.0);
    for (int it = 0; it < 1000000; ++it) {
        Complex z(ux(rng), uy(rng));
        if (contains(z, 0.0))
            return z;
    }
    throw Error(ErrorKind::Numerical, "rejection sampling of the base region failed");
}

OmegaRegion omega_region(FiberFamily family, double s) {
    require_level(s);
    return {family, s};
}

double piece_length(const CurvePiece &p) {
    if (const auto *seg = std::get_if<Segment>(&p))
        return std::abs(seg->b - seg->a);
    const auto &arc = std::get<Arc>(p);
    return arc.radius * std::abs(arc.sweep);
}

Complex piece_point(const CurvePiece &p, double u) {
    if (const auto *seg = std::get_if<Segment>(&p)) {
        double len = std::abs(seg->b - seg->a);
        if (len == 0.0)
            return seg->a;
        return seg->a + std::clamp(u / len, 0.0, 1.0) * (seg->b - seg->a);
    }
    const auto &arc = std::get<Arc>(p);
    double len = arc.radius * std::abs(arc.sweep);
    double f = len > 0 ? std::clamp(u / len, 0.0, 1.0) : 0.0;
    return arc.center + std::polar(arc.radius, arc.start + f * arc.sweep);
}

double FiberCurve::length() const {
    double l = 0.0;
    for (const auto &p : pieces)
        l += piece_length(p);
    return l;
}

Complex FiberCurve::point(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorKind::Domain, "fiber parameter outside [0, 1]");
    if (pieces.empty())
        return anchor;
    double u = t * length();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        double l = piece_length(pieces[i]);
        if (u <= l || i + 1 == pieces.size())
            return piece_point(pieces[i], u);
        u -= l;
    }
    return anchor;
}

std::pair<double, double> FiberCurve::project(Complex z) const {
    if (pieces.empty())
        return {std::abs(z - anchor), 0.0};
    double total = length();
    double best = std::numeric_limits<double>::infinity(), best_u = 0.0, offset = 0.0;
    for (const auto &p : pieces) {
        double l = piece_length(p);
        double u = 0.0;
        if (const auto *seg = std::get_if<Segment>(&p)) {
            u = closest_on_segment(z, seg->a, seg->b).param * l;
        } else {
            const auto &arc = std::get<Arc>(p);
            double rel = std::arg(z - arc.center) - arc.start;
            if (arc.sweep < 0)
                rel = -rel;
            rel = wrap_positive(rel);
            double sw = std::abs(arc.sweep);
            if (rel > sw)
                rel = (rel - sw < 2.0 * pi - rel) ? sw : 0.0;
            u = rel * arc.radius;
        }
        double d = std::abs(piece_point(p, u) - z);
        if (d < best) {
            best = d;
            best_u = offset + u;
        }
        offset += l;
    }
    return {best, total > 0 ? std::clamp(best_u / total, 0.0, 1.0) : 0.0};
}

FiberCurve gamma_curve(FiberFamily family, double s, Complex z4) {
    require_level(s);
    auto region = omega_region(family, s);
    if (!region.contains(z4, 1e-9))
        throw Error(ErrorKind::Domain, "base point outside the base region");
    Candidate cand = family == FiberFamily::U ? candidate_u(s, z4) : candidate_w(s, z4);
    auto g = [&](double u) { return slack(cand.at(u), z4, s); };
    auto valid = [&](double u) { return g(u) >= -slack_tol; };

    std::vector<double> grid(scan_samples);
    std::vector<double> val(scan_samples);
    std::size_t best = 0;
    for (int k = 0; k < scan_samples; ++k) {
        grid[static_cast<std::size_t>(k)] = cand.total * k / (scan_samples - 1);
        val[static_cast<std::size_t>(k)] = g(grid[static_cast<std::size_t>(k)]);
        if (val[static_cast<std::size_t>(k)] > val[best])
            best = static_cast<std::size_t>(k);
    }
    double ustar = grid[best];
    if (val[best] < -slack_tol) {
        double a = grid[best == 0 ? 0 : best - 1];
        double b = grid[std::min(best + 1, grid.size() - 1)];
        ustar = golden_max(g, a, b);
        if (!valid(ustar))
            throw Error(ErrorKind::Domain, "empty fiber: base point outside the base region");
    }

    double u0 = ustar, u1 = ustar;
    std::optional<double> out0, out1;
    {
        double good = ustar;
        bool hit = false;
        for (std::size_t k = grid.size(); k-- > 0;) {
            if (grid[k] >= ustar)
                continue;
            if (!valid(grid[k])) {
                std::tie(u0, out0) = bisect_bracket(valid, good, grid[k]);
                hit = true;
                break;
            }
            good = grid[k];
        }
        if (!hit)
            u0 = good;
    }
    {
        double good = ustar;
        bool hit = false;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (grid[k] <= ustar)
                continue;
            if (!valid(grid[k])) {
                std::tie(u1, out1) = bisect_bracket(valid, good, grid[k]);
                hit = true;
                break;
            }
            good = grid[k];
        }
        if (!hit)
            u1 = good;
    }

    // Polish each edge against the constraints that cross zero there; constraints
    // held at zero along the piece are left out, so the edge is the exact crossing.
    if (u1 - u0 > 1e-9) {
        double d = std::min(0.25 * (u1 - u0), cand.total / (scan_samples - 1));
        auto polish = [&](double edge, std::optional<double> out, double inner) {
            if (!out)
                return edge;
            auto ci = constraints(cand.at(inner), z4, s);
            std::array<bool, 12> use{};
            for (std::size_t i = 0; i < ci.size(); ++i)
                use[i] = ci[i] > 4.0 * slack_tol;
            auto restricted = [&](double u) {
                auto c = constraints(cand.at(u), z4, s);
                double m = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < c.size(); ++i)
                    if (use[i])
                        m = std::min(m, c[i]);
                return m;
            };
            if (!(restricted(*out) < 0.0) || !(restricted(inner) > 0.0))
                return edge;
            return bisect_edge([&](double u) { return restricted(u) >= 0.0; }, inner, *out);
        };
        // inner reference points stay on the piece holding the edge
        auto piece_span = [&](double u) {
            std::size_t i = 0;
            while (i + 1 < cand.pieces.size() && u >= cand.offsets[i + 1])
                ++i;
            return std::pair{cand.offsets[i], cand.offsets[i] + piece_length(cand.pieces[i])};
        };
        auto [a0, b0] = piece_span(u0);
        auto [a1, b1] = piece_span(u1);
        double d0 = std::min(d, 0.5 * (b0 - u0)), d1 = std::min(d, 0.5 * (u1 - a1));
        double n0 = d0 > 1e-12 ? polish(u0, out0, u0 + d0) : u0;
        double n1 = d1 > 1e-12 ? polish(u1, out1, u1 - d1) : u1;
        if (n0 < n1) {
            u0 = n0;
            u1 = n1;
        }
    }

    FiberCurve fc;
    fc.family = family;
    fc.s = s;
    fc.z4 = z4;
    fc.anchor = cand.at(0.5 * (u0 + u1));
    if (u1 - u0 <= 1e-13)
        return fc;
    for (std::size_t i = 0; i < cand.pieces.size(); ++i) {
        double a = cand.offsets[i];
        double b = a + piece_length(cand.pieces[i]);
        double lo = std::max(a, u0), hi = std::min(b, u1);
        if (hi - lo > 1e-15)
            fc.pieces.push_back(clip(cand.pieces[i], lo - a, hi - a));
    }
    if (fc.pieces.empty())
        return fc;
    fc.anchor = fc.point(0.0);
    return fc;
}

Shape fiber_to_shape(FiberFamily family, const FiberCoord &c) {
    if (c.s == 1.0)
        return regular_polygon(4);
    auto fc = gamma_curve(family, c.s, c.z4);
    return Shape::from_tail({fc.point(c.t), c.z4});
}

FiberCoord shape_to_fiber(FiberFamily family, const Shape &z) {
    if (z.n() != 4)
        throw Error(ErrorKind::Unsupported, "fiber coordinates need n = 4");
    ConeLabel ref = family == FiberFamily::U ? ConeLabel{Family::U, 1} : ConeLabel{Family::W, 1};
    if (!in_closure(z, ref, Tolerance{}))
        throw Error(ErrorKind::Membership, "shape is not in the closure of " + ref.name());
    double s = height(z);
    if (s == 1.0)
        return {1.0, z[3], 0.0};
    require_level(s);
    auto fc = gamma_curve(family, s, z[3]);
    auto [d, t] = fc.project(z[2]);
    if (d > 1e-7)
        throw Error(ErrorKind::Membership, "shape is not on its fiber");
    return {s, z[3], fc.collapsed() ? 0.0 : t};
}

Complex uniformize_base(FiberFamily family, double s, Complex z) {
    require_level(s);
    if (!omega_region(family, s).contains(z, 1e-9))
        throw Error(ErrorKind::Domain, "point outside the base region");
    double xs = std::cos(std::asin(s));
    double xr = std::sqrt(3.0) / 2.0;
    double x = std::clamp(z.real(), -xs, xs);
    double xp = std::clamp(x * xr / xs, -xr, xr);
    auto [a, b] = slice_of(family, s, x);
    auto [ap, bp] = slice_of(family, 0.5, xp);
    double y = ap;
    if (b - a > 1e-15)
        y = ap + (std::clamp(z.imag(), a, b) - a) * (bp - ap) / (b - a);
    return {xp, y};
}

Complex uniformize_base_inverse(FiberFamily family, double s, Complex w) {
    require_level(s);
    if (!omega_region(family, 0.5).contains(w, 1e-9))
        throw Error(ErrorKind::Domain, "point outside the reference base region");
    double xs = std::cos(std::asin(s));
    double xr = std::sqrt(3.0) / 2.0;
    double xp = std::clamp(w.real(), -xr, xr);
    double x = std::clamp(xp * xs / xr, -xs, xs);
    auto [a, b] = slice_of(family, s, x);
    auto [ap, bp] = slice_of(family, 0.5, xp);
    double y = a;
    if (bp - ap > 1e-15)
        y = a + (std::clamp(w.imag(), ap, bp) - ap) * (b - a) / (bp - ap);
    return {x, y};
}

Shape transversal_mu(int j, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorKind::Domain, "transversal parameter outside [0, 1]");
    if (j == 1)
        return Shape::from_tail({Complex(1.0 - t / 2.0, 1.0 - t), Complex(0.0, 1.0 - t / 2.0)});
    if (j == 2)
        return Shape::from_tail({(1.0 - t / 2.0) * Complex(1.0, 1.0), Complex(t / 2.0, 1.0 - t / 2.0)});
    throw Error(ErrorKind::InvalidInput, "transversal curve index must be 1 or 2");
}

Shape cone_flow(const Shape &z, double target_s) {
    if (z.n() != 4)
        throw Error(ErrorKind::Unsupported, "cone flow needs n = 4");
    if (!(target_s > 0.0 && target_s <= 1.0))
        throw Error(ErrorKind::Domain, "target level must satisfy 0 < s <= 1");
    if (!is_simple(z) || orientation(z) != Orientation::Positive)
        throw Error(ErrorKind::Domain, "cone flow needs a simple positively oriented shape");
    if (target_s == 1.0)
        return regular_polygon(4);
    double s0 = height(z);
    if (s0 >= 1.0 - 1e-15)
        return transversal_mu(1, 1.0 - target_s);
    ConeLabel label = preferred_label(classify_cone(z));
    ConeLabel ref = reference_label(label);
    FiberFamily fam = ref.family == Family::W ? FiberFamily::W : FiberFamily::U;
    DihedralElement g = reference_element(label);
    Shape zr = apply(g.inverse(), z);
    FiberCoord c = shape_to_fiber(fam, zr);
    Complex w = uniformize_base(fam, c.s, c.z4);
    Complex z4 = uniformize_base_inverse(fam, target_s, w);
    Shape moved = fiber_to_shape(fam, {target_s, z4, c.t});
    return apply(g, moved);
}

}  // namespace quadmoduli
