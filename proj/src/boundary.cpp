#include "quadmoduli/boundary.hpp"

#include "quadmoduli/dihedral.hpp"
#include "quadmoduli/height.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace quadmoduli {

namespace {

double ell_of(const Shape &z) {
    auto s = side_lengths(z);
    return *std::max_element(s.begin(), s.end());
}

bool collinear(const Shape &z, double eps) {
    std::size_t a = 0, b = 1;
    double far = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (std::abs(z[i] - z[j]) > far) {
                far = std::abs(z[i] - z[j]);
                a = i;
                b = j;
            }
    Complex d = (z[b] - z[a]) / far;
    for (std::size_t k = 0; k < 4; ++k)
        if (std::abs(cross(d, z[k] - z[a])) > eps)
            return false;
    return true;
}

std::array<double, 4> line_positions(const Shape &z) {
    // z1 = 0 and z2 = 1 lie on the line, so it is the real axis after a collinearity check.
    return {z[0].real(), z[1].real(), z[2].real(), z[3].real()};
}

double dist_to_ray(Complex p, Complex origin, Complex dir) {
    double len2 = std::norm(dir);
    if (len2 == 0.0)
        return std::abs(p - origin);
    double t = std::max(0.0, ((p - origin) * std::conj(dir)).real() / len2);
    return std::abs(p - (origin + t * dir));
}

bool in_upper_half_disc(Complex z, double eps) { return std::abs(z) <= 1.0 + eps && z.imag() >= -eps; }

// Reference limit sets in chart coordinates, the first side being the longest.
bool in_hat_u1(Complex z3, Complex z4, double eps) {
    if (!in_upper_half_disc(z4, eps))
        return false;
    const Complex one(1, 0);
    if (std::abs(z4 - one) <= eps) {
        Complex w = z3 - one;
        return dist_point_segment(z3, 0.0, one) <= eps ||
               (std::abs(w) <= 1.0 + eps && w.real() >= -eps && w.imag() <= eps);
    }
    bool on = dist_point_segment(z3, 0.0, one) <= eps || dist_to_ray(z3, one, one - z4) <= eps;
    return on && std::abs(z3 - z4) <= 1.0 + eps;
}

bool in_hat_w1(Complex z3, Complex z4, double eps) {
    if (!in_upper_half_disc(z4, eps))
        return false;
    const Complex one(1, 0);
    if (std::abs(z4 - one) <= eps) {
        Complex w = z3 - one;
        return dist_point_segment(z3, 0.0, one) <= eps ||
               (std::abs(w) <= 1.0 + eps && w.real() >= -eps && w.imag() >= -eps);
    }
    bool on = dist_point_segment(z3, 0.0, z4) <= eps || dist_to_ray(z3, z4, z4 - one) <= eps;
    return on && std::abs(z3 - one) <= 1.0 + eps;
}

void require_boundary(const Shape &z, const Tolerance &tol) {
    if (z.n() != 4)
        throw Error(ErrorKind::Unsupported, "boundary strata are defined for quadrilaterals");
    if (height(z) > tol.class_tol)
        throw Error(ErrorKind::Domain, "shape is not on the boundary (h > class_tol)");
}

}  // namespace

std::string to_string(BoundaryKind k) {
    switch (k) {
    case BoundaryKind::Flag: return "Flag";
    case BoundaryKind::Triangle: return "Triangle";
    case BoundaryKind::Wedge: return "Wedge";
    case BoundaryKind::FourSegmentConvex: return "FourSegmentConvex";
    case BoundaryKind::FourSegmentNonConvex: return "FourSegmentNonConvex";
    }
    return "?";
}

bool is_zigzag(const Shape &z, const Tolerance &tol) {
    double eps = tol.class_tol * ell_of(z);
    if (!collinear(z, eps))
        return false;
    auto p = line_positions(z);
    for (std::size_t k = 0; k < 4; ++k) {
        double w1 = p[k], w2 = p[(k + 1) % 4], w3 = p[(k + 2) % 4], w4 = p[(k + 3) % 4];
        bool up = w1 <= w3 + eps && w3 <= w4 + eps && w4 <= w2 + eps;
        bool down = w1 >= w3 - eps && w3 >= w4 - eps && w4 >= w2 - eps;
        if (up || down)
            return true;
    }
    return false;
}

BoundaryStratum classify_boundary(const Shape &z, const Tolerance &tol) {
    require_boundary(z, tol);
    double ell = ell_of(z);
    double eps = tol.class_tol * ell;
    BoundaryStratum out{BoundaryKind::Flag, 0, collinear(z, eps)};
    for (int j = 1; j <= 2; ++j)
        if (std::abs(z[static_cast<std::size_t>(j - 1)] - z[static_cast<std::size_t>(j + 1)]) <= eps) {
            out.kind = BoundaryKind::Wedge;
            out.vertex = j;
            return out;
        }
    for (int j = 1; j <= 4; ++j)
        if (std::abs(z[static_cast<std::size_t>(j - 1)] - z[static_cast<std::size_t>(j)]) <= eps) {
            out.kind = BoundaryKind::Triangle;
            out.vertex = j;
            return out;
        }
    if (out.collinear) {
        out.kind = is_zigzag(z, tol) ? BoundaryKind::FourSegmentNonConvex : BoundaryKind::FourSegmentConvex;
        return out;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto &e : vertex_side_table(z)) {
        if (e.distance < best) {
            best = e.distance;
            out.vertex = e.vertex;
        }
    }
    if (best > eps)
        throw Error(ErrorKind::Numerical, "boundary shape without incidence");
    return out;
}

WedgeCoordinate wedge_coordinate(const LabeledPolygon &p, const Tolerance &tol) {
    if (p.n() != 4)
        throw Error(ErrorKind::Unsupported, "wedge coordinates need n = 4");
    double scale = diameter(p.vertices);
    if (scale == 0.0)
        throw Error(ErrorKind::Degenerate, "all vertices coincide");
    double eps = tol.class_tol * scale;
    bool one = std::abs(p[0] - p[2]) <= eps;
    bool two = std::abs(p[1] - p[3]) <= eps;
    if (!one && !two)
        throw Error(ErrorKind::Domain, "not a wedge");
    if (one && two)
        return {WedgeSphere::One, Complex(1, 0), true};
    Complex a = p[1] - p[0];
    WedgeCoordinate w{one ? WedgeSphere::One : WedgeSphere::Two, PointAtInfinity{}, false};
    if (std::abs(a) > eps)
        w.coord = one ? (p[3] - p[0]) / a : (p[2] - p[0]) / a;
    return w;
}

WedgeCoordinate wedge_coordinate(const Shape &z, const Tolerance &tol) {
    auto k = classify_boundary(z, tol).kind;
    if (k != BoundaryKind::Wedge)
        throw Error(ErrorKind::Domain, "not a wedge");
    return wedge_coordinate(z.polygon(), tol);
}

bool hat_cone_membership(const LabeledPolygon &p, const ConeLabel &label, const Tolerance &tol) {
    if (p.n() != 4)
        throw Error(ErrorKind::Unsupported, "hat cones need n = 4");
    DihedralElement g = reference_element(label);
    LabeledPolygon w = apply_raw(g.inverse(), p);
    double scale = diameter(w.vertices);
    if (scale == 0.0 || std::abs(w[1] - w[0]) <= tol.class_tol * scale)
        return false;
    Shape z = normalize_unshifted(w);
    double eps = tol.class_tol * std::max({1.0, std::abs(z[2]), std::abs(z[3])});
    return label.family == Family::W ? in_hat_w1(z[2], z[3], eps) : in_hat_u1(z[2], z[3], eps);
}

bool hat_cone_membership(const Shape &z, const ConeLabel &label, const Tolerance &tol) {
    return hat_cone_membership(z.polygon(), label, tol);
}

bool in_bad_set(const Shape &z, const Tolerance &tol) {
    if (z.n() != 4)
        throw Error(ErrorKind::Unsupported, "bad set is defined for quadrilaterals");
    auto rep = height_report(z, tol);
    if (rep.h <= tol.class_tol) {
        auto st = classify_boundary(z, tol);
        return st.kind == BoundaryKind::Wedge || (st.collinear && is_zigzag(z, tol));
    }
    auto table = vertex_side_table(z);
    double eps = tol.class_tol * rep.ell;
    for (std::size_t j = 0; j < 4; ++j) {
        const auto &a = table[2 * j];
        const auto &b = table[2 * j + 1];
        if (a.distance <= rep.r + eps && b.distance <= rep.r + eps)
            return true;
    }
    return false;
}

namespace {

void require_real_target(const Shape &t) {
    if (t.n() != 4)
        throw Error(ErrorKind::Unsupported, "degenerations need n = 4");
}

}  // namespace

double degeneration_height(const Shape &target, DegenerationKind kind, double param, double r) {
    require_real_target(target);
    switch (kind) {
    case DegenerationKind::Segment: return target[2].real() * std::tan(param / 2.0);
    case DegenerationKind::Wedge: return param * std::sin(std::arg(target[3]) / 2.0);
    case DegenerationKind::FiberSlide: {
        double th = std::atan2(param, target[3].real());
        return r * std::tan(th / 2.0);
    }
    }
    throw Error(ErrorKind::InvalidInput, "bad degeneration kind");
}

Shape degenerating_sequence(const Shape &target, DegenerationKind kind, double param, double r) {
    require_real_target(target);
    const double eps = 1e-12;
    Complex z3 = target[2], z4 = target[3];
    if (!(param > 0.0))
        throw Error(ErrorKind::Domain, "sequence parameter must be positive");
    switch (kind) {
    case DegenerationKind::Segment: {
        double x = z3.real(), y = z4.real();
        if (std::abs(z3.imag()) > eps || std::abs(z4.imag()) > eps || !(0.0 < x && x <= y && y < 1.0))
            throw Error(ErrorKind::InvalidInput, "segment degeneration needs a target [0,1,x,y] with 0 < x <= y < 1");
        double th = param;
        if (th >= std::numbers::pi / 2 || y / std::cos(th) > 1.0)
            throw Error(ErrorKind::Domain, "angle too large for this target");
        return Shape::from_tail({std::polar(x / std::cos(th / 2.0), th / 2.0), std::polar(y / std::cos(th), th)});
    }
    case DegenerationKind::Wedge: {
        double rad = std::abs(z4), beta = std::arg(z4);
        if (std::abs(z3) > eps || !(rad > 0.0 && rad <= 1.0) || !(beta > 0.0 && beta < std::numbers::pi))
            throw Error(ErrorKind::InvalidInput,
                        "wedge degeneration needs a target [0,1,0,r e^{i beta}] with 0 < r <= 1, 0 < beta < pi");
        if (param > rad * std::min(1.0, 2.0 * std::cos(beta / 2.0)))
            throw Error(ErrorKind::Domain, "wedge parameter must satisfy t <= r min(1, 2 cos(beta / 2))");
        return Shape::from_tail({std::polar(param, beta / 2.0), z4});
    }
    case DegenerationKind::FiberSlide: {
        double x = z3.real(), y = z4.real();
        if (std::abs(z3.imag()) > eps || std::abs(z4.imag()) > eps || !(0.0 < x && x < 1.0 && 0.0 < y && y < 1.0))
            throw Error(ErrorKind::InvalidInput, "fiber slide needs a target [0,1,x,y] with 0 < x, y < 1");
        if (!(r >= 0.0 && r <= std::min(x, y)))
            throw Error(ErrorKind::InvalidInput, "slide offset must satisfy 0 <= r <= min(x, y)");
        double sp = degeneration_height(target, kind, param, r);
        return Shape::from_tail({Complex(x, sp), Complex(y, param)});
    }
    }
    throw Error(ErrorKind::InvalidInput, "bad degeneration kind");
}

}  // namespace quadmoduli
