#include "quadmoduli/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quadmoduli {

Shape Shape::from_tail(std::vector<Complex> tail) {
    if (tail.empty())
        throw Error(ErrorKind::InvalidInput, "shape needs at least three vertices");
    Shape s;
    s.v_.reserve(tail.size() + 2);
    s.v_.push_back({0.0, 0.0});
    s.v_.push_back({1.0, 0.0});
    s.v_.insert(s.v_.end(), tail.begin(), tail.end());
    return s;
}

Shape Shape::from_vertices(std::vector<Complex> vertices) {
    if (vertices.size() < 3)
        throw Error(ErrorKind::InvalidInput, "shape needs at least three vertices");
    if (vertices[0] != Complex(0, 0) || vertices[1] != Complex(1, 0))
        throw Error(ErrorKind::InvalidInput, "shape vertices must start with 0, 1");
    for (auto z : vertices)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorKind::InvalidInput, "non-finite vertex");
    Shape s;
    s.v_ = std::move(vertices);
    return s;
}

double cross(Complex a, Complex b) noexcept { return a.real() * b.imag() - a.imag() * b.real(); }

double signed_area(std::span<const Complex> v) noexcept {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

double diameter(std::span<const Complex> v) noexcept {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            d = std::max(d, std::abs(v[i] - v[j]));
    return d;
}

Orientation orientation(const LabeledPolygon &p, const Tolerance &tol) {
    double d = diameter(p.vertices);
    double a = signed_area(p.vertices);
    if (d == 0.0 || std::abs(a) <= tol.eq_tol * d * d)
        return Orientation::Degenerate;
    return a > 0 ? Orientation::Positive : Orientation::Negative;
}

SegmentFoot closest_on_segment(Complex p, Complex a, Complex b) noexcept {
    Complex d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0)
        return {std::abs(p - a), a, 0.0};
    double t = ((p - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    Complex w = a + t * d;
    return {std::abs(p - w), w, t};
}

double dist_point_segment(Complex p, Complex a, Complex b) noexcept { return closest_on_segment(p, a, b).distance; }

double dist_point_polyline(Complex p, std::span<const Complex> chain) {
    if (chain.empty())
        throw Error(ErrorKind::InvalidInput, "empty polyline");
    if (chain.size() == 1)
        return std::abs(p - chain[0]);
    double best = std::abs(p - chain[0]);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        best = std::min(best, dist_point_segment(p, chain[i], chain[i + 1]));
    return best;
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d, double eps) noexcept {
    double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
    double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
        return true;
    double m = std::min({dist_point_segment(a, c, d), dist_point_segment(b, c, d), dist_point_segment(c, a, b),
                         dist_point_segment(d, a, b)});
    return m <= eps;
}

bool is_simple(const LabeledPolygon &p, const Tolerance &tol) {
    std::size_t n = p.n();
    if (n < 3)
        return false;
    double scale = diameter(p.vertices);
    if (scale == 0.0)
        return false;
    double eps = tol.eq_tol * scale;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(p[i] - p[j]) <= eps)
                return false;
    for (std::size_t i = 0; i < n; ++i) {
        // adjacent sides [a,b], [b,c] must not fold onto each other
        Complex a = p[i], b = p[i + 1], c = p[i + 2];
        if (dist_point_segment(c, a, b) <= eps || dist_point_segment(a, b, c) <= eps)
            return false;
        for (std::size_t j = i + 2; j < n; ++j) {
            if ((j + 1) % n == i)
                continue;
            if (segments_intersect(p[i], p[i + 1], p[j], p[j + 1], eps))
                return false;
        }
    }
    return true;
}

Shape normalize_unshifted(const LabeledPolygon &p) {
    if (p.n() < 3)
        throw Error(ErrorKind::InvalidInput, "polygon needs at least three vertices");
    Complex a = p[1] - p[0];
    if (a == Complex(0, 0))
        throw Error(ErrorKind::Degenerate, "z1 == z2, no chart representative");
    std::vector<Complex> v(p.n());
    v[0] = 0.0;
    v[1] = 1.0;
    for (std::size_t i = 2; i < p.n(); ++i)
        v[i] = (p[i] - p[0]) / a;
    return Shape::from_vertices(std::move(v));
}

Shape normalize(const LabeledPolygon &p, const Tolerance &tol) {
    std::size_t n = p.n();
    if (n < 3)
        throw Error(ErrorKind::InvalidInput, "polygon needs at least three vertices");
    for (auto z : p.vertices)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorKind::InvalidInput, "non-finite vertex");
    double scale = diameter(p.vertices);
    if (scale == 0.0)
        throw Error(ErrorKind::Degenerate, "all vertices coincide");
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(p[k + 1] - p[k]) > tol.eq_tol * scale) {
            LabeledPolygon q;
            q.vertices.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                q.vertices.push_back(p[i + k]);
            return normalize_unshifted(q);
        }
    }
    throw Error(ErrorKind::Degenerate, "all vertices coincide");
}

double chart_distance(const Shape &a, const Shape &b) {
    if (a.n() != b.n())
        throw Error(ErrorKind::InvalidInput, "shapes of different size");
    double d = 0.0;
    for (std::size_t i = 2; i < a.n(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::string to_string(const Shape &z) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < z.n(); ++i) {
        if (i)
            os << ", ";
        os << z[i].real() << (z[i].imag() < 0 ? "-" : "+") << std::abs(z[i].imag()) << 'i';
    }
    os << ']';
    return os.str();
}

}  // namespace quadmoduli
