#include "quadmoduli/height.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quadmoduli {

namespace {

void require_quad(const Shape &z) {
    if (z.n() != 4)
        throw Error(ErrorKind::Unsupported, "height is defined for quadrilaterals only");
}

bool same_pair(Complex a, Complex b, Complex c, Complex d, double eps) {
    return (std::abs(a - c) <= eps && std::abs(b - d) <= eps) || (std::abs(a - d) <= eps && std::abs(b - c) <= eps);
}

}  // namespace

std::array<double, 4> side_lengths(const Shape &z) {
    require_quad(z);
    std::array<double, 4> s{};
    for (std::size_t k = 0; k < 4; ++k)
        s[k] = std::abs(z[k + 1] - z[k]);
    return s;
}

std::array<VertexSide, 8> vertex_side_table(const Shape &z) {
    require_quad(z);
    std::array<VertexSide, 8> t{};
    std::size_t i = 0;
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t off = 1; off <= 2; ++off) {
            std::size_t side = (j + off) % 4;
            auto f = closest_on_segment(z[j], z[side], z[side + 1]);
            t[i++] = {static_cast<int>(j + 1), static_cast<int>(side + 1), f.distance, f.foot};
        }
    }
    return t;
}

HeightReport height_report(const Shape &z, const Tolerance &tol) {
    auto sides = side_lengths(z);
    auto table = vertex_side_table(z);
    HeightReport rep;
    rep.ell = *std::max_element(sides.begin(), sides.end());
    double eps = tol.eq_tol * rep.ell;
    for (int k = 0; k < 4; ++k)
        if (sides[static_cast<std::size_t>(k)] >= rep.ell - eps)
            rep.ell_sides.push_back(k + 1);
    rep.r = table[0].distance;
    for (const auto &e : table)
        rep.r = std::min(rep.r, e.distance);
    for (const auto &e : table) {
        if (e.distance > rep.r + eps)
            continue;
        Complex zv = z[static_cast<std::size_t>(e.vertex - 1)];
        bool dup = std::any_of(rep.r_pairs.begin(), rep.r_pairs.end(), [&](const RPair &p) {
            return same_pair(z[static_cast<std::size_t>(p.vertex - 1)], p.foot, zv, e.foot, eps);
        });
        if (!dup)
            rep.r_pairs.push_back({e.vertex, e.side, e.foot});
    }
    rep.h = rep.r / rep.ell;
    rep.ell_unique = rep.ell_sides.size() == 1;
    rep.r_unique = rep.r_pairs.size() == 1;
    return rep;
}

double height(const Shape &z) {
    auto sides = side_lengths(z);
    double ell = *std::max_element(sides.begin(), sides.end());
    double r = std::numeric_limits<double>::infinity();
    for (const auto &e : vertex_side_table(z))
        r = std::min(r, e.distance);
    return r / ell;
}

double triangle_height(Complex z3) {
    Complex a(0, 0), b(1, 0), c = z3;
    double ell = std::max({std::abs(b - a), std::abs(c - b), std::abs(a - c)});
    double r = std::min({dist_point_segment(a, b, c), dist_point_segment(b, c, a), dist_point_segment(c, a, b)});
    return r / ell;
}

double triangle_height(const Shape &z) {
    if (z.n() != 3)
        throw Error(ErrorKind::Unsupported, "triangle_height needs n = 3");
    return triangle_height(z[2]);
}

std::vector<Complex> triangle_level_curve(double s, int samples) {
    const double top = std::sqrt(3.0) / 2.0;
    if (!(s > 0.0 && s < top))
        throw Error(ErrorKind::Domain, "triangle level must lie in (0, sqrt(3)/2)");
    if (samples < 3)
        throw Error(ErrorKind::InvalidInput, "need at least three samples");
    const Complex centre(0.5, top);
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
        double lo = 0.0, hi = 0.0;
        const double step = 1e-2;
        for (double rho = step;; rho += step) {
            Complex p = centre + rho * dir;
            if (p.imag() <= 0.0 || triangle_height(p) <= s || rho > 1e3) {
                hi = rho;
                lo = rho - step;
                break;
            }
        }
        auto f = [&](double rho) {
            Complex p = centre + rho * dir;
            return p.imag() <= 0.0 ? -s : triangle_height(p) - s;
        };
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            double mid = 0.5 * (lo + hi);
            (f(mid) > 0 ? lo : hi) = mid;
        }
        out.push_back(centre + 0.5 * (lo + hi) * dir);
    }
    return out;
}

}  // namespace quadmoduli
