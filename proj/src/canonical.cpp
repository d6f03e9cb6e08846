#include "quadmoduli/cones.hpp"
#include "quadmoduli/dihedral.hpp"

#include <cmath>

namespace quadmoduli {

namespace {

bool in_triangle_domain(Complex z, double eps) {
    return std::abs(z) <= 1.0 + eps && z.imag() > 0.0 && z.real() >= 0.5 - eps;
}

bool in_quad_domain(const Shape &z, const Tolerance &tol) {
    if (in_closure(z, {Family::U, 1}, tol))
        return true;
    double scale = std::max({1.0, std::abs(z[2]), std::abs(z[3])});
    return in_closure(z, {Family::W, 1}, tol) && z[2].imag() <= z[3].imag() + tol.class_tol * scale;
}

// Lexicographic on the tail, with coordinates closer than eps treated as equal.
bool lex_less(const Shape &a, const Shape &b, double eps) {
    for (std::size_t i = 2; i < a.n(); ++i) {
        for (double d : {a[i].real() - b[i].real(), a[i].imag() - b[i].imag()}) {
            if (d < -eps)
                return true;
            if (d > eps)
                return false;
        }
    }
    return false;
}

}  // namespace

Shape canonical_rep(const Shape &z, const Tolerance &tol) {
    int n = static_cast<int>(z.n());
    if (n != 3 && n != 4)
        throw Error(ErrorKind::Unsupported, "canonical representatives are provided for n = 3, 4");
    if (!is_simple(z, tol) || orientation(z, tol) != Orientation::Positive)
        throw Error(ErrorKind::Domain, "canonical_rep needs a simple positively oriented polygon");
    const Shape *best = nullptr;
    std::vector<Shape> images;
    for (const auto &g : group_elements(n))
        images.push_back(apply(g, z, tol));
    for (const auto &w : images) {
        bool ok = n == 3 ? in_triangle_domain(w[2], 1e-9) : in_quad_domain(w, tol);
        if (ok && (best == nullptr || lex_less(w, *best, 1e-9)))
            best = &w;
    }
    if (best == nullptr)
        throw Error(ErrorKind::Numerical, "no orbit element in the fundamental domain");
    return *best;
}

}  // namespace quadmoduli
