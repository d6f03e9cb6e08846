#pragma once

// Reference computations kept apart from the library code paths.

#include "quadmoduli/dihedral.hpp"
#include "quadmoduli/polygon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace oracle {

using quadmoduli::Complex;
using quadmoduli::Shape;

// Distance from p to segment [a, b] in real coordinates.
inline double seg_dist(Complex p, Complex a, Complex b) {
    double ax = b.real() - a.real(), ay = b.imag() - a.imag();
    double px = p.real() - a.real(), py = p.imag() - a.imag();
    double len2 = ax * ax + ay * ay;
    double u = len2 > 0 ? std::clamp((px * ax + py * ay) / len2, 0.0, 1.0) : 0.0;
    return std::hypot(px - u * ax, py - u * ay);
}

inline double height(const Shape &z) {
    double ell = 0.0, r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 4; ++k) {
        ell = std::max(ell, std::hypot(z[k + 1].real() - z[k].real(), z[k + 1].imag() - z[k].imag()));
        r = std::min({r, seg_dist(z[k], z[k + 1], z[k + 2]), seg_dist(z[k], z[k + 2], z[k + 3])});
    }
    return r / ell;
}

inline double triangle_height(Complex z3) {
    std::array<Complex, 3> v{Complex(0, 0), Complex(1, 0), z3};
    double ell = 0.0, r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 3; ++k) {
        ell = std::max(ell, std::abs(v[(k + 1) % 3] - v[k]));
        r = std::min(r, seg_dist(v[k], v[(k + 1) % 3], v[(k + 2) % 3]));
    }
    return r / ell;
}

// Proper crossing or touching of two closed segments.
inline bool segments_meet(Complex a, Complex b, Complex c, Complex d) {
    auto orient = [](Complex p, Complex q, Complex r) {
        double v = (q.real() - p.real()) * (r.imag() - p.imag()) - (q.imag() - p.imag()) * (r.real() - p.real());
        return (v > 0) - (v < 0);
    };
    auto on = [](Complex p, Complex q, Complex r) {
        return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
               std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4)
        return true;
    return (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) || (o4 == 0 && on(c, d, b));
}

// Exact union of sigma^j T with T = {[0, 1, t, x] : 0 <= t <= x <= 1}: relabel, renormalize, test.
inline bool in_square_union(const Shape &z, double eps) {
    for (int j = 0; j < 4; ++j) {
        std::array<Complex, 4> w;
        for (std::size_t k = 0; k < 4; ++k)
            w[k] = z[k + static_cast<std::size_t>(j)];
        Complex a = w[1] - w[0];
        if (std::abs(a) <= eps)
            continue;
        Complex t = (w[2] - w[0]) / a, x = (w[3] - w[0]) / a;
        if (std::abs(t.imag()) <= eps && std::abs(x.imag()) <= eps && t.real() >= -eps && t.real() <= x.real() + eps &&
            x.real() <= 1.0 + eps)
            return true;
    }
    return false;
}

enum class Verdict { In, Out, Band };

// Coarse scan of each vertex against its two far sides, refined by golden section around the best sample.
inline Verdict bad_set(const Shape &z, double in_band = 1e-6, double out_band = 1e-4) {
    double ell = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
        ell = std::max(ell, std::abs(z[k + 1] - z[k]));
    struct Min {
        double d;
        Complex at;
    };
    auto minimize = [](Complex p, Complex a, Complex b) {
        const int n = 512;
        int best = 0;
        double bd = std::abs(p - a);
        for (int i = 1; i <= n; ++i) {
            double d = std::abs(p - (a + (b - a) * (double(i) / n)));
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        double lo = std::max(0, best - 1) / double(n), hi = std::min(n, best + 1) / double(n);
        const double g = (std::sqrt(5.0) - 1) / 2;
        auto f = [&](double u) { return std::abs(p - (a + (b - a) * u)); };
        for (int it = 0; it < 100; ++it) {
            double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
            if (f(m1) < f(m2))
                hi = m2;
            else
                lo = m1;
        }
        double u = 0.5 * (lo + hi);
        Min m{f(u), a + (b - a) * u};
        if (f(0) <= m.d)
            m = {f(0), a};
        if (f(1) <= m.d)
            m = {f(1), b};
        return m;
    };
    std::array<std::pair<Min, Min>, 4> mins;
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 4; ++j) {
        mins[j] = {minimize(z[j], z[j + 1], z[j + 2]), minimize(z[j], z[j + 2], z[j + 3])};
        r = std::min({r, mins[j].first.d, mins[j].second.d});
    }
    bool band = false;
    for (const auto &[a, b] : mins) {
        if (std::abs(a.at - b.at) <= 1e-9 * ell)
            continue;
        double excess = (std::max(a.d, b.d) - r) / ell;
        if (excess <= in_band)
            return Verdict::In;
        if (excess < out_band)
            band = true;
    }
    return band ? Verdict::Band : Verdict::Out;
}

// Eigenvalues of the linearized generators from the closed form, as real 2x2 block spectra.
inline std::vector<Complex> rotation_spectrum(int n, bool reflection) {
    std::vector<Complex> out;
    for (int k = 2; k <= n - 1; ++k) {
        if (reflection) {
            out.emplace_back(1.0, 0.0);
            out.emplace_back(-1.0, 0.0);
        } else {
            Complex e = std::polar(1.0, 2.0 * M_PI * k / n);
            out.push_back(e);
            out.push_back(std::conj(e));
        }
    }
    return out;
}

}  // namespace oracle
