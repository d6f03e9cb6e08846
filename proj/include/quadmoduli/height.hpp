#pragma once

#include "quadmoduli/polygon.hpp"

#include <array>
#include <vector>

namespace quadmoduli {

// Indices are 1-based. Side k joins z_k and z_{k+1}.
struct VertexSide {
    int vertex;
    int side;
    double distance;
    Complex foot;
};

// The eight pairs (z_j, side) with the side not incident to z_j: sides j+1 and j+2.
[[nodiscard]] std::array<VertexSide, 8> vertex_side_table(const Shape &z);
[[nodiscard]] std::array<double, 4> side_lengths(const Shape &z);

struct RPair {
    int vertex;
    int side;
    Complex foot;
};

struct HeightReport {
    double ell = 0.0;
    std::vector<int> ell_sides;
    double r = 0.0;
    // Distinct pairs {z_j, w}; the same unordered pair reached from both ends is listed once.
    std::vector<RPair> r_pairs;
    double h = 0.0;
    bool ell_unique = false;
    bool r_unique = false;
};

[[nodiscard]] HeightReport height_report(const Shape &z, const Tolerance &tol = {});
[[nodiscard]] double height(const Shape &z);

// n = 3: smallest vertex-to-opposite-side distance over the longest side.
[[nodiscard]] double triangle_height(const Shape &z);
[[nodiscard]] double triangle_height(Complex z3);

// Closed level curve {h = s} in the triangle chart, traced by rays from the equilateral point.
[[nodiscard]] std::vector<Complex> triangle_level_curve(double s, int samples = 720);

}  // namespace quadmoduli
