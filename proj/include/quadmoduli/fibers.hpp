#pragma once

#include "quadmoduli/polygon.hpp"

#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

namespace quadmoduli {

// Reference cones carrying the fiber structure; the other ten are reached through the group.
enum class FiberFamily { U, W };

[[nodiscard]] double omega_alpha0(double s);
[[nodiscard]] double omega_lambda(double s, double alpha);
// Lower radial bound of the W base region in direction alpha, asin(s) <= alpha <= pi - asin(s).
[[nodiscard]] double omega_t_alpha(double s, double alpha);

struct OmegaRegion {
    FiberFamily family = FiberFamily::U;
    double s = 0.5;

    [[nodiscard]] double theta() const;
    [[nodiscard]] bool contains(Complex z, double eps = 1e-12) const;
    [[nodiscard]] double x_min() const;
    [[nodiscard]] double x_max() const;
    // Vertical slice {y : x + iy in the region}, empty outside [x_min, x_max].
    [[nodiscard]] std::optional<std::pair<double, double>> slice(double x) const;
    [[nodiscard]] Complex sample(std::mt19937_64 &rng) const;
};

[[nodiscard]] OmegaRegion omega_region(FiberFamily family, double s);

struct Segment {
    Complex a;
    Complex b;
};

// Signed sweep: positive is counter-clockwise.
struct Arc {
    Complex center;
    double radius;
    double start;
    double sweep;
};

using CurvePiece = std::variant<Segment, Arc>;

[[nodiscard]] double piece_length(const CurvePiece &p);
[[nodiscard]] Complex piece_point(const CurvePiece &p, double u);

class FiberCurve {
public:
    FiberFamily family = FiberFamily::U;
    double s = 0.0;
    Complex z4;
    std::vector<CurvePiece> pieces;
    Complex anchor;  // the single point of a collapsed fiber

    [[nodiscard]] double length() const;
    [[nodiscard]] bool collapsed() const { return pieces.empty() || length() < 1e-9; }
    // Arc-length parameter t in [0, 1].
    [[nodiscard]] Complex point(double t) const;
    [[nodiscard]] Complex start() const { return point(0.0); }
    [[nodiscard]] Complex end() const { return point(1.0); }
    // (distance, t) of the closest point on the curve.
    [[nodiscard]] std::pair<double, double> project(Complex z) const;
};

// Fiber over a base point z4: all z3 with [0, 1, z3, z4] in the closure of the reference cone at level s.
[[nodiscard]] FiberCurve gamma_curve(FiberFamily family, double s, Complex z4);

struct FiberCoord {
    double s = 0.0;
    Complex z4;
    double t = 0.0;
};

[[nodiscard]] Shape fiber_to_shape(FiberFamily family, const FiberCoord &c);
[[nodiscard]] FiberCoord shape_to_fiber(FiberFamily family, const Shape &z);

// Slice-preserving map from the level-s base region onto the level-1/2 one.
[[nodiscard]] Complex uniformize_base(FiberFamily family, double s, Complex z);
[[nodiscard]] Complex uniformize_base_inverse(FiberFamily family, double s, Complex w);

// j = 1, 2: curves from the square with h = 1 - t.
[[nodiscard]] Shape transversal_mu(int j, double t);

// Moves a shape to level target_s inside its cone, keeping the uniformized base point and fiber parameter.
[[nodiscard]] Shape cone_flow(const Shape &z, double target_s);

}  // namespace quadmoduli
