#pragma once

#include "quadmoduli/cones.hpp"
#include "quadmoduli/polygon.hpp"

#include <string>
#include <variant>

namespace quadmoduli {

enum class BoundaryKind { Flag, Triangle, Wedge, FourSegmentConvex, FourSegmentNonConvex };

[[nodiscard]] std::string to_string(BoundaryKind k);

// vertex: the 1-based j of the defining incidence.
//   Flag: z_j lies inside L_j away from its vertices; Triangle: z_j = z_{j+1};
//   Wedge: z_j = z_{j+2}; FourSegment: 0.
// Precedence when several hold: Wedge, Triangle, FourSegment, Flag.
struct BoundaryStratum {
    BoundaryKind kind;
    int vertex = 0;
    bool collinear = false;
};

[[nodiscard]] BoundaryStratum classify_boundary(const Shape &z, const Tolerance &tol = {});

// Collinear vertex order test: some cyclic relabeling reads w1 <= w3 <= w4 <= w2 along the line.
[[nodiscard]] bool is_zigzag(const Shape &z, const Tolerance &tol = {});

enum class WedgeSphere { One, Two };

struct PointAtInfinity {
    bool operator==(const PointAtInfinity &) const = default;
};

struct WedgeCoordinate {
    WedgeSphere sphere;
    std::variant<Complex, PointAtInfinity> coord;
    bool wedge_point = false;  // the zig-zag [0, 1, 0, 1], shared by both spheres
};

[[nodiscard]] WedgeCoordinate wedge_coordinate(const Shape &z, const Tolerance &tol = {});
// Accepts representatives with z1 = z2, which reach the points at infinity.
[[nodiscard]] WedgeCoordinate wedge_coordinate(const LabeledPolygon &p, const Tolerance &tol = {});

[[nodiscard]] bool hat_cone_membership(const Shape &z, const ConeLabel &label, const Tolerance &tol = {});
[[nodiscard]] bool hat_cone_membership(const LabeledPolygon &p, const ConeLabel &label, const Tolerance &tol = {});

// Interior shapes: some z_j realizes r on both sides of L_j. Boundary shapes: wedges and zig-zags.
[[nodiscard]] bool in_bad_set(const Shape &z, const Tolerance &tol = {});

enum class DegenerationKind { Segment, Wedge, FiberSlide };

// Segment: target [0,1,x,y] with 0 < x < y < 1, param theta.
// Wedge: target [0,1,0,r e^{i beta}], param t.
// FiberSlide: target [0,1,x,y], slide r in [0, min(x, y)], param s (height of z4).
[[nodiscard]] Shape degenerating_sequence(const Shape &target, DegenerationKind kind, double param, double r = 0.0);
// Closed-form height of the sequence element (FiberSlide: the level s').
[[nodiscard]] double degeneration_height(const Shape &target, DegenerationKind kind, double param, double r = 0.0);

}  // namespace quadmoduli
