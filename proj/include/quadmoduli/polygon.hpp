#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadmoduli {

using Complex = std::complex<double>;

// eq_tol: geometric coincidence, relative to the polygon scale.
// class_tol: residual threshold for cone and stratum membership.
struct Tolerance {
    double eq_tol = 1e-12;
    double class_tol = 1e-8;
};

enum class ErrorKind {
    InvalidInput,
    Degenerate,
    Domain,
    Membership,
    Unsupported,
    Numerical,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct LabeledPolygon {
    std::vector<Complex> vertices;

    [[nodiscard]] std::size_t n() const noexcept { return vertices.size(); }
    [[nodiscard]] Complex operator[](std::size_t i) const { return vertices[i % vertices.size()]; }
};

// Similarity class in the chart z -> (z - z1)/(z2 - z1): vertices are [0, 1, z3, ..., zn].
class Shape {
public:
    Shape() = default;

    static Shape from_tail(std::vector<Complex> tail);
    // Requires the first two vertices to be exactly 0 and 1.
    static Shape from_vertices(std::vector<Complex> vertices);

    [[nodiscard]] std::size_t n() const noexcept { return v_.size(); }
    // 0-based, taken cyclically.
    [[nodiscard]] Complex operator[](std::size_t i) const { return v_[i % v_.size()]; }
    [[nodiscard]] const std::vector<Complex> &vertices() const noexcept { return v_; }
    [[nodiscard]] std::span<const Complex> tail() const { return {v_.data() + 2, v_.size() - 2}; }
    [[nodiscard]] LabeledPolygon polygon() const { return {v_}; }

private:
    std::vector<Complex> v_;
};

enum class Orientation { Positive, Negative, Degenerate };

[[nodiscard]] double cross(Complex a, Complex b) noexcept;
[[nodiscard]] double signed_area(std::span<const Complex> vertices) noexcept;
[[nodiscard]] double diameter(std::span<const Complex> vertices) noexcept;

[[nodiscard]] Orientation orientation(const LabeledPolygon &p, const Tolerance &tol = {});
[[nodiscard]] bool is_simple(const LabeledPolygon &p, const Tolerance &tol = {});
[[nodiscard]] inline bool is_simple(const Shape &z, const Tolerance &tol = {}) { return is_simple(z.polygon(), tol); }
[[nodiscard]] inline Orientation orientation(const Shape &z, const Tolerance &tol = {}) {
    return orientation(z.polygon(), tol);
}

// Cyclically shifts by the smallest k with z_{1+k} != z_{2+k}, then maps to the chart.
[[nodiscard]] Shape normalize(const LabeledPolygon &p, const Tolerance &tol = {});
// Chart map without the shift; throws when z1 == z2.
[[nodiscard]] Shape normalize_unshifted(const LabeledPolygon &p);

struct SegmentFoot {
    double distance;
    Complex foot;
    double param;
};

[[nodiscard]] SegmentFoot closest_on_segment(Complex p, Complex a, Complex b) noexcept;
[[nodiscard]] double dist_point_segment(Complex p, Complex a, Complex b) noexcept;
// Distance to the polyline through the given vertices (open chain).
[[nodiscard]] double dist_point_polyline(Complex p, std::span<const Complex> chain);

[[nodiscard]] bool segments_intersect(Complex a, Complex b, Complex c, Complex d, double eps = 0.0) noexcept;

// Chart max-norm distance between two shapes with the same n.
[[nodiscard]] double chart_distance(const Shape &a, const Shape &b);

[[nodiscard]] std::string to_string(const Shape &z);

}  // namespace quadmoduli
