#pragma once

#include "quadmoduli/boundary.hpp"
#include "quadmoduli/polygon.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace quadmoduli {

inline constexpr int kSchemaVersion = 1;

// Uniform tail in a box around the unit segment, rejected until simple and positive.
[[nodiscard]] Shape random_quadrilateral(std::mt19937_64 &rng);
// Star-shaped n-gon with jittered angles and radii.
[[nodiscard]] Shape random_polygon(int n, std::mt19937_64 &rng);

struct BoundarySample {
    Shape shape;
    BoundaryKind expected;
};

// Limit of simple positive quadrilaterals along a one-parameter collapse.
[[nodiscard]] BoundarySample random_boundary_shape(std::mt19937_64 &rng);

enum class ScanVerdict { In, Out, Ambiguous };

// Dense scan of every vertex against both sides of its opposite polyline.
[[nodiscard]] ScanVerdict bad_set_scan(const Shape &z, int per_side = 4096, double in_band = 1e-6,
                                       double out_band = 1e-4);

// A level-s shape in the bad set: z3 on the bisector of the angle at z1, moved by a random group element.
[[nodiscard]] Shape random_bad_shape(double s, std::mt19937_64 &rng);

struct SuiteResult {
    std::vector<nlohmann::json> lines;
    bool pass = true;
};

[[nodiscard]] std::vector<std::string> suite_names();
[[nodiscard]] SuiteResult run_suite(const std::string &name, std::uint64_t seed, int threads = 1);

}  // namespace quadmoduli
