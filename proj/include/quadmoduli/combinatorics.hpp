#pragma once

#include "quadmoduli/cones.hpp"
#include "quadmoduli/dihedral.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace quadmoduli {

enum class EdgeKind { Solid, Removed };

struct IntersectionGraph {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;  // first < second
    std::vector<EdgeKind> kinds;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(names.size()); }
    [[nodiscard]] bool adjacent(int a, int b) const;
    [[nodiscard]] std::vector<int> neighbors(int a) const;
    [[nodiscard]] std::vector<int> solid_neighbors(int a) const;
    [[nodiscard]] int index_of(const std::string &name) const;
    [[nodiscard]] IntersectionGraph without_edge(int a, int b) const;
};

// Vertex i of both graphs below is ConeLabel::from_ordinal(i).
[[nodiscard]] IntersectionGraph level_graph();
[[nodiscard]] IntersectionGraph boundary_graph();

// Simple cycles of length 3 and 4, each as a vertex sequence.
[[nodiscard]] std::vector<std::vector<int>> cycles(const IntersectionGraph &g, int length);

using Vec3 = std::array<double, 3>;

struct CuboctahedronModel {
    std::array<Vec3, 12> vertices;
    IntersectionGraph graph;

    // Indices of the cones C_v containing p (max of <p, v> attained within tol).
    [[nodiscard]] std::vector<int> cones_containing(const Vec3 &p, double tol = 1e-12) const;
    [[nodiscard]] int vertex_index(const Vec3 &v) const;
};

[[nodiscard]] CuboctahedronModel cuboctahedron_model();

// Sphere-inversion composed generators; throws at the origin.
[[nodiscard]] Vec3 model_action(const DihedralElement &g, const Vec3 &p);

// Vertex bijection a -> b preserving adjacency, if any.
[[nodiscard]] std::optional<std::vector<int>> graph_isomorphic(const IntersectionGraph &a, const IntersectionGraph &b);
// Calls visit for every isomorphism; stops early when visit returns false.
void for_each_isomorphism(const IntersectionGraph &a, const IntersectionGraph &b,
                          const std::function<bool(const std::vector<int> &)> &visit);

struct WitnessRecord {
    std::string kind;  // edge, triangle, square, all, non_edge
    std::vector<ConeLabel> claimed;
    Shape witness;
    std::array<double, 12> residuals{};
    std::size_t samples = 0;
    std::size_t violations = 0;
    bool pass = false;
    std::string note;
};

struct VerificationReport {
    double s = 0.0;
    std::vector<WitnessRecord> records;

    [[nodiscard]] bool pass() const;
    [[nodiscard]] std::size_t count(const std::string &kind, bool only_passing) const;
    [[nodiscard]] std::vector<nlohmann::json> json_lines() const;
};

[[nodiscard]] VerificationReport verify_level_decomposition(double s, int n_samples, const Tolerance &tol,
                                                            std::uint64_t seed, int threads = 1);

// Random shape of height s in cl(label), drawn through fiber coordinates.
[[nodiscard]] Shape sample_level_shape(double s, const ConeLabel &label, std::mt19937_64 &rng);

}  // namespace quadmoduli
