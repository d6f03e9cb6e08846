#pragma once

#include "quadmoduli/dihedral.hpp"
#include "quadmoduli/polygon.hpp"

#include <array>
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace quadmoduli {

enum class Family { U = 0, V = 1, W = 2 };

struct ConeLabel {
    Family family = Family::U;
    int index = 1;  // 1..4, the side realizing the longest length

    [[nodiscard]] auto operator<=>(const ConeLabel &) const = default;
    [[nodiscard]] std::string name() const;
    [[nodiscard]] static ConeLabel parse(const std::string &text);
    // 0..11, U1..U4, V1..V4, W1..W4
    [[nodiscard]] int ordinal() const noexcept { return static_cast<int>(family) * 4 + index - 1; }
    [[nodiscard]] static ConeLabel from_ordinal(int k);
};

[[nodiscard]] std::array<ConeLabel, 12> all_labels();

// The two (vertex, side) pairs whose distance realizing r places a shape in the cone.
[[nodiscard]] std::array<std::pair<int, int>, 2> cone_clauses(const ConeLabel &label);

// Label permutation induced by the group: sigma lowers the index by one, tau exchanges U_j and V_{2-j}.
[[nodiscard]] ConeLabel act(const DihedralElement &g, const ConeLabel &label);
// g with act(g, U1) = label for U/V labels and act(g, W1) = label for W labels.
[[nodiscard]] DihedralElement reference_element(const ConeLabel &label);
[[nodiscard]] ConeLabel reference_label(const ConeLabel &label);

struct ConeMembership {
    std::vector<ConeLabel> open_labels;
    std::vector<ConeLabel> closure_labels;
};

// Relative residual of the defining equalities of cl(label); zero on the closure.
[[nodiscard]] double closure_residual(const Shape &z, const ConeLabel &label);
[[nodiscard]] bool in_closure(const Shape &z, const ConeLabel &label, const Tolerance &tol = {});
[[nodiscard]] ConeMembership classify_cone(const Shape &z, const Tolerance &tol = {});
// Priority U < V < W, then the lowest index.
[[nodiscard]] ConeLabel preferred_label(const ConeMembership &m);

struct SpecialPoints {
    Shape q1;
    Shape q2;
};

[[nodiscard]] SpecialPoints special_points(double s);

// n = 3: indices of the sides realizing the maximal length.
[[nodiscard]] std::vector<int> classify_triangle_region(const Shape &z, const Tolerance &tol = {});

}  // namespace quadmoduli
