#pragma once

#include "quadmoduli/polygon.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace quadmoduli {

// g = sigma^rotation o tau^reflection (tau acts first).
struct DihedralElement {
    int n = 4;
    int rotation = 0;
    bool reflection = false;

    [[nodiscard]] static DihedralElement identity(int n) { return {n, 0, false}; }
    [[nodiscard]] static DihedralElement sigma(int n, int power = 1);
    [[nodiscard]] static DihedralElement tau(int n) { return {n, 0, true}; }

    [[nodiscard]] DihedralElement operator*(const DihedralElement &rhs) const;
    [[nodiscard]] DihedralElement inverse() const;
    [[nodiscard]] bool operator==(const DihedralElement &o) const = default;
    [[nodiscard]] std::string name() const;
};

[[nodiscard]] std::vector<DihedralElement> group_elements(int n);
[[nodiscard]] DihedralElement parse_element(const std::string &text, int n);

// Exact action on labeled vertices: sigma shifts labels, tau reflects and reverses.
[[nodiscard]] LabeledPolygon apply_raw(const DihedralElement &g, const LabeledPolygon &p);
[[nodiscard]] Shape apply(const DihedralElement &g, const Shape &z, const Tolerance &tol = {});

[[nodiscard]] std::vector<Shape> orbit(const Shape &z, const Tolerance &tol = {});

// n = 3: |z3| <= 1, Im z3 > 0, Re z3 >= 1/2.
// n = 4: cl(U1) together with the part of cl(W1) where Im z3 <= Im z4.
// Ties resolve to the lexicographically smallest tail.
[[nodiscard]] Shape canonical_rep(const Shape &z, const Tolerance &tol = {});

[[nodiscard]] Shape regular_polygon(int n);

struct LinearModel {
    int n = 0;
    std::vector<Complex> sigma_eigenvalues;
    std::vector<Complex> tau_coefficients;

    [[nodiscard]] std::vector<Complex> apply_sigma(const std::vector<Complex> &z) const;
    [[nodiscard]] std::vector<Complex> apply_tau(const std::vector<Complex> &z) const;
    // Real 2(n-2) x 2(n-2) matrices in (Re, Im) coordinates.
    [[nodiscard]] Eigen::MatrixXd real_sigma() const;
    [[nodiscard]] Eigen::MatrixXd real_tau() const;
};

[[nodiscard]] LinearModel linear_model(int n);

struct Differential {
    Eigen::MatrixXd jacobian;
    std::vector<Complex> spectrum;
};

// Central differences in chart coordinates at the regular n-gon.
[[nodiscard]] Differential numeric_differential(int n, const DihedralElement &g, double step = 1e-5);

[[nodiscard]] std::vector<Complex> real_spectrum(const Eigen::MatrixXd &m);
// Throws ErrorKind::Numerical if a non-real eigenvalue has no conjugate partner within tol.
void check_conjugate_pairing(const std::vector<Complex> &spectrum, double tol = 1e-7);
// Largest distance in a greedy nearest-neighbour matching of two multisets.
[[nodiscard]] double spectrum_mismatch(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace quadmoduli
