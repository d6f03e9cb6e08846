#include "oracles.hpp"

#include "quadmoduli/dihedral.hpp"
#include "quadmoduli/height.hpp"
#include "quadmoduli/verify.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace quadmoduli;

namespace {

const Complex I(0, 1);

Shape rhombus(double th) {
    Complex e = std::polar(1.0, th);
    return Shape::from_tail({1.0 + e, e});
}

}  // namespace

TEST(Height, Square) {
    auto rep = height_report(Shape::from_tail({1.0 + I, I}));
    EXPECT_EQ(rep.h, 1.0);
    EXPECT_EQ(rep.ell, 1.0);
    EXPECT_EQ(rep.r, 1.0);
    EXPECT_EQ(rep.ell_sides.size(), 4u);
    EXPECT_FALSE(rep.ell_unique);
}

TEST(Height, Rhombus) {
    for (double th : {std::numbers::pi / 12, std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3})
        EXPECT_NEAR(height(rhombus(th)), std::sin(th), 1e-12);
}

TEST(Height, FourSegment) { EXPECT_EQ(height(Shape::from_tail({1.0 / 3.0, 4.0 / 3.0})), 0.0); }

TEST(Height, MatchesOracle) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20000; ++i) {
        Shape z = random_quadrilateral(rng);
        EXPECT_NEAR(height(z), oracle::height(z), 1e-14);
    }
}

TEST(Height, ReportPairsAttainR) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 2000; ++i) {
        Shape z = random_quadrilateral(rng);
        auto rep = height_report(z);
        ASSERT_FALSE(rep.r_pairs.empty());
        for (const auto &p : rep.r_pairs)
            EXPECT_NEAR(std::abs(z[static_cast<std::size_t>(p.vertex - 1)] - p.foot), rep.r, 1e-12);
        EXPECT_EQ(rep.r_unique, rep.r_pairs.size() == 1);
    }
}

TEST(Height, VertexSideTable) {
    Shape z = Shape::from_tail({Complex(1.2, 0.4), Complex(0.2, 0.8)});
    auto t = vertex_side_table(z);
    for (std::size_t k = 0; k < 8; ++k) {
        int j = t[k].vertex, s = t[k].side;
        EXPECT_EQ(j, static_cast<int>(k / 2) + 1);
        EXPECT_EQ((s - j + 4) % 4, static_cast<int>(k % 2) + 1);
        auto a = z[static_cast<std::size_t>(s - 1)], b = z[static_cast<std::size_t>(s)];
        EXPECT_NEAR(t[k].distance, oracle::seg_dist(z[static_cast<std::size_t>(j - 1)], a, b), 1e-15);
    }
}

TEST(Height, UnsupportedN) { EXPECT_THROW((void)height(Shape::from_tail({I})), Error); }

TEST(TriangleHeight, Examples) {
    Complex eq(0.5, std::sqrt(3.0) / 2);
    EXPECT_NEAR(triangle_height(eq), std::sqrt(3.0) / 2, 1e-15);
    EXPECT_EQ(triangle_height(Complex(0.4, 0)), 0.0);
    EXPECT_NEAR(triangle_height(Complex(0.5, 0.5)), oracle::triangle_height(Complex(0.5, 0.5)), 1e-15);
}

TEST(TriangleHeight, MaximumAtEquilateral) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-2, 3), v(0.01, 3);
    for (int i = 0; i < 20000; ++i) {
        Complex z(u(rng), v(rng));
        double h = triangle_height(z);
        EXPECT_NEAR(h, oracle::triangle_height(z), 1e-14);
        EXPECT_LE(h, std::sqrt(3.0) / 2 + 1e-15);
    }
}

TEST(TriangleHeight, LevelCurves) {
    for (double s : {std::sin(std::numbers::pi / 4), 0.5, std::sin(std::numbers::pi / 12)}) {
        auto c = triangle_level_curve(s, 360);
        ASSERT_EQ(c.size(), 360u);
        for (auto z : c)
            EXPECT_NEAR(oracle::triangle_height(z), s, 1e-9);
    }
}

TEST(Height, DihedralInvariant) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 5000; ++i) {
        Shape z = random_quadrilateral(rng);
        double h = height(z);
        for (const auto &g : group_elements(4))
            EXPECT_NEAR(height(apply(g, z)), h, 1e-12);
    }
}
