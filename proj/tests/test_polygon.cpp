#include "oracles.hpp"

#include "quadmoduli/polygon.hpp"
#include "quadmoduli/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace quadmoduli;

namespace {

LabeledPolygon poly(std::vector<Complex> v) { return {std::move(v)}; }

const Complex I(0, 1);

}  // namespace

TEST(Simple, Square) { EXPECT_TRUE(is_simple(poly({0, 1, 1.0 + I, I}))); }

TEST(Simple, RepeatedVertex) { EXPECT_FALSE(is_simple(poly({0, 1, 0, 1}))); }

TEST(Simple, CrossingSides) { EXPECT_FALSE(is_simple(poly({0, 1, 0.5 + I, 0.5 - I}))); }

TEST(Simple, AgreesWithCrossingOracle) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 2.5);
    int simple = 0;
    for (int i = 0; i < 20000; ++i) {
        Shape z = Shape::from_tail({Complex(u(rng), u(rng)), Complex(u(rng), u(rng))});
        bool expect = !oracle::segments_meet(z[0], z[1], z[2], z[3]) && !oracle::segments_meet(z[1], z[2], z[3], z[0]);
        EXPECT_EQ(is_simple(z), expect) << to_string(z);
        simple += expect;
    }
    EXPECT_GT(simple, 1000);
}

TEST(Orientation, Square) {
    EXPECT_EQ(orientation(poly({0, 1, 1.0 + I, I})), Orientation::Positive);
    EXPECT_EQ(orientation(poly({0, I, 1.0 + I, 1})), Orientation::Negative);
}

TEST(Orientation, LowerHalfPlaneTriangle) {
    EXPECT_EQ(orientation(poly({0, 1, Complex(0.3, -0.7)})), Orientation::Negative);
    EXPECT_EQ(orientation(poly({0, 1, Complex(0.3, 0.7)})), Orientation::Positive);
}

TEST(Normalize, Scales) {
    Shape z = normalize(poly({0, 0.75, 0.25, 1}));
    EXPECT_NEAR(std::abs(z[2] - 1.0 / 3.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(z[3] - 4.0 / 3.0), 0.0, 1e-15);
}

TEST(Normalize, Idempotent) {
    Shape z = normalize(poly({0, 1, 1.0 + I, I}));
    EXPECT_EQ(chart_distance(normalize(z.polygon()), z), 0.0);
}

TEST(Normalize, ShiftRule) {
    Shape z = normalize(poly({2, 2, 4, Complex(4, 2)}));
    EXPECT_NEAR(chart_distance(z, Shape::from_tail({1.0 + I, 0})), 0.0, 1e-15);
}

TEST(Normalize, SimilarityInvariant) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 100; ++i) {
        Shape z = random_quadrilateral(rng);
        Complex a(u(rng), u(rng)), b(u(rng), u(rng));
        LabeledPolygon p;
        for (auto v : z.vertices())
            p.vertices.push_back(a * v + b);
        EXPECT_LT(chart_distance(normalize(p), z), 1e-12);
    }
}

TEST(Normalize, AllEqualThrows) { EXPECT_THROW((void)normalize(poly({1, 1, 1, 1})), Error); }

TEST(Distance, Polyline) {
    std::vector<Complex> chain{1, 1.0 + I, I};
    EXPECT_DOUBLE_EQ(dist_point_polyline(0, chain), 1.0);
    EXPECT_DOUBLE_EQ(dist_point_segment(0.5 * I, 0, 1), 0.5);
    EXPECT_DOUBLE_EQ(dist_point_segment(-1, 0, 1), 1.0);
}

TEST(Distance, SegmentOracle) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 10000; ++i) {
        Complex p(u(rng), u(rng)), a(u(rng), u(rng)), b(u(rng), u(rng));
        EXPECT_NEAR(dist_point_segment(p, a, b), oracle::seg_dist(p, a, b), 1e-14);
    }
}
