#include "oracles.hpp"

#include "quadmoduli/cones.hpp"
#include "quadmoduli/fibers.hpp"
#include "quadmoduli/height.hpp"
#include "quadmoduli/verify.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace quadmoduli;

namespace {

const Complex I(0, 1);
const double pi = std::numbers::pi;

Complex q1(double s) { return std::polar(1.0, std::asin(s)); }
Complex q2(double s) { return -std::polar(1.0, -std::asin(s)); }

ConeLabel reference(FiberFamily f) { return f == FiberFamily::U ? ConeLabel{Family::U, 1} : ConeLabel{Family::W, 1}; }

}  // namespace

TEST(Omega, Corners) {
    auto r = omega_region(FiberFamily::U, 0.5);
    EXPECT_TRUE(r.contains(q1(0.5), 1e-12));
    EXPECT_TRUE(r.contains(q2(0.5), 1e-12));
    EXPECT_NEAR(r.x_max(), q1(0.5).real(), 1e-15);
    EXPECT_NEAR(r.x_min(), q2(0.5).real(), 1e-15);
    EXPECT_FALSE(r.contains(Complex(0, 0.4)));
}

TEST(Omega, WLowerBound) {
    for (double s : {0.2, 0.5, 0.8}) {
        EXPECT_NEAR(omega_t_alpha(s, pi / 2), s, 1e-15);
        EXPECT_GT(omega_alpha0(s), pi / 2);
    }
    EXPECT_NEAR(omega_alpha0(1e-12), 3 * pi / 4, 1e-9);
}

TEST(Omega, SamplesInside) {
    std::mt19937_64 rng(1);
    for (auto f : {FiberFamily::U, FiberFamily::W}) {
        auto r = omega_region(f, 0.4);
        for (int i = 0; i < 1000; ++i) {
            Complex z = r.sample(rng);
            EXPECT_TRUE(r.contains(z));
            auto sl = r.slice(z.real());
            ASSERT_TRUE(sl.has_value());
            EXPECT_GE(z.imag(), sl->first - 1e-12);
            EXPECT_LE(z.imag(), sl->second + 1e-12);
        }
    }
}

TEST(Gamma, CollapsedAtCorners) {
    for (double s : {0.1, 0.5, 0.9}) {
        for (auto f : {FiberFamily::U, FiberFamily::W}) {
            auto c1 = gamma_curve(f, s, q1(s));
            EXPECT_LT(c1.length(), 1e-9);
            EXPECT_LT(std::abs(c1.point(0.3) - (q1(s) + 1.0)), 1e-9);
            auto c2 = gamma_curve(f, s, q2(s));
            EXPECT_LT(c2.length(), 1e-9);
            EXPECT_LT(std::abs(c2.point(0.7) - (q2(s) + 1.0)), 1e-9);
        }
    }
}

TEST(Gamma, CollapsedOnLowerCurve) {
    for (double s : {0.2, 0.5, 0.8}) {
        auto r = omega_region(FiberFamily::W, s);
        double xa = s * std::cos(omega_alpha0(s)), xb = r.x_min();
        for (int k = 1; k < 10; ++k) {
            double x = xa + (xb - xa) * k / 10.0;
            Complex z(x, r.slice(x)->first);
            EXPECT_LT(gamma_curve(FiberFamily::W, s, z).length(), 1e-9) << s << " " << z;
        }
    }
}

TEST(Gamma, PointsHaveLevelAndLieInClosure) {
    std::mt19937_64 rng(3);
    for (double s : {0.15, 0.5, 0.85})
        for (auto f : {FiberFamily::U, FiberFamily::W}) {
            auto r = omega_region(f, s);
            for (int i = 0; i < 200; ++i) {
                Complex z4 = r.sample(rng);
                auto c = gamma_curve(f, s, z4);
                for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                    Shape z = Shape::from_tail({c.point(t), z4});
                    EXPECT_NEAR(oracle::height(z), s, 1e-10);
                    EXPECT_LE(closure_residual(z, reference(f)), 1e-10);
                }
            }
        }
}

TEST(Fiber, QPointIsCollapsedFiber) {
    for (double s : {0.2, 0.6}) {
        auto q = special_points(s);
        for (double t : {0.0, 0.5, 1.0})
            EXPECT_LT(chart_distance(fiber_to_shape(FiberFamily::U, {s, q1(s), t}), q.q1), 1e-9);
        auto c = shape_to_fiber(FiberFamily::U, q.q1);
        EXPECT_NEAR(c.s, s, 1e-12);
        EXPECT_LT(std::abs(c.z4 - q1(s)), 1e-12);
        EXPECT_EQ(c.t, 0.0);
    }
}

TEST(Fiber, StartOfUFiber) {
    Shape z = fiber_to_shape(FiberFamily::U, {0.5, 0.8 * I, 0.0});
    EXPECT_NEAR(z[2].imag(), 0.5, 1e-14);
    EXPECT_NEAR(oracle::height(z), 0.5, 1e-12);
    EXPECT_NEAR(oracle::seg_dist(z[2], z[3], 0), 0.5, 1e-12);
}

TEST(Fiber, Apex) {
    EXPECT_LT(chart_distance(fiber_to_shape(FiberFamily::U, {1.0, I, 0.3}), regular_polygon(4)), 1e-15);
    EXPECT_EQ(shape_to_fiber(FiberFamily::U, regular_polygon(4)).s, 1.0);
}

TEST(Fiber, RoundTrip) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (double s : {0.1, 0.5, 0.9})
        for (auto f : {FiberFamily::U, FiberFamily::W}) {
            auto r = omega_region(f, s);
            for (int i = 0; i < 300; ++i) {
                FiberCoord c{s, r.sample(rng), u(rng)};
                auto back = shape_to_fiber(f, fiber_to_shape(f, c));
                EXPECT_NEAR(back.s, s, 1e-12);
                EXPECT_LT(std::abs(back.z4 - c.z4), 1e-12);
                EXPECT_NEAR(back.t, c.t, 1e-8);
            }
        }
}

TEST(Fiber, OutsideClosureThrows) {
    Shape z = Shape::from_tail({Complex(1.2, 0.4), Complex(0.2, 0.8)});  // in V3
    EXPECT_THROW((void)shape_to_fiber(FiberFamily::U, z), Error);
}

TEST(Uniformize, Examples) {
    std::mt19937_64 rng(7);
    for (auto f : {FiberFamily::U, FiberFamily::W}) {
        auto r = omega_region(f, 0.5);
        for (int i = 0; i < 100; ++i) {
            Complex z = r.sample(rng);
            EXPECT_LT(std::abs(uniformize_base(f, 0.5, z) - z), 1e-14);
        }
    }
    EXPECT_LT(std::abs(uniformize_base(FiberFamily::U, 0.3, q1(0.3)) - q1(0.5)), 1e-12);
    EXPECT_LT(std::abs(uniformize_base(FiberFamily::U, 0.3, I * 0.65) - 0.75 * I), 1e-12);
}

TEST(Uniformize, InverseAndRegion) {
    std::mt19937_64 rng(8);
    for (double s : {0.1, 0.3, 0.7, 0.9})
        for (auto f : {FiberFamily::U, FiberFamily::W}) {
            auto r = omega_region(f, s), half = omega_region(f, 0.5);
            for (int i = 0; i < 300; ++i) {
                Complex z = r.sample(rng);
                Complex w = uniformize_base(f, s, z);
                EXPECT_TRUE(half.contains(w, 1e-12)) << s << " " << z;
                EXPECT_LT(std::abs(uniformize_base_inverse(f, s, w) - z), 1e-10);
            }
        }
}

TEST(Transversal, Formulas) {
    EXPECT_LT(chart_distance(transversal_mu(1, 0), regular_polygon(4)), 1e-15);
    EXPECT_NEAR(height(transversal_mu(1, 0.4)), 0.6, 1e-12);
    double t = 0.3;
    Shape m2 = transversal_mu(2, t);
    EXPECT_LT(std::abs(m2[2] - (1 - t / 2) * (1.0 + I)), 1e-15);
    EXPECT_LT(std::abs(m2[3] - Complex(t / 2, 1 - t / 2)), 1e-15);
    for (int k = 0; k < 100; ++k) {
        double tk = k / 100.0;
        EXPECT_NEAR(oracle::height(transversal_mu(1, tk)), 1 - tk, 1e-12);
        EXPECT_NEAR(oracle::height(transversal_mu(2, tk)), 1 - tk, 1e-12);
    }
}

TEST(Flow, Examples) {
    Shape sq = regular_polygon(4);
    EXPECT_LT(chart_distance(cone_flow(sq, 1.0), sq), 1e-15);
    EXPECT_LT(chart_distance(cone_flow(transversal_mu(1, 0.4), 1.0), sq), 1e-15);
    EXPECT_NEAR(height(cone_flow(sq, 0.3)), 0.3, 1e-12);
}

TEST(Flow, ReachesTargetAndKeepsCone) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 1000; ++i) {
        Shape z = random_quadrilateral(rng);
        double a = u(rng), b = u(rng);
        Shape w = cone_flow(z, a);
        EXPECT_NEAR(oracle::height(w), a, 1e-9);
        EXPECT_EQ(preferred_label(classify_cone(w)), preferred_label(classify_cone(z))) << to_string(z);
        EXPECT_LT(chart_distance(cone_flow(w, b), cone_flow(z, b)), 1e-7);
        EXPECT_LT(chart_distance(cone_flow(z, height(z)), z), 1e-9);
    }
}

TEST(Flow, ApproachesSquare) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 200; ++i) {
        Shape z = random_quadrilateral(rng);
        for (double eps : {1e-4, 1e-7, 1e-10})
            EXPECT_LT(chart_distance(cone_flow(z, 1.0 - eps), regular_polygon(4)), 4.0 * std::sqrt(eps));
    }
}
