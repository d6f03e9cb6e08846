#include "quadmoduli/combinatorics.hpp"
#include "quadmoduli/fibers.hpp"
#include "quadmoduli/height.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace quadmoduli;

namespace {

int idx(const std::string &name) { return ConeLabel::parse(name).ordinal(); }

std::vector<int> ids(std::initializer_list<const char *> names) {
    std::vector<int> out;
    for (auto n : names)
        out.push_back(idx(n));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(LevelGraph, Neighbors) {
    auto g = level_graph();
    EXPECT_EQ(g.size(), 12);
    EXPECT_EQ(g.edges.size(), 24u);
    EXPECT_EQ(g.neighbors(idx("U1")), ids({"V1", "W1", "V3", "W4"}));
    EXPECT_EQ(g.neighbors(idx("W1")), ids({"U1", "V1", "U2", "V4"}));
    for (int v = 0; v < 12; ++v)
        EXPECT_EQ(g.neighbors(v).size(), 4u);
}

TEST(LevelGraph, EachEdgeInOneTriangleAndOneSquare) {
    auto g = level_graph();
    auto tri = cycles(g, 3), sq = cycles(g, 4);
    EXPECT_EQ(tri.size(), 8u);
    EXPECT_EQ(sq.size(), 6u);
    for (const auto &[a, b] : g.edges) {
        auto on = [&](const std::vector<int> &c) {
            for (std::size_t k = 0; k < c.size(); ++k) {
                int x = c[k], y = c[(k + 1) % c.size()];
                if ((x == a && y == b) || (x == b && y == a))
                    return true;
            }
            return false;
        };
        EXPECT_EQ(std::count_if(tri.begin(), tri.end(), on), 1);
        EXPECT_EQ(std::count_if(sq.begin(), sq.end(), on), 1);
    }
    std::set<std::vector<int>> squares;
    for (auto c : sq) {
        std::sort(c.begin(), c.end());
        squares.insert(c);
    }
    EXPECT_TRUE(squares.count(ids({"U1", "V1", "U3", "V3"})));
    EXPECT_TRUE(squares.count(ids({"W1", "V1", "U2", "W2"})));
}

TEST(LevelGraph, InvariantUnderGroup) {
    auto g = level_graph();
    for (const auto &e : group_elements(4))
        for (const auto &[a, b] : g.edges)
            EXPECT_TRUE(g.adjacent(act(e, ConeLabel::from_ordinal(a)).ordinal(), act(e, ConeLabel::from_ordinal(b)).ordinal()));
}

TEST(BoundaryGraph, SolidEdges) {
    auto b = boundary_graph();
    EXPECT_EQ(b.solid_neighbors(idx("W1")), ids({"U2", "V4"}));
    EXPECT_EQ(b.solid_neighbors(idx("U1")), ids({"V1", "W4", "V3"}));
    auto g = level_graph();
    ASSERT_EQ(b.edges, g.edges);
    int removed = 0;
    for (std::size_t k = 0; k < b.edges.size(); ++k) {
        if (b.edges[k] == std::make_pair(std::min(idx("U1"), idx("W1")), std::max(idx("U1"), idx("W1")))) {
            EXPECT_EQ(b.kinds[k], EdgeKind::Removed);
        }
        removed += b.kinds[k] == EdgeKind::Removed;
    }
    EXPECT_EQ(removed, 8);
}

TEST(BoundaryGraph, KindIsEquivariant) {
    auto b = boundary_graph();
    for (const auto &e : group_elements(4))
        for (std::size_t k = 0; k < b.edges.size(); ++k) {
            int x = act(e, ConeLabel::from_ordinal(b.edges[k].first)).ordinal();
            int y = act(e, ConeLabel::from_ordinal(b.edges[k].second)).ordinal();
            auto it = std::find(b.edges.begin(), b.edges.end(), std::make_pair(std::min(x, y), std::max(x, y)));
            ASSERT_NE(it, b.edges.end());
            EXPECT_EQ(b.kinds[static_cast<std::size_t>(it - b.edges.begin())], b.kinds[k]);
        }
}

TEST(Model, Cones) {
    auto m = cuboctahedron_model();
    EXPECT_EQ(m.vertices.size(), 12u);
    EXPECT_EQ(m.graph.edges.size(), 24u);
    std::array<int, 12> edges_per_cone{};
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1})
                for (std::size_t axis = 0; axis < 3; ++axis) {
                    Vec3 p{double(a), double(b), double(c)};
                    if (p[axis] < 0)
                        continue;
                    Vec3 q = p, mid = p;
                    q[axis] = -1;
                    mid[axis] = 0;
                    auto cp = m.cones_containing(p), cq = m.cones_containing(q), cm = m.cones_containing(mid);
                    for (int k : cm)
                        if (std::count(cp.begin(), cp.end(), k) && std::count(cq.begin(), cq.end(), k))
                            ++edges_per_cone[static_cast<std::size_t>(k)];
                }
    for (int n : edges_per_cone)
        EXPECT_EQ(n, 1);
    EXPECT_EQ(m.cones_containing({1, 1, 1}).size(), 3u);
    EXPECT_EQ(m.cones_containing({1, 0, 0}).size(), 4u);
    EXPECT_EQ(m.cones_containing({0.3, 0.9, 0.1}).size(), 1u);
}

TEST(Model, ActionRelations) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3, 3);
    auto S = DihedralElement::sigma(4), T = DihedralElement::tau(4);
    for (int i = 0; i < 1000; ++i) {
        Vec3 p{u(rng), u(rng), u(rng)};
        auto close = [&](const Vec3 &a) {
            double scale = std::max({1.0, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
            return std::abs(a[0] - p[0]) + std::abs(a[1] - p[1]) + std::abs(a[2] - p[2]) <= 1e-12 * scale;
        };
        EXPECT_TRUE(close(model_action(T, model_action(T, p))));
        Vec3 q = p;
        for (int k = 0; k < 4; ++k)
            q = model_action(S, q);
        EXPECT_TRUE(close(q));
        EXPECT_TRUE(close(model_action(T * S, model_action(T * S, p))));
        EXPECT_TRUE(close(model_action(S * T, p)) == close(model_action(S, model_action(T, p))));
    }
    EXPECT_THROW((void)model_action(S, {0, 0, 0}), Error);
}

TEST(Model, IsomorphicAndEquivariant) {
    auto g = level_graph();
    auto m = cuboctahedron_model();
    auto iso = graph_isomorphic(g, m.graph);
    ASSERT_TRUE(iso.has_value());
    for (const auto &[a, b] : g.edges)
        EXPECT_TRUE(m.graph.adjacent((*iso)[static_cast<std::size_t>(a)], (*iso)[static_cast<std::size_t>(b)]));
    for (int v = 0; v < 12; ++v)
        EXPECT_EQ(m.graph.neighbors((*iso)[static_cast<std::size_t>(v)]).size(), 4u);
    EXPECT_FALSE(graph_isomorphic(g.without_edge(g.edges[0].first, g.edges[0].second), m.graph).has_value());

    auto image = [&](const DihedralElement &e, int v) {
        auto c = m.cones_containing(model_action(e, m.vertices[static_cast<std::size_t>(v)]));
        return c.size() == 1 ? c[0] : -1;
    };
    int equivariant = 0;
    for_each_isomorphism(g, m.graph, [&](const std::vector<int> &phi) {
        bool ok = true;
        for (const auto &e : {DihedralElement::sigma(4), DihedralElement::tau(4)})
            for (int x = 0; x < 12 && ok; ++x)
                ok = image(e, phi[static_cast<std::size_t>(x)]) ==
                     phi[static_cast<std::size_t>(act(e, ConeLabel::from_ordinal(x)).ordinal())];
        equivariant += ok;
        return true;
    });
    EXPECT_GT(equivariant, 0);
}

TEST(Verification, PassesAndIsDeterministic) {
    auto a = verify_level_decomposition(0.4, 100, {}, 11, 4);
    auto b = verify_level_decomposition(0.4, 100, {}, 11, 1);
    EXPECT_TRUE(a.pass());
    EXPECT_EQ(a.count("edge", true), 24u);
    EXPECT_EQ(a.count("triangle", true), 8u);
    EXPECT_EQ(a.count("square", true), 6u);
    EXPECT_EQ(a.count("all", true), 2u);
    EXPECT_EQ(a.count("non_edge", false), 84u);
    auto ja = a.json_lines(), jb = b.json_lines();
    ASSERT_EQ(ja.size(), jb.size());
    for (std::size_t k = 0; k < ja.size(); ++k)
        EXPECT_EQ(ja[k].dump(), jb[k].dump());
    EXPECT_EQ(ja.front()["schema"], 1);
}

TEST(Verification, NamedWitnesses) {
    const double s = 0.35;
    auto rep = verify_level_decomposition(s, 0, {}, 1, 1);
    for (const auto &r : rep.records) {
        if (r.kind == "edge" && r.claimed == std::vector<ConeLabel>{{Family::U, 1}, {Family::V, 1}}) {
            // trapezoid: z3 and z4 both at height s above the longest side
            EXPECT_NEAR(r.witness[3].imag(), s, 1e-12);
            EXPECT_NEAR(r.witness[2].imag(), s, 1e-12);
        }
        if (r.kind == "triangle" &&
            r.claimed == std::vector<ConeLabel>{{Family::U, 1}, {Family::V, 1}, {Family::W, 1}}) {
            Complex z3 = r.witness[2], z4 = r.witness[3];
            EXPECT_NEAR(z3.imag(), s, 1e-12);
            EXPECT_NEAR(std::abs(std::arg(z3) - std::arg(z4) / 2), 0.0, 1e-9);
        }
    }
}

TEST(Verification, RejectsBadLevel) {
    EXPECT_THROW((void)verify_level_decomposition(0.0, 10, {}, 1), Error);
    EXPECT_THROW((void)verify_level_decomposition(1.0, 10, {}, 1), Error);
}
