#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "stree/hull.hpp"

using namespace stree;

namespace {

std::set<std::size_t> as_set(const IndexList& v) { return {v.begin(), v.end()}; }

const double kPi = std::acos(-1.0);

} // namespace

TEST(ConvexHull, SquareWithCentre) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const auto h = convex_hull(pts);
    EXPECT_EQ(h, (IndexList{0, 1, 2, 3}));
    const auto sh = steiner_hull(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}});
    EXPECT_EQ(sh.vertex_indices.size(), 3u);
}

TEST(ConvexHull, Triangle) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}};
    EXPECT_EQ(as_set(convex_hull(pts)), (std::set<std::size_t>{0, 1, 2}));
}

TEST(ConvexHull, EdgePointsExcluded) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}};
    EXPECT_EQ(as_set(convex_hull(pts)), (std::set<std::size_t>{0, 2, 3, 4}));
}

TEST(ConvexHull, CollinearIsDegenerate) {
    const std::vector<Point> pts{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    try {
        convex_hull(pts);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DegenerateInput);
    }
}

TEST(ConvexHull, MatchesHalfplaneBruteForce) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const auto pts = oracle::uniform_points(rng, 3 + t % 98);
        const auto h = convex_hull(pts);
        EXPECT_EQ(as_set(h), oracle::hull_vertices(pts));
        // Counterclockwise and convex: every turn is a left turn.
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Point& a = pts[h[i]];
            const Point& b = pts[h[(i + 1) % h.size()]];
            const Point& c = pts[h[(i + 2) % h.size()]];
            EXPECT_GT(cross_sign(b - a, c - b), 0.0);
        }
    }
}

TEST(Lune, SplitsEdgeThroughLuneTerminal) {
    const std::vector<Point> pts{{0, 0}, {4, 0}, {2, -3}, {2, 0.5}};
    // Check membership independently.
    EXPECT_LT(oracle::euclid(pts[3], pts[0]), 4.0);
    EXPECT_LT(oracle::euclid(pts[3], pts[1]), 4.0);
    EXPECT_TRUE(in_lune(pts[0], pts[1], pts[3]));

    const IndexList tri{0, 2, 1}; // counterclockwise: (0,0) -> (2,-3) -> (4,0)
    const auto refined = lune_refine(pts, tri);
    EXPECT_EQ(refined, (IndexList{0, 2, 1, 3}));
    EXPECT_TRUE(is_simple_polygon(pts, refined));
}

TEST(Lune, FixedPointWithoutLuneTerminals) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const IndexList sq{0, 1, 2, 3};
    EXPECT_EQ(lune_refine(pts, sq), sq);
}

TEST(Lune, BoundaryPointStaysOutside) {
    // x is at distance exactly |pq| from q.
    EXPECT_FALSE(in_lune({0, 0}, {1, 0}, {0, 0}));
    EXPECT_FALSE(in_lune({0, 0}, {2, 0}, {0, 0}));
    EXPECT_FALSE(in_lune({0, 0}, {2, 0}, {4, 0}));
}

TEST(Lune, SquareWithCentreSplitsExactlyOneEdge) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    // The centre lies in every edge lune.
    for (int e = 0; e < 4; ++e)
        EXPECT_TRUE(in_lune(pts[e], pts[(e + 1) % 4], pts[4]));
    const auto refined = lune_refine(pts, convex_hull(pts));
    EXPECT_EQ(refined.size(), 5u);
    EXPECT_TRUE(is_simple_polygon(pts, refined));
    EXPECT_EQ(as_set(refined), (std::set<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Lune, RandomRefinementsStaySimpleAndCoverTerminals) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 60; ++t) {
        const auto pts = oracle::uniform_points(rng, 5 + t % 25);
        const auto hull = convex_hull(pts);
        const auto refined = lune_refine(pts, hull);
        EXPECT_TRUE(is_simple_polygon(pts, refined));
        // Superset of the input vertices.
        const auto got = as_set(refined);
        for (std::size_t v : hull)
            EXPECT_TRUE(got.count(v));
        // Every terminal lies inside or on the polygon.
        for (const Point& p : pts)
            EXPECT_TRUE(point_in_polygon(pts, refined, p, 1e-9));
        // No lune of the final polygon contains an off-polygon terminal,
        // unless taking it would break simplicity.
        EXPECT_EQ(lune_refine(pts, refined), refined);
    }
}

TEST(Markers, Square) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    EXPECT_EQ(mark_angles(pts, IndexList{0, 1, 2, 3}), "1111");
    // Orientation does not matter.
    EXPECT_EQ(mark_angles(pts, IndexList{3, 2, 1, 0}), "1111");
}

TEST(Markers, RegularHexagonTiesGoToOne) {
    std::vector<Point> pts;
    for (int k = 0; k < 6; ++k)
        pts.push_back({std::cos(k * kPi / 3), std::sin(k * kPi / 3)});
    EXPECT_EQ(mark_angles(pts, IndexList{0, 1, 2, 3, 4, 5}), "111111");
}

TEST(Markers, ObtuseApex) {
    // Isosceles triangle with a 150 degree apex at the origin.
    const double half = 75.0 * kPi / 180.0;
    const std::vector<Point> pts{{0, 0}, {std::cos(half), -std::sin(half)}, {std::cos(half), std::sin(half)}};
    double angles[3];
    for (int i = 0; i < 3; ++i)
        angles[i] = oracle::angle_deg(pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]);
    EXPECT_NEAR(angles[0], 150.0, 1e-9);
    EXPECT_NEAR(angles[1], 15.0, 1e-9);
    EXPECT_EQ(mark_angles(pts, IndexList{0, 1, 2}), "011");
}

TEST(Markers, ZeroCountMatchesKnownReflexAngles) {
    // An L-shaped hexagon: one 270 degree vertex, five 90 degree ones.
    const std::vector<Point> pts{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    EXPECT_EQ(mark_angles(pts, IndexList{0, 1, 2, 3, 4, 5}), "111011");
    // A polygon with a 130 degree vertex.
    const double a = 50.0 * kPi / 180.0;
    const std::vector<Point> kite{{0, 0}, {1, 0}, {1 + std::cos(a), std::sin(a)}, {0, 2}};
    const std::string m = mark_angles(kite, IndexList{0, 1, 2, 3});
    EXPECT_EQ(m[1], '0');
    EXPECT_EQ(std::count(m.begin(), m.end(), '0'), 1);
}

TEST(SteinerHull, PartitionsTerminals) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        const auto pts = oracle::uniform_points(rng, 4 + t);
        const auto sh = steiner_hull(pts);
        EXPECT_EQ(sh.markers.size(), sh.vertex_indices.size());
        std::set<std::size_t> all = as_set(sh.vertex_indices);
        EXPECT_EQ(all.size(), sh.vertex_indices.size());
        for (std::size_t i : sh.interior_indices)
            EXPECT_TRUE(all.insert(i).second);
        EXPECT_EQ(all.size(), pts.size());
    }
}
