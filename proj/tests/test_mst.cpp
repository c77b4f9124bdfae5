#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "stree/mst.hpp"

using namespace stree;

namespace {

// Union-find check that the edges span all n vertices without a cycle.
bool spans(const SpanningTree& t, std::size_t n) {
    if (t.edges.size() + 1 != n)
        return false;
    std::vector<std::size_t> up(n);
    std::iota(up.begin(), up.end(), std::size_t{0});
    auto root = [&](std::size_t v) {
        while (up[v] != v)
            v = up[v] = up[up[v]];
        return v;
    };
    for (const auto& [a, b] : t.edges) {
        const auto ra = root(a), rb = root(b);
        if (ra == rb)
            return false;
        up[ra] = rb;
    }
    return true;
}

} // namespace

TEST(Prim, UnitSquare) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto t = prim(pts);
    EXPECT_NEAR(t.length, 3.0, 1e-12);
    EXPECT_TRUE(spans(t, 4));
}

TEST(Prim, TwoPointsAndTooFew) {
    for (const auto& few : {std::vector<Point>{}, std::vector<Point>{{5, 5}}}) {
        try {
            prim(few);
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::TooFewPoints);
        }
    }
    const auto two = prim(std::vector<Point>{{0, 0}, {3, 4}});
    EXPECT_EQ(two.edges.size(), 1u);
    EXPECT_DOUBLE_EQ(two.length, 5.0);
}

TEST(Prim, MatchesPrueferEnumeration) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    for (int t = 0; t < 100; ++t) {
        const auto pts = oracle::uniform_points(rng, size(rng));
        const auto tree = prim(pts);
        EXPECT_TRUE(spans(tree, pts.size()));
        const double want = oracle::exhaustive_mst_length(pts);
        EXPECT_NEAR(tree.length, want, 1e-9 * want);
    }
}

TEST(Prim, LengthEqualsEdgeSum) {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 20; ++t) {
        const auto pts = oracle::uniform_points(rng, 200);
        const auto tree = prim(pts);
        double sum = 0.0;
        for (const auto& [a, b] : tree.edges)
            sum += oracle::euclid(pts[a], pts[b]);
        EXPECT_NEAR(tree.length, sum, 1e-9 * sum);
    }
}

TEST(Prim, RigidMotionAndPermutationInvariantLength) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 50; ++t) {
        auto pts = oracle::uniform_points(rng, 40);
        const double base = prim(pts).length;
        std::vector<Point> moved;
        for (const Point& p : pts)
            moved.push_back(oracle::rigid(p, 0.1 * t, {-50.0, 30.0}));
        EXPECT_NEAR(prim(moved).length, base, 1e-9 * base);
        std::shuffle(pts.begin(), pts.end(), rng);
        EXPECT_NEAR(prim(pts).length, base, 1e-9 * base);
    }
}

TEST(Prim, ParallelEqualsSerial) {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 10; ++t) {
        const auto pts = oracle::uniform_points(rng, 500);
        EXPECT_EQ(prim(pts), serial::prim(pts));
    }
    // Many equal distances: tie-breaking must agree.
    std::vector<Point> grid;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            grid.push_back({double(i), double(j)});
    EXPECT_EQ(prim(grid), serial::prim(grid));
}

TEST(GpInterval, PrintedLprimIsRounded) {
    // 211.1398 is a four-decimal display; the formula applied to it gives
    // 182.852431. An unrounded Lprim that displays the same reproduces 182.8525.
    EXPECT_NEAR(gp_interval(211.1398).lower, 182.8524305, 1e-6);
    const auto b = gp_interval(211.13984);
    EXPECT_EQ(std::round(b.lower * 1e4) / 1e4, 182.8525);
    EXPECT_EQ(std::round(b.upper * 1e4) / 1e4, 211.1398);
}

TEST(GpInterval, LinearInLprim) {
    for (double l : {0.5, 1.0, 3.0, 1e6}) {
        const auto b = gp_interval(l);
        EXPECT_NEAR(b.lower, l * std::sqrt(3.0) / 2.0, 1e-12 * l);
        EXPECT_EQ(b.upper, l);
    }
}

TEST(GpInterval, NonPositiveRejected) {
    for (double l : {0.0, -1.0}) {
        try {
            gp_interval(l);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::NonPositiveLength);
        }
    }
}
