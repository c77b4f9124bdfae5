#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "stree/order.hpp"

using namespace stree;

namespace {

bool is_permutation_of_n(const Permutation& p, std::size_t n) {
    Permutation sorted = p;
    std::sort(sorted.begin(), sorted.end());
    Permutation id(n);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return sorted == id;
}

} // namespace

TEST(Rprim, ProjectionOrderOnLine) {
    const std::vector<Point> pts{{3, 0}, {0, 0}, {1, 0}, {2, 0}};
    EXPECT_EQ(rprim_order(pts), (Permutation{0, 3, 2, 1}));
}

TEST(Rprim, StartsAtSmallerDiameterIndex) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        const auto pts = oracle::uniform_points(rng, 2 + t % 30);
        const auto perm = rprim_order(pts);
        ASSERT_TRUE(is_permutation_of_n(perm, pts.size()));
        const auto [i, j] = oracle::diameter(pts);
        EXPECT_EQ(perm.front(), std::min(i, j));
        // Projections onto the diameter direction are non-decreasing.
        const Point a = pts[perm.front()];
        const Point d = pts[i == perm.front() ? j : i] - a;
        for (std::size_t k = 1; k < perm.size(); ++k)
            EXPECT_LE(dot(pts[perm[k - 1]] - a, d), dot(pts[perm[k]] - a, d) + 1e-9);
    }
}

TEST(Mksaw, SquareWaveBreaksConvexWindow) {
    const auto pts = oracle::square_wave(4);
    ASSERT_TRUE(is_convex_quad(pts[0], pts[1], pts[2], pts[3]));
    const auto perm = mksaw(pts);
    EXPECT_EQ(perm, (Permutation{0, 2, 1, 3}));
    EXPECT_TRUE(has_no_convex_window(permuted(pts, perm)));
}

TEST(Mksaw, ShortInputsUnchanged) {
    const std::vector<Point> three{{0, 0}, {1, 1}, {2, 0}};
    EXPECT_EQ(mksaw(three), (Permutation{0, 1, 2}));
    EXPECT_EQ(mksaw(std::vector<Point>{}), Permutation{});
}

TEST(Mksaw, AlreadySawtoothIsFixedPoint) {
    // Zigzag: every window is self-intersecting or reflex, never convex.
    const std::vector<Point> zz{{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 0}, {5, 1}};
    ASSERT_TRUE(has_no_convex_window(zz));
    EXPECT_EQ(mksaw(zz), (Permutation{0, 1, 2, 3, 4, 5}));
}

TEST(Mksaw, PermutationIdempotentNoConvexWindow) {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 1000; ++t) {
        std::vector<Point> pts;
        if (t % 5 == 0)
            pts = oracle::square_wave(4 + t % 37, 1.0 + (t % 3), 1.0 + (t % 7) * 0.5);
        else
            pts = oracle::uniform_points(rng, 4 + t % 30);
        if (t % 2)
            pts = permuted(pts, rprim_order(pts));
        const auto perm = mksaw(pts);
        ASSERT_TRUE(is_permutation_of_n(perm, pts.size()));
        const auto once = permuted(pts, perm);
        EXPECT_TRUE(has_no_convex_window(once));
        const auto again = mksaw(once);
        Permutation id(pts.size());
        std::iota(id.begin(), id.end(), std::size_t{0});
        EXPECT_EQ(again, id);
    }
}

TEST(Permuted, AppliesInOrder) {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}};
    const auto out = permuted(pts, Permutation{2, 0, 1});
    EXPECT_EQ(out[0].x, 2.0);
    EXPECT_EQ(out[1].x, 0.0);
    EXPECT_EQ(out[2].x, 1.0);
}
