#include "stree/order.hpp"

#include <algorithm>
#include <numeric>

namespace stree {

Permutation rprim_order(std::span<const Point> pts) {
    if (pts.size() < 2)
        throw Error(Errc::TooFewPoints, "rprim needs at least two points");
    const auto [first, other] = diameter(pts);
    const Point axis = pts[other] - pts[first];

    std::vector<double> proj(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        proj[i] = dot(pts[i] - pts[first], axis) / norm(axis);

    Permutation perm(pts.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (a == first || b == first)
            return a == first && b != first;
        return proj[a] < proj[b];
    });
    return perm;
}

namespace {

bool window_is_convex(std::span<const Point> pts, std::span<const std::size_t> perm,
                      std::size_t start) {
    const Point& a = pts[perm[start]];
    const Point& b = pts[perm[start + 1]];
    const Point& c = pts[perm[start + 2]];
    const Point& d = pts[perm[start + 3]];
    // Coincident points never form a proper quadrilateral.
    const double eps = Tolerances{}.eps_pt;
    const Point* q[4] = {&a, &b, &c, &d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (dist(*q[i], *q[j]) < eps)
                return false;
    return is_convex_quad(a, b, c, d);
}

} // namespace

Permutation mksaw(std::span<const Point> pts) {
    Permutation perm(pts.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (pts.size() < 4)
        return perm;

    // Every swap turns its window into a crossing one, but may create a
    // convex window just behind it; a pass cap bounds pathological input.
    const std::size_t max_passes = 4 * pts.size() * pts.size();
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        bool swapped = false;
        for (std::size_t start = 0; start + 3 < perm.size(); ++start) {
            if (window_is_convex(pts, perm, start)) {
                std::swap(perm[start + 1], perm[start + 2]);
                swapped = true;
            }
        }
        if (!swapped)
            break;
    }
    return perm;
}

std::vector<Point> permuted(std::span<const Point> pts, std::span<const std::size_t> perm) {
    std::vector<Point> out;
    out.reserve(perm.size());
    for (std::size_t idx : perm)
        out.push_back(pts[idx]);
    return out;
}

bool has_no_convex_window(std::span<const Point> pts) {
    Permutation id(pts.size());
    std::iota(id.begin(), id.end(), std::size_t{0});
    for (std::size_t start = 0; start + 3 < pts.size(); ++start)
        if (window_is_convex(pts, id, start))
            return false;
    return true;
}

} // namespace stree
