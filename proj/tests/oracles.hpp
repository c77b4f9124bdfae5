#pragma once

// Brute-force references used only by tests. None of these call into the
// routines they are used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "stree/geom.hpp"

namespace stree::oracle {

inline double euclid(const Point& a, const Point& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double orient(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// All-pairs scan; strict improvement keeps the first (lexicographic) pair.
inline std::pair<std::size_t, std::size_t> diameter(const std::vector<Point>& pts) {
    double best = -1.0;
    std::pair<std::size_t, std::size_t> out{0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = (pts[i].x - pts[j].x) * (pts[i].x - pts[j].x) +
                             (pts[i].y - pts[j].y) * (pts[i].y - pts[j].y);
            if (d > best) {
                best = d;
                out = {i, j};
            }
        }
    return out;
}

/// Hull vertices by the O(n^3) half-plane scan: the directed pair (i, j)
/// is a hull edge when every other point lies strictly left of i->j or on
/// the open segment between them.
inline std::set<std::size_t> hull_vertices(const std::vector<Point>& pts) {
    std::set<std::size_t> out;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            bool edge = true;
            for (std::size_t k = 0; k < n && edge; ++k) {
                if (k == i || k == j)
                    continue;
                const double o = orient(pts[i], pts[j], pts[k]);
                if (o > 0.0)
                    continue;
                if (o < 0.0) {
                    edge = false;
                    continue;
                }
                const double t = ((pts[k].x - pts[i].x) * (pts[j].x - pts[i].x) +
                                  (pts[k].y - pts[i].y) * (pts[j].y - pts[i].y)) /
                                 ((pts[j].x - pts[i].x) * (pts[j].x - pts[i].x) +
                                  (pts[j].y - pts[i].y) * (pts[j].y - pts[i].y));
                if (!(t > 0.0 && t < 1.0))
                    edge = false;
            }
            if (edge) {
                out.insert(i);
                out.insert(j);
            }
        }
    return out;
}

/// Minimum spanning tree length over every labelled tree, enumerated as
/// Pruefer sequences (n^(n-2) of them).
inline double exhaustive_mst_length(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    if (n < 2)
        return 0.0;
    if (n == 2)
        return euclid(pts[0], pts[1]);

    std::vector<std::vector<double>> w(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[i][j] = euclid(pts[i], pts[j]);

    const std::size_t len = n - 2;
    std::vector<std::size_t> seq(len, 0);
    std::vector<std::size_t> degree(n);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::fill(degree.begin(), degree.end(), 1);
        for (std::size_t s : seq)
            ++degree[s];
        double total = 0.0;
        for (std::size_t s : seq) {
            std::size_t leaf = 0;
            while (degree[leaf] != 1)
                ++leaf;
            total += w[leaf][s];
            --degree[leaf];
            --degree[s];
        }
        std::size_t u = n, v = n;
        for (std::size_t i = 0; i < n; ++i)
            if (degree[i] == 1)
                (u == n ? u : v) = i;
        total += w[u][v];
        best = std::min(best, total);

        std::size_t pos = 0;
        while (pos < len && ++seq[pos] == n)
            seq[pos++] = 0;
        if (pos == len)
            break;
    }
    return best;
}

/// Weiszfeld iteration for the point minimizing |x-a| + |x-b| + |x-c|,
/// stopping when a step moves less than eps.
inline Point weiszfeld(const Point& a, const Point& b, const Point& c, double eps = 1e-13,
                       int max_iter = 2000000) {
    const Point pts[3] = {a, b, c};
    Point x{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
    for (int it = 0; it < max_iter; ++it) {
        double wx = 0.0, wy = 0.0, ws = 0.0;
        for (const Point& p : pts) {
            const double d = euclid(x, p);
            if (d < 1e-15)
                return x;
            wx += p.x / d;
            wy += p.y / d;
            ws += 1.0 / d;
        }
        const Point next{wx / ws, wy / ws};
        const double step = euclid(next, x);
        x = next;
        if (step < eps)
            break;
    }
    return x;
}

inline double fermat_objective(const Point& x, const Point& a, const Point& b, const Point& c) {
    return euclid(x, a) + euclid(x, b) + euclid(x, c);
}

/// Classical convexity: p2, p4 strictly on opposite sides of line p1p3 and
/// p1, p3 strictly on opposite sides of line p2p4.
inline bool classic_convex_quad(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
    const double a = orient(p1, p3, p2), b = orient(p1, p3, p4);
    const double c = orient(p2, p4, p1), d = orient(p2, p4, p3);
    return a * b < 0.0 && c * d < 0.0;
}

/// Interior angle at `v` from the law of cosines, in degrees.
inline double angle_deg(const Point& v, const Point& p, const Point& q) {
    const double a = euclid(v, p), b = euclid(v, q), c = euclid(p, q);
    const double cosv = std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
    return std::acos(cosv) * 180.0 / 3.14159265358979323846;
}

inline std::vector<Point> uniform_points(std::mt19937_64& rng, std::size_t n, double lo = 0.0,
                                         double hi = 100.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<Point> pts(n);
    for (Point& p : pts)
        p = {u(rng), u(rng)};
    return pts;
}

/// Terminals alternating across a horizontal strip of roughly unit
/// spacing; the shape a zigzag full tree likes.
inline std::vector<Point> zigzag_strip(std::mt19937_64& rng, std::size_t n, double scale = 10.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = static_cast<double>(k) + 0.3 * (u(rng) - 0.5);
        const double y = (k % 2 ? 1.0 : -1.0) * (0.3 + 0.5 * u(rng));
        pts.push_back({x * scale, y * scale});
    }
    return pts;
}

/// Points on two horizontal levels in square-wave order:
/// (0,0),(0,1),(1,1),(1,0),(2,0),(2,1),...
inline std::vector<Point> square_wave(std::size_t n, double step = 1.0, double height = 1.0) {
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const bool up = k % 4 == 1 || k % 4 == 2;
        pts.push_back({static_cast<double>(k / 2) * step, up ? height : 0.0});
    }
    return pts;
}

/// Rigid motion: rotate by theta, then translate.
inline Point rigid(const Point& p, double theta, const Point& shift) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
}

} // namespace stree::oracle
