#include "stree/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

namespace stree {

namespace {

double orient(const Point& a, const Point& b, const Point& c) {
    return cross_sign(b - a, c - a);
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Point& a, const Point& b, const Point& x) {
    return std::min(a.x, b.x) <= x.x && x.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= x.y && x.y <= std::max(a.y, b.y);
}

// Closed segments ab and cd share at least one point.
bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
    const int o1 = sgn(orient(a, b, c));
    const int o2 = sgn(orient(a, b, d));
    const int o3 = sgn(orient(c, d, a));
    const int o4 = sgn(orient(c, d, b));
    if (o1 != o2 && o3 != o4)
        return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double point_segment_distance(const Point& a, const Point& b, const Point& x) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0)
        return dist(a, x);
    const double t = std::clamp(dot(x - a, ab) / len2, 0.0, 1.0);
    return dist(a + ab * t, x);
}

} // namespace

IndexList convex_hull(std::span<const Point> pts) {
    if (pts.size() < 3)
        throw Error(Errc::TooFewPoints, "convex hull needs at least three points");

    IndexList order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(pts[a].x, pts[a].y, a) < std::tie(pts[b].x, pts[b].y, b);
    });

    IndexList hull(2 * order.size());
    std::size_t k = 0;
    for (std::size_t idx : order) {
        while (k >= 2 && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx]) <= 0.0)
            --k;
        hull[k++] = idx;
    }
    const std::size_t lower = k + 1;
    for (std::size_t r = order.size() - 1; r-- > 0;) {
        const std::size_t idx = order[r];
        while (k >= lower && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx]) <= 0.0)
            --k;
        hull[k++] = idx;
    }
    hull.resize(k - 1);
    if (hull.size() < 3)
        throw Error(Errc::DegenerateInput, "all points are collinear");
    return hull;
}

bool in_lune(const Point& p, const Point& q, const Point& x) {
    const double d = dist(p, q);
    return dist(x, p) < d && dist(x, q) < d;
}

bool is_simple_polygon(std::span<const Point> pts, std::span<const std::size_t> polygon) {
    const std::size_t m = polygon.size();
    if (m < 3)
        return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (polygon[i] == polygon[j] || pts[polygon[i]] == pts[polygon[j]])
                return false;

    auto vtx = [&](std::size_t i) -> const Point& { return pts[polygon[i % m]]; };
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = vtx(i);
        const Point& b = vtx(i + 1);
        const Point& c = vtx(i + 2);
        // Consecutive edges may not fold back onto each other.
        if (orient(a, b, c) == 0.0 && dot(b - a, c - b) < 0.0)
            return false;
        for (std::size_t j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1)
                continue; // adjacent through the closing vertex
            if (segments_touch(a, b, vtx(j), vtx(j + 1)))
                return false;
        }
    }
    return true;
}

IndexList lune_refine(std::span<const Point> pts, std::span<const std::size_t> polygon) {
    IndexList poly(polygon.begin(), polygon.end());
    std::vector<bool> on_poly(pts.size(), false);
    for (std::size_t idx : poly)
        on_poly[idx] = true;

    struct Candidate {
        double detour;
        std::size_t index;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t e = 0; e < poly.size() && !changed; ++e) {
            const Point& p = pts[poly[e]];
            const Point& q = pts[poly[(e + 1) % poly.size()]];

            std::vector<Candidate> cands;
            for (std::size_t r = 0; r < pts.size(); ++r)
                if (!on_poly[r] && in_lune(p, q, pts[r]))
                    cands.push_back({dist(p, pts[r]) + dist(pts[r], q), r});
            std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
                return std::tie(a.detour, a.index) < std::tie(b.detour, b.index);
            });

            for (const Candidate& c : cands) {
                IndexList trial = poly;
                trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(e + 1), c.index);
                if (is_simple_polygon(pts, trial)) {
                    poly = std::move(trial);
                    on_poly[c.index] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    return poly;
}

double signed_area2(std::span<const Point> pts, std::span<const std::size_t> polygon) {
    double acc = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point& a = pts[polygon[i]];
        const Point& b = pts[polygon[(i + 1) % polygon.size()]];
        acc += cross_sign(a, b);
    }
    return acc;
}

// Rounding puts exact 120 degree corners a few ulps either side.
constexpr double kMarkerSlackDeg = 1e-9;

std::string mark_angles(std::span<const Point> pts, std::span<const std::size_t> polygon) {
    const std::size_t m = polygon.size();
    const bool ccw = signed_area2(pts, polygon) > 0.0;
    std::string markers(m, '1');
    for (std::size_t i = 0; i < m; ++i) {
        const Point& v = pts[polygon[i]];
        const Point& prev = pts[polygon[(i + m - 1) % m]];
        const Point& next = pts[polygon[(i + 1) % m]];
        Point a = next - v;
        Point b = prev - v;
        if (!ccw)
            std::swap(a, b);
        double deg = std::atan2(cross_sign(a, b), dot(a, b)) * 180.0 / std::numbers::pi;
        if (deg < 0.0)
            deg += 360.0;
        markers[i] = deg > 120.0 + kMarkerSlackDeg ? '0' : '1';
    }
    return markers;
}

SteinerHull steiner_hull(std::span<const Point> pts) {
    SteinerHull out;
    out.vertex_indices = lune_refine(pts, convex_hull(pts));
    out.markers = mark_angles(pts, out.vertex_indices);
    std::vector<bool> on_poly(pts.size(), false);
    for (std::size_t idx : out.vertex_indices)
        on_poly[idx] = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!on_poly[i])
            out.interior_indices.push_back(i);
    return out;
}

bool point_in_polygon(std::span<const Point> pts, std::span<const std::size_t> polygon,
                      const Point& x, double eps) {
    const std::size_t m = polygon.size();
    bool inside = false;
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Point& a = pts[polygon[i]];
        const Point& b = pts[polygon[j]];
        if (point_segment_distance(a, b, x) <= eps)
            return true;
        if ((a.y > x.y) != (b.y > x.y)) {
            const double xc = a.x + (x.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x.x < xc)
                inside = !inside;
        }
    }
    return inside;
}

} // namespace stree
