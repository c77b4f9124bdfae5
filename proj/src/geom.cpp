#include "stree/geom.hpp"

#include <algorithm>
#include <numbers>

namespace stree {

void Tolerances::validate() const {
    if (!(angle_tol_deg > 0.0) || !(angle_tol_deg < 30.0))
        throw Error(Errc::InvalidTolerances, "angle tolerance must lie in (0, 30) degrees");
    if (!(eps_pt > 0.0) || !(eps_conv > 0.0))
        throw Error(Errc::InvalidTolerances, "epsilons must be strictly positive");
}

double Segment::length() const { return dist(a, b); }

double dist(const Point& p, const Point& q) { return std::hypot(q.x - p.x, q.y - p.y); }

double cross_sign(const Point& v0, const Point& v1) { return v0.x * v1.y - v0.y * v1.x; }

double angle_at(const Point& vertex, const Point& p, const Point& q, double eps_pt) {
    const Point a = p - vertex;
    const Point b = q - vertex;
    if (norm(a) < eps_pt || norm(b) < eps_pt)
        throw Error(Errc::DegeneratePoint, "angle leg shorter than eps_pt");
    const double rad = std::atan2(std::abs(cross_sign(a, b)), dot(a, b));
    return rad * 180.0 / std::numbers::pi;
}

namespace {

struct FarPair {
    double d2 = -1.0;
    std::size_t i = 0;
    std::size_t j = 0;

    // Larger distance wins; equal distances prefer the smaller index pair.
    bool beats(const FarPair& o) const {
        if (d2 != o.d2)
            return d2 > o.d2;
        return std::pair(i, j) < std::pair(o.i, o.j);
    }
};

double dist2(const Point& p, const Point& q) {
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    return dx * dx + dy * dy;
}

void require_pair(std::span<const Point> pts) {
    if (pts.size() < 2)
        throw Error(Errc::TooFewPoints, "diameter needs at least two points");
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

std::pair<std::size_t, std::size_t> diameter(std::span<const Point> pts) {
    require_pair(pts);
    const auto n = static_cast<std::ptrdiff_t>(pts.size());
    FarPair best;

#pragma omp parallel
    {
        FarPair local;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::ptrdiff_t i = 0; i < n - 1; ++i) {
            for (std::ptrdiff_t j = i + 1; j < n; ++j) {
                FarPair cand{dist2(pts[i], pts[j]), static_cast<std::size_t>(i),
                             static_cast<std::size_t>(j)};
                if (cand.beats(local))
                    local = cand;
            }
        }
#pragma omp critical(stree_diameter)
        if (local.beats(best))
            best = local;
    }
    return {best.i, best.j};
}

namespace serial {

std::pair<std::size_t, std::size_t> diameter(std::span<const Point> pts) {
    require_pair(pts);
    FarPair best;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d2 = dist2(pts[i], pts[j]);
            if (d2 > best.d2)
                best = {d2, i, j};
        }
    return {best.i, best.j};
}

} // namespace serial

bool is_convex_quad(const Point& p1, const Point& p2, const Point& p3, const Point& p4,
                    double eps_pt) {
    const Point* q[4] = {&p1, &p2, &p3, &p4};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (dist(*q[a], *q[b]) < eps_pt)
                throw Error(Errc::DegeneratePoint, "coincident quadrilateral vertices");

    // vec_k = P_{k+2} - P_1 and Vec_k = P_{k+1} - P_4.
    const Point vec0 = p2 - p1, vec1 = p3 - p1, vec2 = p4 - p1;
    const Point Vec0 = p1 - p4, Vec1 = p2 - p4, Vec2 = p3 - p4;

    const int s0 = sign_of(cross_sign(vec0, vec1));
    const int s1 = sign_of(cross_sign(vec2, vec1));
    const int t0 = sign_of(cross_sign(Vec0, Vec1));
    const int t1 = sign_of(cross_sign(Vec2, Vec1));
    if (s0 == 0 || s1 == 0 || t0 == 0 || t1 == 0)
        return false;
    return s0 != s1 && t0 != t1;
}

} // namespace stree
