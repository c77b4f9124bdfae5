#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "stree/error.hpp"

namespace stree {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;

    Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }
    Point& operator*=(double s) { x *= s; y *= s; return *this; }
    Point& operator/=(double s) { x /= s; y /= s; return *this; }
};

inline Point operator+(Point a, const Point& b) { return a += b; }
inline Point operator-(Point a, const Point& b) { return a -= b; }
inline Point operator*(Point a, double s) { return a *= s; }
inline Point operator*(double s, Point a) { return a *= s; }
inline Point operator/(Point a, double s) { return a /= s; }

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Point& v) { return std::hypot(v.x, v.y); }
inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Numeric tolerances shared across the pipeline. The 2 degree angle
/// tolerance is the only value with a fixed meaning; the epsilons are
/// implementation choices.
struct Tolerances {
    double angle_tol_deg = 2.0;
    double eps_pt = 1e-9;
    double eps_conv = 1e-10;

    /// Throws InvalidTolerances unless all values are positive and the
    /// angle tolerance is below 30 degrees.
    void validate() const;
};

struct Segment {
    Point a;
    Point b;

    double length() const;
};

double dist(const Point& p, const Point& q);

/// Im(v1 * conj(v0)) with the vectors read as complex numbers, i.e. the
/// z component of v0 x v1.
double cross_sign(const Point& v0, const Point& v1);

/// Interior angle p-vertex-q in degrees, within [0, 180].
double angle_at(const Point& vertex, const Point& p, const Point& q,
                double eps_pt = Tolerances{}.eps_pt);

/// Indices (i, j), i < j, of a pair at maximum distance. Among equal
/// distances the lexicographically smallest pair wins. OpenMP parallel.
std::pair<std::size_t, std::size_t> diameter(std::span<const Point> pts);

/// Quadrilateral p1 p2 p3 p4 (in traversal order) is strictly convex.
/// Any zero cross product classifies the quadrilateral as non-convex.
bool is_convex_quad(const Point& p1, const Point& p2, const Point& p3, const Point& p4,
                    double eps_pt = Tolerances{}.eps_pt);

namespace serial {

/// Reference for stree::diameter.
std::pair<std::size_t, std::size_t> diameter(std::span<const Point> pts);

} // namespace serial

} // namespace stree
