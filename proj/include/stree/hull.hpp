#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stree/geom.hpp"

namespace stree {

using IndexList = std::vector<std::size_t>;

/// Polygon known to contain a Steiner minimal tree, together with the
/// angle markers of its vertices ('0' above 120 degrees, '1' otherwise).
struct SteinerHull {
    IndexList vertex_indices;   // counterclockwise
    IndexList interior_indices; // ascending
    std::string markers;        // aligned with vertex_indices

    friend bool operator==(const SteinerHull&, const SteinerHull&) = default;
};

/// Counterclockwise convex hull starting at the lowest-x (then lowest-y)
/// point. Points on hull edges are not vertices. Throws DegenerateInput
/// when all points are collinear.
IndexList convex_hull(std::span<const Point> pts);

/// Splits polygon edges through terminals lying in the edge's lune until
/// no lune holds a terminal off the polygon.
IndexList lune_refine(std::span<const Point> pts, std::span<const std::size_t> polygon);

/// Interior-angle markers for a simple polygon of either orientation.
std::string mark_angles(std::span<const Point> pts, std::span<const std::size_t> polygon);

/// Convex hull, lune refinement and markers in one go.
SteinerHull steiner_hull(std::span<const Point> pts);

/// Lune of segment pq: both open disks of radius |pq| around p and q.
bool in_lune(const Point& p, const Point& q, const Point& x);

/// No two non-adjacent edges touch and adjacent edges share only their
/// common vertex.
bool is_simple_polygon(std::span<const Point> pts, std::span<const std::size_t> polygon);

/// Twice the signed area; positive for counterclockwise polygons.
double signed_area2(std::span<const Point> pts, std::span<const std::size_t> polygon);

/// Interior-or-boundary test (crossing number with a boundary check).
bool point_in_polygon(std::span<const Point> pts, std::span<const std::size_t> polygon,
                      const Point& x, double eps = 1e-12);

} // namespace stree
