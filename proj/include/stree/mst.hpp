#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "stree/geom.hpp"

namespace stree {

using Edge = std::pair<std::size_t, std::size_t>;

/// Minimum spanning tree under Euclidean weights.
struct SpanningTree {
    std::vector<Edge> edges; // (parent, child) in insertion order
    double length = 0.0;

    friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

/// Lower and upper ends of the Gilbert-Pollak interval Lprim * [sqrt(3)/2, 1].
struct LengthInterval {
    double lower = 0.0;
    double upper = 0.0;
    friend bool operator==(const LengthInterval&, const LengthInterval&) = default;
};

/// Dense Prim's algorithm, O(n^2). The key update and the selection of
/// the next vertex run in parallel; ties go to the smaller index, so the
/// result matches serial::prim exactly.
SpanningTree prim(std::span<const Point> pts);

LengthInterval gp_interval(double lprim);

namespace serial {

SpanningTree prim(std::span<const Point> pts);

} // namespace serial

} // namespace stree
