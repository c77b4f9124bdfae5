#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stree/geom.hpp"

namespace stree {

using Permutation = std::vector<std::size_t>;

/// Orders points by their projection onto the diameter, starting at the
/// diameter extreme with the smaller index.
Permutation rprim_order(std::span<const Point> pts);

/// Sawtooth rearrangement. A window of four consecutive points slides
/// from the start; whenever the window is a convex quadrilateral its
/// middle pair is swapped and the window moves on by one. Passes repeat
/// until one completes without a swap, so the result never contains a
/// convex window. Expects rprim-ordered input but does not require it.
Permutation mksaw(std::span<const Point> pts);

/// Applies a permutation: out[k] = pts[perm[k]].
std::vector<Point> permuted(std::span<const Point> pts, std::span<const std::size_t> perm);

/// True when no four consecutive points form a convex quadrilateral.
bool has_no_convex_window(std::span<const Point> pts);

} // namespace stree
