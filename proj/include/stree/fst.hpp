#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stree/geom.hpp"
#include "stree/mst.hpp"

namespace stree {

/// A tree over terminals and Steiner points. Vertex ids in `edges` are
/// local: [0, terminals.size()) are terminals, the rest index
/// steiner_points.
struct SteinerTree {
    std::vector<std::size_t> terminal_indices; // identity of each local terminal
    std::vector<Point> terminals;
    std::vector<Point> steiner_points;
    std::vector<Edge> edges;
    double length = 0.0;
    bool valid = false;

    std::size_t vertex_count() const { return terminals.size() + steiner_points.size(); }
    const Point& vertex(std::size_t v) const;
    bool is_steiner(std::size_t v) const { return v >= terminals.size(); }
    std::vector<std::size_t> degrees() const;

    /// Sum of edge lengths recomputed from the coordinates.
    double edge_length_sum() const;

    friend bool operator==(const SteinerTree&, const SteinerTree&) = default;
};

struct FermatResult {
    Point junction;
    double length = 0.0;
    bool is_steiner = false; // false: junction is the vertex with angle >= 120 degrees
};

/// Point minimizing the total distance to a, b and c.
FermatResult fermat_point(const Point& a, const Point& b, const Point& c,
                          double eps_pt = Tolerances{}.eps_pt);

/// r(t) = v1 + t * (unit(v1 - a1) + unit(v1 - a2)).
Point steiner_ray(const Point& v1, const Point& a1, const Point& a2, double t,
                  double eps_pt = Tolerances{}.eps_pt);

/// Full caterpillar topology. With n leaves there are s = n - 2 Steiner
/// points S_0..S_{s-1} on a path. Leaves at caterpillar positions 0 and 1
/// hang on S_0, the last two on S_{s-1}, and position k in between on
/// S_{k-1}. For n = 3 the single Steiner point carries all three leaves.
struct Topology {
    std::vector<std::size_t> leaf_order; // terminal indices in caterpillar order

    std::size_t leaf_count() const { return leaf_order.size(); }
    std::size_t steiner_count() const { return leaf_order.size() - 2; }
    std::size_t steiner_of_position(std::size_t pos) const;

    /// Edges over local ids: leaf position k is vertex k, S_i is n + i.
    std::vector<Edge> edges() const;

    friend bool operator==(const Topology&, const Topology&) = default;
};

/// Base caterpillar of the given order, its reversal, then caterpillars
/// reached by swapping a single-leaf position with its neighbour (breadth
/// first), until `cap` topologies have been produced.
std::vector<Topology> enumerate_topologies(std::span<const std::size_t> order,
                                           std::size_t cap = 64);

/// Degree and leaf-attachment invariants of a caterpillar.
bool is_well_formed(const Topology& topo);

enum class Construction { Built, Borderline, Infeasible };

std::string_view construction_name(Construction c) noexcept;

struct MelzakResult {
    Construction status = Construction::Infeasible;
    SteinerTree tree; // complete when Built; best-effort coordinates when Borderline
};

/// Equilateral merge of leaf pairs from the S_0 end, a Fermat solve at the
/// last Steiner point, then reconstruction of each Steiner point on the
/// circumcircle of its merged pair. Apex sides face away from the
/// centroid of the points not yet merged; if that fails every other side
/// assignment is tried (up to 2^10 of them).
MelzakResult melzak_construct(std::span<const Point> pts, const Topology& topo,
                              const Tolerances& tol = {});

struct RelaxOptions {
    Tolerances tol;
    std::size_t max_sweeps = 100000;
};

/// Coordinate descent: each Steiner point in turn moves to the Fermat
/// junction of its three current neighbours, until no point moves more
/// than eps_conv. Throws NoConvergence after max_sweeps sweeps.
SteinerTree refine_oracle(std::span<const Point> pts, const Topology& topo,
                          std::optional<std::vector<Point>> init = std::nullopt,
                          const RelaxOptions& opts = {});

enum class ViolationKind { SteinerDegree, SteinerAngle, TerminalAngle, CoincidentVertices };

std::string_view violation_name(ViolationKind k) noexcept;

struct Violation {
    ViolationKind kind;
    std::size_t vertex; // local vertex id
    double value;       // degree, angle in degrees, or distance

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_tree(const SteinerTree& tree, const Tolerances& tol = {});

struct FullTreeOptions {
    Tolerances tol;
    std::size_t topology_cap = 64;
    std::size_t max_sweeps = 100000;
};

/// Shortest valid full tree over the caterpillars of three orders: the
/// input order, its sawtooth rearrangement, and the sawtooth of its
/// diameter-projection order. Three terminals with an angle of at least
/// 120 degrees give the two-edge connection through that vertex.
/// Candidates are evaluated in parallel. Returns nullopt when no
/// candidate validates.
std::optional<SteinerTree> best_full_tree(std::span<const Point> pts,
                                          const FullTreeOptions& opts = {});

/// Candidate topologies best_full_tree evaluates, in evaluation order.
std::vector<Topology> full_tree_candidates(std::span<const Point> pts,
                                           std::size_t cap = 64);

namespace serial {

std::optional<SteinerTree> best_full_tree(std::span<const Point> pts,
                                          const FullTreeOptions& opts = {});

} // namespace serial

} // namespace stree
