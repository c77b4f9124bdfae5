#include "stree/fst.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <utility>

#include "stree/order.hpp"

namespace stree {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Relative slack for deciding that a reconstruction sits on an arc
// endpoint rather than clearly inside or outside it.
constexpr double kBorderline = 1e-9;

Point rotate(const Point& v, double cos_a, double sin_a) {
    return {v.x * cos_a - v.y * sin_a, v.x * sin_a + v.y * cos_a};
}

// Third vertex of the equilateral triangle on ab, on the side given by sign.
Point equilateral_apex(const Point& a, const Point& b, int sign) {
    return a + rotate(b - a, 0.5, sign * kSqrt3 / 2.0);
}

double orient(const Point& a, const Point& b, const Point& c) {
    return cross_sign(b - a, c - a);
}

void require_distinct(std::span<const Point> pts, double eps_pt) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (dist(pts[i], pts[j]) < eps_pt)
                throw Error(Errc::DegeneratePoint, "coincident terminals");
}

// Fermat junction tolerant of coincident neighbours: two coincident
// neighbours pull with weight two, which always wins.
Point relaxed_junction(const Point& a, const Point& b, const Point& c, double eps_pt) {
    if (dist(a, b) < eps_pt || dist(a, c) < eps_pt)
        return a;
    if (dist(b, c) < eps_pt)
        return b;
    return fermat_point(a, b, c, eps_pt).junction;
}

} // namespace

// ---------------------------------------------------------------- SteinerTree

const Point& SteinerTree::vertex(std::size_t v) const {
    return v < terminals.size() ? terminals[v] : steiner_points[v - terminals.size()];
}

std::vector<std::size_t> SteinerTree::degrees() const {
    std::vector<std::size_t> deg(vertex_count(), 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

double SteinerTree::edge_length_sum() const {
    double acc = 0.0;
    for (const auto& [a, b] : edges)
        acc += dist(vertex(a), vertex(b));
    return acc;
}

// ---------------------------------------------------------------- Fermat

FermatResult fermat_point(const Point& a, const Point& b, const Point& c, double eps_pt) {
    const std::array<Point, 3> v{a, b, c};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (dist(v[i], v[j]) < eps_pt)
                throw Error(Errc::DegeneratePoint, "coincident triangle vertices");

    for (int i = 0; i < 3; ++i) {
        const Point& p = v[(i + 1) % 3];
        const Point& q = v[(i + 2) % 3];
        if (angle_at(v[i], p, q, eps_pt) >= 120.0)
            return {v[i], dist(v[i], p) + dist(v[i], q), false};
    }

    // Simpson line: the apex on bc opposite a, joined to a, crosses the
    // circumcircle of the equilateral triangle at the Fermat point.
    const int side = orient(b, c, a) > 0.0 ? -1 : 1;
    const Point apex = equilateral_apex(b, c, side);
    const Point centre = (b + c + apex) / 3.0;
    const Point d = a - apex;
    const double u = -2.0 * dot(d, apex - centre) / dot(d, d);
    const Point f = apex + d * u;
    return {f, dist(f, a) + dist(f, b) + dist(f, c), true};
}

Point steiner_ray(const Point& v1, const Point& a1, const Point& a2, double t, double eps_pt) {
    const Point d1 = v1 - a1;
    const Point d2 = v1 - a2;
    if (norm(d1) < eps_pt || norm(d2) < eps_pt)
        throw Error(Errc::DegeneratePoint, "ray anchor coincides with a terminal");
    const Point dir = d1 / norm(d1) + d2 / norm(d2);
    if (norm(dir) < eps_pt)
        throw Error(Errc::DegenerateDirection, "terminals are opposite through the anchor");
    return v1 + dir * t;
}

// ---------------------------------------------------------------- Topology

std::size_t Topology::steiner_of_position(std::size_t pos) const {
    const std::size_t n = leaf_count();
    if (n == 3 || pos < 2)
        return 0;
    if (pos >= n - 2)
        return n - 3;
    return pos - 1;
}

std::vector<Edge> Topology::edges() const {
    const std::size_t n = leaf_count();
    std::vector<Edge> out;
    out.reserve(2 * n - 3);
    for (std::size_t k = 0; k < n; ++k)
        out.emplace_back(k, n + steiner_of_position(k));
    for (std::size_t i = 0; i + 1 < steiner_count(); ++i)
        out.emplace_back(n + i, n + i + 1);
    return out;
}

namespace {

// Caterpillars coincide under swapping either end pair and under reversal.
std::vector<std::size_t> canonical(std::vector<std::size_t> seq) {
    const std::size_t n = seq.size();
    auto normalise = [n](std::vector<std::size_t>& s) {
        if (n > 3) {
            if (s[0] > s[1]) std::swap(s[0], s[1]);
            if (s[n - 2] > s[n - 1]) std::swap(s[n - 2], s[n - 1]);
        } else {
            std::sort(s.begin(), s.end());
        }
    };
    std::vector<std::size_t> rev(seq.rbegin(), seq.rend());
    normalise(seq);
    normalise(rev);
    return std::min(seq, rev);
}

} // namespace

std::vector<Topology> enumerate_topologies(std::span<const std::size_t> order, std::size_t cap) {
    const std::size_t n = order.size();
    if (n < 3)
        throw Error(Errc::TooFewPoints, "a full topology needs at least three terminals");
    std::vector<Topology> out;
    if (cap == 0)
        return out;

    std::vector<std::size_t> base(order.begin(), order.end());
    out.push_back({base});
    if (n == 3)
        return out;
    if (out.size() < cap)
        out.push_back({std::vector<std::size_t>(base.rbegin(), base.rend())});

    std::set<std::vector<std::size_t>> seen{canonical(base)};
    std::deque<std::vector<std::size_t>> frontier{base};
    while (!frontier.empty() && out.size() < cap) {
        const auto seq = frontier.front();
        frontier.pop_front();
        // Positions 2..n-3 carry a single leaf; swap each with a neighbour.
        for (std::size_t j = 1; j + 2 < n && out.size() < cap; ++j) {
            auto next = seq;
            std::swap(next[j], next[j + 1]);
            if (seen.insert(canonical(next)).second) {
                out.push_back({next});
                frontier.push_back(std::move(next));
            }
        }
    }
    return out;
}

bool is_well_formed(const Topology& topo) {
    const std::size_t n = topo.leaf_count();
    if (n < 3)
        return false;
    std::set<std::size_t> distinct(topo.leaf_order.begin(), topo.leaf_order.end());
    if (distinct.size() != n)
        return false;

    const auto edges = topo.edges();
    const std::size_t v = n + topo.steiner_count();
    if (edges.size() != v - 1)
        return false;
    std::vector<std::size_t> deg(v, 0);
    std::vector<std::size_t> leaves_on(topo.steiner_count(), 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
        if (a < n && b >= n)
            ++leaves_on[b - n];
    }
    for (std::size_t k = 0; k < n; ++k)
        if (deg[k] != 1)
            return false;
    for (std::size_t i = 0; i < topo.steiner_count(); ++i)
        if (deg[n + i] != 3 || leaves_on[i] == 0)
            return false;

    // v - 1 edges plus connectivity makes a tree.
    std::vector<std::size_t> parent(v);
    for (std::size_t i = 0; i < v; ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : edges)
        parent[find(a)] = find(b);
    for (std::size_t i = 1; i < v; ++i)
        if (find(i) != find(0))
            return false;
    return true;
}

// ---------------------------------------------------------------- Melzak

std::string_view construction_name(Construction c) noexcept {
    switch (c) {
    case Construction::Built: return "built";
    case Construction::Borderline: return "borderline";
    case Construction::Infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

struct Attempt {
    Construction status = Construction::Infeasible;
    std::vector<Point> steiner;
};

Construction classify_fermat(const Point& a, const Point& b, const Point& c, double eps_pt) {
    const double worst = std::max({angle_at(a, b, c, eps_pt), angle_at(b, a, c, eps_pt),
                                   angle_at(c, a, b, eps_pt)});
    if (std::abs(worst - 120.0) < 1e-7)
        return Construction::Borderline;
    return worst < 120.0 ? Construction::Built : Construction::Infeasible;
}

// One merge/reconstruct pass. `sides[i]` fixes the apex side of merge i;
// an empty vector means the centroid heuristic, whose choices are
// written back into `sides`.
Attempt melzak_attempt(const std::vector<Point>& leaves, std::vector<int>& sides,
                       double eps_pt) {
    const std::size_t n = leaves.size();
    const std::size_t s = n - 2;
    const bool heuristic = sides.empty();
    if (heuristic)
        sides.assign(s - 1, 0);

    Attempt out;
    out.steiner.assign(s, Point{});

    // Merge phase.
    std::vector<Point> apex(s - 1);
    for (std::size_t i = 0; i + 1 < s; ++i) {
        const Point& x = i == 0 ? leaves[0] : apex[i - 1];
        const Point& y = leaves[i + 1];
        if (heuristic) {
            Point centre{};
            for (std::size_t k = i + 2; k < n; ++k)
                centre += leaves[k];
            centre /= static_cast<double>(n - i - 2);
            const Point plus = equilateral_apex(x, y, +1);
            const Point minus = equilateral_apex(x, y, -1);
            sides[i] = dist(plus, centre) >= dist(minus, centre) ? +1 : -1;
        }
        apex[i] = equilateral_apex(x, y, sides[i]);
    }

    // Last Steiner point: Fermat point of the final merged vertex and the
    // two leaves on S_{s-1}.
    const Point& last_a = apex[s - 2];
    const Point& last_b = leaves[n - 2];
    const Point& last_c = leaves[n - 1];
    if (dist(last_a, last_b) < eps_pt || dist(last_a, last_c) < eps_pt) {
        out.status = Construction::Infeasible;
        return out;
    }
    out.status = classify_fermat(last_a, last_b, last_c, eps_pt);
    out.steiner[s - 1] = fermat_point(last_a, last_b, last_c, eps_pt).junction;
    if (out.status == Construction::Infeasible)
        return out;

    // Reconstruction phase.
    for (std::size_t i = s - 1; i-- > 0;) {
        const Point& x = i == 0 ? leaves[0] : apex[i - 1];
        const Point& y = leaves[i + 1];
        const Point& e = apex[i];
        const Point centre = (x + y + e) / 3.0;
        const Point d = out.steiner[i + 1] - e;
        const double dd = dot(d, d);
        const double xy2 = dot(y - x, y - x);
        if (dd < eps_pt * eps_pt) {
            out.status = Construction::Borderline;
            out.steiner[i] = e;
            continue;
        }
        const double u = -2.0 * dot(d, e - centre) / dd;
        const Point p = e + d * u;
        out.steiner[i] = p;

        const double side_p = orient(x, y, p);
        const double side_e = orient(x, y, e);
        const bool on_arc = (side_p > 0.0) != (side_e > 0.0) && side_p != 0.0;
        const bool inside = u > 0.0 && u < 1.0;
        const bool near_end = std::abs(u) < kBorderline || std::abs(1.0 - u) < kBorderline ||
                              std::abs(side_p) < kBorderline * xy2;
        if (on_arc && inside && !near_end)
            continue;
        if (near_end) {
            out.status = Construction::Borderline;
            continue;
        }
        out.status = Construction::Infeasible;
        return out;
    }
    return out;
}

SteinerTree assemble(std::span<const Point> pts, const Topology& topo,
                     std::vector<Point> steiner, const Tolerances& tol) {
    SteinerTree tree;
    tree.terminal_indices = topo.leaf_order;
    for (std::size_t idx : topo.leaf_order)
        tree.terminals.push_back(pts[idx]);
    tree.steiner_points = std::move(steiner);
    tree.edges = topo.edges();
    tree.length = tree.edge_length_sum();
    tree.valid = validate_tree(tree, tol).empty();
    return tree;
}

} // namespace

MelzakResult melzak_construct(std::span<const Point> pts, const Topology& topo,
                              const Tolerances& tol) {
    const std::size_t n = topo.leaf_count();
    if (n < 3)
        throw Error(Errc::TooFewPoints, "a full topology needs at least three terminals");
    std::vector<Point> leaves;
    for (std::size_t idx : topo.leaf_order)
        leaves.push_back(pts[idx]);
    require_distinct(leaves, tol.eps_pt);

    MelzakResult result;
    if (n == 3) {
        const FermatResult f = fermat_point(leaves[0], leaves[1], leaves[2], tol.eps_pt);
        result.status = classify_fermat(leaves[0], leaves[1], leaves[2], tol.eps_pt);
        result.tree = assemble(pts, topo, {f.junction}, tol);
        return result;
    }

    std::vector<int> sides;
    Attempt first = melzak_attempt(leaves, sides, tol.eps_pt);
    if (first.status == Construction::Built) {
        result.status = Construction::Built;
        result.tree = assemble(pts, topo, std::move(first.steiner), tol);
        return result;
    }

    // The heuristic side choice failed; try the remaining assignments.
    const std::size_t merges = n - 3;
    std::optional<SteinerTree> best;
    if (merges <= 10) {
        const std::size_t heuristic_mask = [&] {
            std::size_t m = 0;
            for (std::size_t i = 0; i < merges; ++i)
                if (sides[i] > 0)
                    m |= std::size_t{1} << i;
            return m;
        }();
        for (std::size_t mask = 0; mask < (std::size_t{1} << merges); ++mask) {
            if (mask == heuristic_mask)
                continue;
            std::vector<int> forced(merges);
            for (std::size_t i = 0; i < merges; ++i)
                forced[i] = (mask >> i) & 1 ? +1 : -1;
            Attempt a = melzak_attempt(leaves, forced, tol.eps_pt);
            if (a.status != Construction::Built)
                continue;
            SteinerTree t = assemble(pts, topo, std::move(a.steiner), tol);
            if (!best || t.length < best->length)
                best = std::move(t);
        }
    }
    if (best) {
        result.status = Construction::Built;
        result.tree = std::move(*best);
        return result;
    }
    result.status = first.status;
    result.tree = assemble(pts, topo, std::move(first.steiner), tol);
    return result;
}

// ---------------------------------------------------------------- relaxation

SteinerTree refine_oracle(std::span<const Point> pts, const Topology& topo,
                          std::optional<std::vector<Point>> init, const RelaxOptions& opts) {
    if (!is_well_formed(topo))
        throw Error(Errc::DegenerateInput, "malformed topology");
    const std::size_t n = topo.leaf_count();
    const std::size_t s = topo.steiner_count();
    const double eps_pt = opts.tol.eps_pt;

    std::vector<Point> vtx;
    for (std::size_t idx : topo.leaf_order)
        vtx.push_back(pts[idx]);

    if (init) {
        if (init->size() != s)
            throw Error(Errc::DegenerateInput, "initial Steiner coordinates do not match topology");
        vtx.insert(vtx.end(), init->begin(), init->end());
    } else {
        Point centroid{};
        for (std::size_t k = 0; k < n; ++k)
            centroid += vtx[k];
        centroid /= static_cast<double>(n);
        std::vector<Point> sum(s, Point{});
        std::vector<double> count(s, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            sum[topo.steiner_of_position(k)] += vtx[k];
            count[topo.steiner_of_position(k)] += 1.0;
        }
        for (std::size_t i = 0; i < s; ++i)
            vtx.push_back((sum[i] / count[i] + centroid) / 2.0);
    }

    std::vector<std::vector<std::size_t>> nbr(s);
    for (const auto& [a, b] : topo.edges()) {
        if (a >= n) nbr[a - n].push_back(b);
        if (b >= n) nbr[b - n].push_back(a);
    }

    bool converged = false;
    for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        double max_move = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            const Point next = relaxed_junction(vtx[nbr[i][0]], vtx[nbr[i][1]], vtx[nbr[i][2]],
                                                eps_pt);
            max_move = std::max(max_move, dist(next, vtx[n + i]));
            vtx[n + i] = next;
        }
        if (max_move < opts.tol.eps_conv) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw Error(Errc::NoConvergence, "Steiner point relaxation did not converge");

    return assemble(pts, topo, std::vector<Point>(vtx.begin() + static_cast<std::ptrdiff_t>(n),
                                                  vtx.end()),
                    opts.tol);
}

// ---------------------------------------------------------------- validation

std::string_view violation_name(ViolationKind k) noexcept {
    switch (k) {
    case ViolationKind::SteinerDegree: return "steiner_degree";
    case ViolationKind::SteinerAngle: return "steiner_angle";
    case ViolationKind::TerminalAngle: return "terminal_angle";
    case ViolationKind::CoincidentVertices: return "coincident_vertices";
    }
    return "unknown";
}

std::vector<Violation> validate_tree(const SteinerTree& tree, const Tolerances& tol) {
    std::vector<Violation> out;
    const std::size_t total = tree.vertex_count();
    std::vector<std::vector<std::size_t>> adj(total);
    for (const auto& [a, b] : tree.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    for (std::size_t v = 0; v < total; ++v) {
        const Point& here = tree.vertex(v);
        if (tree.is_steiner(v) && adj[v].size() != 3)
            out.push_back({ViolationKind::SteinerDegree, v, static_cast<double>(adj[v].size())});
        for (std::size_t i = 0; i < adj[v].size(); ++i) {
            for (std::size_t j = i + 1; j < adj[v].size(); ++j) {
                const Point& p = tree.vertex(adj[v][i]);
                const Point& q = tree.vertex(adj[v][j]);
                if (dist(here, p) < tol.eps_pt || dist(here, q) < tol.eps_pt)
                    continue; // reported as a coincidence below
                const double deg = angle_at(here, p, q, tol.eps_pt);
                if (tree.is_steiner(v)) {
                    if (std::abs(deg - 120.0) > tol.angle_tol_deg)
                        out.push_back({ViolationKind::SteinerAngle, v, deg});
                } else if (deg < 120.0 - tol.angle_tol_deg) {
                    out.push_back({ViolationKind::TerminalAngle, v, deg});
                }
            }
        }
    }

    const std::size_t first_steiner = tree.terminals.size();
    for (std::size_t v = first_steiner; v < total; ++v)
        for (std::size_t w = 0; w < v; ++w) {
            const double d = dist(tree.vertex(v), tree.vertex(w));
            if (d < tol.eps_pt)
                out.push_back({ViolationKind::CoincidentVertices, v, d});
        }
    return out;
}

// ---------------------------------------------------------------- best tree

std::vector<Topology> full_tree_candidates(std::span<const Point> pts, std::size_t cap) {
    const std::size_t n = pts.size();
    if (n < 3)
        throw Error(Errc::TooFewPoints, "a full tree needs at least three terminals");

    std::vector<std::size_t> identity(n);
    for (std::size_t i = 0; i < n; ++i)
        identity[i] = i;

    const Permutation saw = mksaw(pts);
    const Permutation proj = rprim_order(pts);
    const Permutation proj_saw_local = mksaw(permuted(pts, proj));
    Permutation proj_saw(n);
    for (std::size_t k = 0; k < n; ++k)
        proj_saw[k] = proj[proj_saw_local[k]];

    std::vector<Topology> out;
    std::set<std::vector<std::size_t>> seen;
    for (const Permutation* order : {&std::as_const(identity), &saw, &std::as_const(proj_saw)})
        for (Topology& t : enumerate_topologies(*order, cap))
            if (seen.insert(t.leaf_order).second)
                out.push_back(std::move(t));
    return out;
}

namespace {

std::optional<SteinerTree> three_terminal_tree(std::span<const Point> pts, const Tolerances& tol) {
    const FermatResult f = fermat_point(pts[0], pts[1], pts[2], tol.eps_pt);
    SteinerTree tree;
    tree.terminal_indices = {0, 1, 2};
    tree.terminals.assign(pts.begin(), pts.end());
    if (f.is_steiner) {
        tree.steiner_points = {f.junction};
        tree.edges = {{0, 3}, {1, 3}, {2, 3}};
    } else {
        std::size_t hub = 0;
        for (std::size_t i = 0; i < 3; ++i)
            if (pts[i] == f.junction)
                hub = i;
        for (std::size_t i = 0; i < 3; ++i)
            if (i != hub)
                tree.edges.emplace_back(hub, i);
    }
    tree.length = tree.edge_length_sum();
    tree.valid = validate_tree(tree, tol).empty();
    if (!tree.valid)
        return std::nullopt;
    return tree;
}

std::optional<SteinerTree> evaluate_candidate(std::span<const Point> pts, const Topology& topo,
                                              const FullTreeOptions& opts) {
    MelzakResult m = melzak_construct(pts, topo, opts.tol);
    if (m.status == Construction::Built)
        return m.tree.valid ? std::optional(std::move(m.tree)) : std::nullopt;
    if (m.status == Construction::Infeasible)
        return std::nullopt;
    try {
        SteinerTree relaxed = refine_oracle(pts, topo, m.tree.steiner_points,
                                            {opts.tol, opts.max_sweeps});
        if (relaxed.valid)
            return relaxed;
    } catch (const Error& e) {
        if (e.code() != Errc::NoConvergence)
            throw;
    }
    return std::nullopt;
}

bool has_coincident(std::span<const Point> pts, double eps_pt) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (dist(pts[i], pts[j]) < eps_pt)
                return true;
    return false;
}

// First minimum in enumeration order.
std::optional<SteinerTree> pick_shortest(std::vector<std::optional<SteinerTree>>& results) {
    std::optional<SteinerTree> best;
    for (auto& r : results)
        if (r && (!best || r->length < best->length))
            best = std::move(r);
    return best;
}

} // namespace

std::optional<SteinerTree> best_full_tree(std::span<const Point> pts, const FullTreeOptions& opts) {
    if (pts.size() < 3)
        throw Error(Errc::TooFewPoints, "a full tree needs at least three terminals");
    if (has_coincident(pts, opts.tol.eps_pt))
        return std::nullopt;
    if (pts.size() == 3)
        return three_terminal_tree(pts, opts.tol);

    const std::vector<Topology> cands = full_tree_candidates(pts, opts.topology_cap);
    std::vector<std::optional<SteinerTree>> results(cands.size());
    const auto count = static_cast<std::ptrdiff_t>(cands.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < count; ++c) {
        try {
            results[static_cast<std::size_t>(c)] =
                evaluate_candidate(pts, cands[static_cast<std::size_t>(c)], opts);
        } catch (...) {
#pragma omp critical(stree_best_tree)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return pick_shortest(results);
}

namespace serial {

std::optional<SteinerTree> best_full_tree(std::span<const Point> pts, const FullTreeOptions& opts) {
    if (pts.size() < 3)
        throw Error(Errc::TooFewPoints, "a full tree needs at least three terminals");
    if (has_coincident(pts, opts.tol.eps_pt))
        return std::nullopt;
    if (pts.size() == 3)
        return three_terminal_tree(pts, opts.tol);

    const std::vector<Topology> cands = full_tree_candidates(pts, opts.topology_cap);
    std::vector<std::optional<SteinerTree>> results;
    results.reserve(cands.size());
    for (const Topology& t : cands)
        results.push_back(evaluate_candidate(pts, t, opts));
    return pick_shortest(results);
}

} // namespace serial

} // namespace stree
