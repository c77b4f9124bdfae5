#include "stree/mst.hpp"

#include <cmath>
#include <limits>

namespace stree {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct PrimState {
    std::vector<double> key;
    std::vector<std::size_t> parent;
    std::vector<char> in_tree;

    explicit PrimState(std::size_t n)
        : key(n, std::numeric_limits<double>::infinity()), parent(n, kNone), in_tree(n, 0) {}
};

void require_two(std::span<const Point> pts) {
    if (pts.size() < 2)
        throw Error(Errc::TooFewPoints, "spanning tree needs at least two points");
}

// Offer edge (u, v) to vertex v; equal weights keep the smaller parent.
inline void relax(PrimState& st, std::span<const Point> pts, std::size_t u, std::size_t v) {
    const double d = dist(pts[u], pts[v]);
    if (d < st.key[v] || (d == st.key[v] && u < st.parent[v])) {
        st.key[v] = d;
        st.parent[v] = u;
    }
}

inline bool lighter(const PrimState& st, std::size_t a, std::size_t b) {
    if (b == kNone)
        return true;
    return st.key[a] < st.key[b] || (st.key[a] == st.key[b] && a < b);
}

} // namespace

SpanningTree prim(std::span<const Point> pts) {
    require_two(pts);
    const std::size_t n = pts.size();
    const auto sn = static_cast<std::ptrdiff_t>(n);
    PrimState st(n);
    SpanningTree tree;
    tree.edges.reserve(n - 1);

    std::size_t u = 0;
    st.in_tree[0] = 1;
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = kNone;
#pragma omp parallel
        {
            std::size_t local = kNone;
#pragma omp for nowait
            for (std::ptrdiff_t v = 0; v < sn; ++v) {
                const auto vi = static_cast<std::size_t>(v);
                if (st.in_tree[vi])
                    continue;
                relax(st, pts, u, vi);
                if (lighter(st, vi, local))
                    local = vi;
            }
#pragma omp critical(stree_prim)
            if (local != kNone && lighter(st, local, best))
                best = local;
        }
        st.in_tree[best] = 1;
        tree.edges.emplace_back(st.parent[best], best);
        tree.length += st.key[best];
        u = best;
    }
    return tree;
}

namespace serial {

SpanningTree prim(std::span<const Point> pts) {
    require_two(pts);
    const std::size_t n = pts.size();
    PrimState st(n);
    SpanningTree tree;

    std::size_t u = 0;
    st.in_tree[0] = 1;
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = kNone;
        for (std::size_t v = 0; v < n; ++v) {
            if (st.in_tree[v])
                continue;
            relax(st, pts, u, v);
            if (lighter(st, v, best))
                best = v;
        }
        st.in_tree[best] = 1;
        tree.edges.emplace_back(st.parent[best], best);
        tree.length += st.key[best];
        u = best;
    }
    return tree;
}

} // namespace serial

LengthInterval gp_interval(double lprim) {
    if (!(lprim > 0.0) || !std::isfinite(lprim))
        throw Error(Errc::NonPositiveLength, "Lprim must be a positive finite length");
    return {std::sqrt(3.0) / 2.0 * lprim, lprim};
}

} // namespace stree
