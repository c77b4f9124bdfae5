#include "stree/session.hpp"

#include <algorithm>
#include <set>

namespace stree {

// ---------------------------------------------------------------- ConnectionMatrix

ConnectionMatrix::ConnectionMatrix(std::size_t n) : label_(n) {
    for (std::size_t i = 0; i < n; ++i)
        label_[i] = i;
}

void ConnectionMatrix::join(std::span<const std::size_t> terminals) {
    if (terminals.empty())
        return;
    std::set<std::size_t> classes;
    for (std::size_t t : terminals)
        classes.insert(label_[t]);
    const std::size_t target = *classes.begin(); // smallest label is the smallest member
    for (std::size_t& l : label_)
        if (classes.count(l))
            l = target;
}

std::vector<std::vector<bool>> ConnectionMatrix::matrix() const {
    const std::size_t n = size();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = label_[i] == label_[j];
    return m;
}

// ---------------------------------------------------------------- names

std::string_view phase_name(Phase p) noexcept {
    switch (p) {
    case Phase::Drawing: return "Drawing";
    case Phase::Retouch: return "Retouch";
    case Phase::Done: return "Done";
    }
    return "Unknown";
}

std::string_view action_name(ActionKind k) noexcept {
    switch (k) {
    case ActionKind::OmitPoints: return "OmitPoints";
    case ActionKind::FullStretch: return "FullStretch";
    case ActionKind::FullTreeAll: return "FullTreeAll";
    case ActionKind::FermatJoin: return "FermatJoin";
    case ActionKind::PolygonalEdge: return "PolygonalEdge";
    case ActionKind::Undo: return "Undo";
    case ActionKind::Finish: return "Finish";
    }
    return "Unknown";
}

std::string_view piece_name(PieceKind k) noexcept {
    switch (k) {
    case PieceKind::FullTree: return "full";
    case PieceKind::Fermat: return "fermat";
    case PieceKind::Polygonal: return "polygonal";
    }
    return "unknown";
}

std::string_view report_status_name(ReportStatus s) noexcept {
    switch (s) {
    case ReportStatus::Omitted: return "omitted";
    case ReportStatus::Committed: return "committed";
    case ReportStatus::Infeasible: return "infeasible";
    case ReportStatus::Undone: return "undone";
    case ReportStatus::Finished: return "finished";
    }
    return "unknown";
}

Action Action::stretch_from_clicks(std::span<const std::size_t> clicks) {
    if (clicks.size() < 2)
        throw Error(Errc::MalformedAction, "a stretch needs two clicked terminals");
    return full_stretch(clicks[clicks.size() - 2], clicks.back());
}

// ---------------------------------------------------------------- Session

Session::Session(TerminalSet terminals, SessionOptions opts) : opts_(std::move(opts)) {
    opts_.full_tree.tol.validate();
    if (terminals.size() < 2)
        throw Error(Errc::TooFewPoints, "a session needs at least two terminals");
    for (const Point& p : terminals)
        if (!is_finite(p))
            throw Error(Errc::DegenerateInput, "terminal coordinates must be finite");

    state_.terminals = std::move(terminals);
    state_.prim_tree = prim(state_.terminals);
    state_.bound = gp_interval(state_.prim_tree.length);
    if (state_.terminals.size() >= 3) {
        try {
            state_.hull = steiner_hull(state_.terminals);
            state_.residual = state_.hull->vertex_indices;
        } catch (const Error& e) {
            if (e.code() != Errc::DegenerateInput)
                throw;
        }
    }
    state_.connection = ConnectionMatrix(state_.terminals.size());
}

double Session::total_length() const {
    double acc = 0.0;
    for (const Piece& p : state_.committed)
        acc += p.tree.length;
    return acc;
}

bool Session::fully_connected() const {
    std::optional<std::size_t> label;
    for (std::size_t i = 0; i < state_.terminals.size(); ++i) {
        if (std::binary_search(state_.omitted.begin(), state_.omitted.end(), i))
            continue;
        if (!label)
            label = state_.connection.label(i);
        else if (*label != state_.connection.label(i))
            return false;
    }
    return true;
}

std::vector<Point> Session::vertices() const {
    std::vector<Point> out = state_.terminals;
    for (const Piece& p : state_.committed)
        out.insert(out.end(), p.tree.steiner_points.begin(), p.tree.steiner_points.end());
    return out;
}

std::vector<Edge> Session::global_edges() const {
    std::vector<Edge> out;
    std::size_t offset = state_.terminals.size();
    for (const Piece& p : state_.committed) {
        const SteinerTree& t = p.tree;
        auto global = [&](std::size_t v) {
            return t.is_steiner(v) ? offset + (v - t.terminals.size()) : t.terminal_indices[v];
        };
        for (const auto& [a, b] : t.edges)
            out.emplace_back(global(a), global(b));
        offset += t.steiner_points.size();
    }
    return out;
}

Report Session::apply(const Action& action) {
    check_indices(action);
    switch (action.kind) {
    case ActionKind::OmitPoints: return omit(action);
    case ActionKind::FullStretch: return full_stretch(action);
    case ActionKind::FullTreeAll: return full_tree_all(action);
    case ActionKind::FermatJoin:
    case ActionKind::PolygonalEdge: return manual(action);
    case ActionKind::Undo: return undo(action);
    case ActionKind::Finish: return finish(action);
    }
    throw Error(Errc::MalformedAction, "unknown action kind");
}

void Session::check_indices(const Action& a) const {
    for (std::size_t idx : a.indices)
        if (idx >= state_.terminals.size())
            throw Error(Errc::MalformedAction, "terminal index " + std::to_string(idx) + " out of range");

    auto distinct = [&] {
        std::set<std::size_t> s(a.indices.begin(), a.indices.end());
        return s.size() == a.indices.size();
    };
    switch (a.kind) {
    case ActionKind::OmitPoints:
        if (a.indices.empty())
            throw Error(Errc::MalformedAction, "nothing to omit");
        break;
    case ActionKind::FullStretch:
        if (a.indices.size() != 2 || a.indices[0] == a.indices[1])
            throw Error(Errc::MalformedAction, "a stretch needs two distinct ends");
        break;
    case ActionKind::FermatJoin:
        if (a.indices.size() != 3 || !distinct())
            throw Error(Errc::MalformedAction, "a Fermat junction needs exactly three terminals");
        break;
    case ActionKind::PolygonalEdge:
        if (a.indices.size() < 2)
            throw Error(Errc::MalformedAction, "a polygonal needs at least two terminals");
        for (std::size_t i = 0; i + 1 < a.indices.size(); ++i)
            if (a.indices[i] == a.indices[i + 1])
                throw Error(Errc::MalformedAction, "polygonal repeats a terminal");
        break;
    case ActionKind::FullTreeAll:
    case ActionKind::Undo:
    case ActionKind::Finish:
        if (!a.indices.empty())
            throw Error(Errc::MalformedAction, "action takes no terminals");
        break;
    }
}

void Session::require_phase(const Action& a, std::initializer_list<Phase> allowed) const {
    if (std::find(allowed.begin(), allowed.end(), state_.phase) == allowed.end())
        throw Error(Errc::InvalidPhase, std::string(action_name(a.kind)) + " is not available in phase " +
                                            std::string(phase_name(state_.phase)));
}

void Session::push_undo() { undo_.push_back(state_); }

Report Session::base_report(const Action& a, ReportStatus status) const {
    Report r;
    r.action = a.kind;
    r.status = status;
    r.total_length = total_length();
    r.lprim = state_.prim_tree.length;
    r.bound = state_.bound;
    r.residual = state_.residual;
    return r;
}

Report Session::omit(const Action& a) {
    require_phase(a, {Phase::Drawing});
    push_undo();
    std::set<std::size_t> merged(state_.omitted.begin(), state_.omitted.end());
    merged.insert(a.indices.begin(), a.indices.end());
    state_.omitted.assign(merged.begin(), merged.end());
    return base_report(a, ReportStatus::Omitted);
}

Report Session::full_stretch(const Action& a) {
    require_phase(a, {Phase::Drawing});
    if (!state_.hull)
        throw Error(Errc::DegenerateInput, "no Steiner hull; connect the terminals manually");

    const auto& res = state_.residual;
    const auto first_it = std::find(res.begin(), res.end(), a.indices[0]);
    const auto last_it = std::find(res.begin(), res.end(), a.indices[1]);
    if (first_it == res.end() || last_it == res.end())
        throw Error(Errc::MalformedAction, "stretch ends must lie on the remaining polygon");

    // Counterclockwise walk from first to last.
    std::vector<std::size_t> run;
    const std::size_t m = res.size();
    for (std::size_t k = static_cast<std::size_t>(first_it - res.begin());; k = (k + 1) % m) {
        run.push_back(res[k]);
        if (res[k] == a.indices[1])
            break;
    }

    std::vector<std::size_t> members;
    for (std::size_t idx : run)
        if (!std::binary_search(state_.omitted.begin(), state_.omitted.end(), idx))
            members.push_back(idx);

    // The run's inner vertices leave the polygon; its ends and any omitted
    // vertex stay.
    std::vector<std::size_t> keep;
    for (std::size_t idx : res) {
        const bool inner = std::find(run.begin() + 1, run.end() - 1, idx) != run.end() - 1;
        const bool omitted = std::binary_search(state_.omitted.begin(), state_.omitted.end(), idx);
        if (!inner || omitted)
            keep.push_back(idx);
    }
    return commit_full(a, members, keep);
}

Report Session::full_tree_all(const Action& a) {
    require_phase(a, {Phase::Drawing});
    auto is_omitted = [&](std::size_t i) {
        return std::binary_search(state_.omitted.begin(), state_.omitted.end(), i);
    };

    std::vector<std::size_t> members;
    std::vector<bool> taken(state_.terminals.size(), false);
    for (std::size_t idx : state_.residual)
        if (!is_omitted(idx)) {
            members.push_back(idx);
            taken[idx] = true;
        }
    std::vector<std::size_t> touched(state_.terminals.size(), 0);
    for (const Piece& p : state_.committed)
        for (std::size_t t : p.tree.terminal_indices)
            ++touched[t];
    for (std::size_t i = 0; i < state_.terminals.size(); ++i)
        if (!taken[i] && !is_omitted(i) && touched[i] == 0 &&
            (!state_.hull || std::find(state_.hull->vertex_indices.begin(),
                                       state_.hull->vertex_indices.end(),
                                       i) == state_.hull->vertex_indices.end()))
            members.push_back(i);

    std::vector<std::size_t> keep;
    for (std::size_t idx : state_.residual)
        if (is_omitted(idx))
            keep.push_back(idx);
    return commit_full(a, members, keep);
}

Report Session::commit_full(const Action& a, const std::vector<std::size_t>& members,
                            const std::vector<std::size_t>& keep_on_residual) {
    if (members.size() < 3)
        throw Error(Errc::TooFewPoints, "a full tree needs at least three terminals");

    TerminalSet pts;
    for (std::size_t idx : members)
        pts.push_back(state_.terminals[idx]);
    std::optional<SteinerTree> tree = best_full_tree(pts, opts_.full_tree);
    if (!tree) {
        Report r = base_report(a, ReportStatus::Infeasible);
        r.warnings.push_back("no full Steiner tree validates for this subgroup");
        return r;
    }

    for (std::size_t& t : tree->terminal_indices)
        t = members[t];

    bool cycle = false;
    for (std::size_t i = 0; i < members.size() && !cycle; ++i)
        for (std::size_t j = i + 1; j < members.size() && !cycle; ++j)
            cycle = state_.connection.connected(members[i], members[j]);

    push_undo();
    Piece piece{PieceKind::FullTree, std::move(*tree), {}};
    piece.violations = validate_tree(piece.tree, opts_.full_tree.tol);
    const double added = piece.tree.length;
    state_.connection.join(members);
    state_.committed.push_back(std::move(piece));
    state_.residual = keep_on_residual;
    state_.omitted.clear();

    Report r = base_report(a, ReportStatus::Committed);
    r.added_length = added;
    r.violations = state_.committed.back().violations;
    if (cycle)
        r.warnings.push_back("subtree joins terminals that were already connected");
    return r;
}

Report Session::manual(const Action& a) {
    require_phase(a, {Phase::Drawing, Phase::Retouch});
    const auto& pts = state_.terminals;

    SteinerTree tree;
    tree.terminal_indices = a.indices;
    for (std::size_t idx : a.indices)
        tree.terminals.push_back(pts[idx]);

    PieceKind kind = PieceKind::Polygonal;
    if (a.kind == ActionKind::FermatJoin) {
        kind = PieceKind::Fermat;
        const FermatResult f = fermat_point(tree.terminals[0], tree.terminals[1], tree.terminals[2],
                                            opts_.full_tree.tol.eps_pt);
        if (f.is_steiner) {
            tree.steiner_points = {f.junction};
            tree.edges = {{0, 3}, {1, 3}, {2, 3}};
        } else {
            std::size_t hub = 0;
            for (std::size_t i = 0; i < 3; ++i)
                if (tree.terminals[i] == f.junction)
                    hub = i;
            for (std::size_t i = 0; i < 3; ++i)
                if (i != hub)
                    tree.edges.emplace_back(hub, i);
        }
    } else {
        // A polygonal may revisit a terminal; keep one local vertex per terminal.
        std::vector<std::size_t> unique;
        std::vector<std::size_t> local(a.indices.size());
        for (std::size_t k = 0; k < a.indices.size(); ++k) {
            auto it = std::find(unique.begin(), unique.end(), a.indices[k]);
            local[k] = static_cast<std::size_t>(it - unique.begin());
            if (it == unique.end())
                unique.push_back(a.indices[k]);
        }
        tree.terminal_indices = unique;
        tree.terminals.clear();
        for (std::size_t idx : unique)
            tree.terminals.push_back(pts[idx]);
        for (std::size_t k = 0; k + 1 < local.size(); ++k)
            tree.edges.emplace_back(local[k], local[k + 1]);
    }
    tree.length = tree.edge_length_sum();
    tree.valid = validate_tree(tree, opts_.full_tree.tol).empty();

    push_undo();
    Piece piece{kind, std::move(tree), {}};
    piece.violations = validate_tree(piece.tree, opts_.full_tree.tol);
    const double added = piece.tree.length;
    state_.connection.join(piece.tree.terminal_indices);
    state_.committed.push_back(std::move(piece));
    state_.phase = Phase::Retouch;

    Report r = base_report(a, ReportStatus::Committed);
    r.added_length = added;
    r.violations = state_.committed.back().violations;
    return r;
}

Report Session::undo(const Action& a) {
    if (undo_.empty())
        throw Error(Errc::EmptyUndoStack, "nothing to undo");
    state_ = std::move(undo_.back());
    undo_.pop_back();
    return base_report(a, ReportStatus::Undone);
}

Report Session::finish(const Action& a) {
    require_phase(a, {Phase::Drawing, Phase::Retouch});
    if (!fully_connected())
        throw Error(Errc::NotConnectedYet, "some terminals are not connected yet");
    push_undo();
    state_.phase = Phase::Done;

    Report r = base_report(a, ReportStatus::Finished);
    if (r.total_length > r.lprim)
        r.warnings.push_back("Ltree exceeds Lprim");
    if (r.total_length < r.bound.lower)
        r.warnings.push_back("Ltree is below the Gilbert-Pollak lower bound");
    return r;
}

} // namespace stree
