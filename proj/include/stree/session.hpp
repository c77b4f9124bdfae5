#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stree/fst.hpp"
#include "stree/geom.hpp"
#include "stree/hull.hpp"
#include "stree/mst.hpp"

namespace stree {

using TerminalSet = std::vector<Point>;

/// Which terminals are already joined through committed structure.
/// Stored as one label per terminal (the smallest index of its class), so
/// the relation is symmetric, reflexive and transitively closed.
class ConnectionMatrix {
public:
    ConnectionMatrix() = default;
    explicit ConnectionMatrix(std::size_t n);

    std::size_t size() const { return label_.size(); }
    bool connected(std::size_t i, std::size_t j) const { return label_[i] == label_[j]; }
    std::size_t label(std::size_t i) const { return label_[i]; }
    const std::vector<std::size_t>& labels() const { return label_; }

    /// Merges the classes of all listed terminals.
    void join(std::span<const std::size_t> terminals);

    /// Dense boolean view.
    std::vector<std::vector<bool>> matrix() const;

    friend bool operator==(const ConnectionMatrix&, const ConnectionMatrix&) = default;

private:
    std::vector<std::size_t> label_;
};

enum class Phase { Drawing, Retouch, Done };

enum class ActionKind { OmitPoints, FullStretch, FullTreeAll, FermatJoin, PolygonalEdge, Undo, Finish };

std::string_view phase_name(Phase p) noexcept;
std::string_view action_name(ActionKind k) noexcept;

/// One user step. `indices` holds terminal indices: the omitted points,
/// the stretch ends (first, last), the three Fermat corners, or the
/// polygonal path.
struct Action {
    ActionKind kind = ActionKind::Undo;
    std::vector<std::size_t> indices;

    static Action omit(std::vector<std::size_t> pts) { return {ActionKind::OmitPoints, std::move(pts)}; }
    static Action full_stretch(std::size_t first, std::size_t last) {
        return {ActionKind::FullStretch, {first, last}};
    }
    /// Over-clicked stretch selection: the last two clicks are first and last.
    static Action stretch_from_clicks(std::span<const std::size_t> clicks);
    static Action full_tree_all() { return {ActionKind::FullTreeAll, {}}; }
    static Action fermat_join(std::size_t a, std::size_t b, std::size_t c) {
        return {ActionKind::FermatJoin, {a, b, c}};
    }
    static Action polygonal(std::vector<std::size_t> path) {
        return {ActionKind::PolygonalEdge, std::move(path)};
    }
    static Action undo() { return {ActionKind::Undo, {}}; }
    static Action finish() { return {ActionKind::Finish, {}}; }

    friend bool operator==(const Action&, const Action&) = default;
};

enum class PieceKind { FullTree, Fermat, Polygonal };

std::string_view piece_name(PieceKind k) noexcept;

/// A committed structure. The tree's terminal_indices are global.
struct Piece {
    PieceKind kind = PieceKind::FullTree;
    SteinerTree tree;
    std::vector<Violation> violations;

    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Everything an undo restores.
struct SessionState {
    TerminalSet terminals;
    SpanningTree prim_tree;
    LengthInterval bound;
    std::optional<SteinerHull> hull;   // empty for fewer than three or collinear terminals
    std::vector<std::size_t> residual; // remaining polygon, counterclockwise
    ConnectionMatrix connection;
    std::vector<Piece> committed;
    std::vector<std::size_t> omitted; // ascending
    Phase phase = Phase::Drawing;

    friend bool operator==(const SessionState&, const SessionState&) = default;
};

enum class ReportStatus { Omitted, Committed, Infeasible, Undone, Finished };

std::string_view report_status_name(ReportStatus s) noexcept;

struct Report {
    ActionKind action = ActionKind::Undo;
    ReportStatus status = ReportStatus::Undone;
    double added_length = 0.0;
    double total_length = 0.0;
    double lprim = 0.0;
    LengthInterval bound;
    std::vector<std::size_t> residual;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
};

struct SessionOptions {
    FullTreeOptions full_tree;
};

/// Supervised construction. Actions apply strictly in sequence; every
/// state change pushes a whole-state snapshot for undo.
class Session {
public:
    explicit Session(TerminalSet terminals, SessionOptions opts = {});

    Report apply(const Action& action);

    const SessionState& state() const { return state_; }
    std::size_t undo_depth() const { return undo_.size(); }
    double total_length() const;
    const SessionOptions& options() const { return opts_; }

    /// Terminals of one class cover every terminal outside `omitted`.
    bool fully_connected() const;

    /// Global vertex coordinates: terminals, then each piece's Steiner
    /// points in commit order.
    std::vector<Point> vertices() const;

    /// Committed edges over the global vertex numbering of vertices().
    std::vector<Edge> global_edges() const;

private:
    Report omit(const Action& a);
    Report full_stretch(const Action& a);
    Report full_tree_all(const Action& a);
    Report manual(const Action& a);
    Report undo(const Action& a);
    Report finish(const Action& a);

    Report commit_full(const Action& a, const std::vector<std::size_t>& members,
                       const std::vector<std::size_t>& keep_on_residual);
    Report base_report(const Action& a, ReportStatus status) const;
    void check_indices(const Action& a) const;
    void require_phase(const Action& a, std::initializer_list<Phase> allowed) const;
    void push_undo();

    SessionOptions opts_;
    SessionState state_;
    std::vector<SessionState> undo_;
};

} // namespace stree
