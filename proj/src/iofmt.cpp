#include "stree/iofmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace stree {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i]))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i]))
            ++i;
        if (i > start)
            out.push_back(line.substr(start, i - start));
    }
    return out;
}

double parse_real(std::string_view tok, std::size_t line_no) {
    if (!tok.empty() && tok.front() == '+')
        tok.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "not a real number: '" + std::string(tok) + "'");
    if (!std::isfinite(v))
        throw ParseError(line_no, "coordinate is not finite");
    return v;
}

Json point_json(const Point& p) { return Json::array({p.x, p.y}); }

Json points_json(std::span<const Point> pts) {
    Json arr = Json::array();
    for (const Point& p : pts)
        arr.push_back(point_json(p));
    return arr;
}

Json edges_json(std::span<const Edge> edges) {
    Json arr = Json::array();
    for (const auto& [a, b] : edges)
        arr.push_back(Json::array({a, b}));
    return arr;
}

Json interval_json(const LengthInterval& b) {
    Json j = Json::object();
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    return j;
}

Json violations_json(std::span<const Violation> vs) {
    Json arr = Json::array();
    for (const Violation& v : vs)
        arr.push_back(violation_to_json(v));
    return arr;
}

Json header(std::string_view kind, const TerminalSet& terminals) {
    Json doc = Json::object();
    doc["format_version"] = kFormatVersion;
    doc["kind"] = kind;
    doc["terminals"] = points_json(terminals);
    return doc;
}

Json subtree_json(std::string_view kind, const SteinerTree& t, std::size_t steiner_offset,
                  std::span<const Violation> violations) {
    Json j = Json::object();
    j["kind"] = kind;
    j["terminal_indices"] = t.terminal_indices;
    j["steiner_offset"] = steiner_offset;
    j["steiner_count"] = t.steiner_points.size();
    j["edges"] = edges_json(t.edges);
    j["length"] = t.length;
    j["valid"] = t.valid;
    j["violations"] = violations_json(violations);
    return j;
}

void add_lengths(Json& doc, double length, const SpanningTree& prim_tree) {
    doc["length"] = length;
    doc["lprim"] = prim_tree.length;
    doc["gp_interval"] = interval_json(gp_interval(prim_tree.length));
}

Point point_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

} // namespace

TerminalSet read_terminals(std::string_view text, std::vector<DuplicateWarning>* duplicates,
                           double eps_pt) {
    TerminalSet pts;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        const auto toks = split_ws(line);
        if (!toks.empty()) {
            if (toks.size() != 2)
                throw ParseError(line_no, "expected two coordinates, found " + std::to_string(toks.size()));
            const Point p{parse_real(toks[0], line_no), parse_real(toks[1], line_no)};
            if (duplicates) {
                for (std::size_t i = 0; i < pts.size(); ++i)
                    if (dist(pts[i], p) < eps_pt) {
                        duplicates->push_back({line_no, i});
                        break;
                    }
            }
            pts.push_back(p);
        }
        if (eol == std::string_view::npos)
            break;
        pos = eol + 1;
    }
    return pts;
}

std::string write_terminals(const TerminalSet& pts) {
    std::string out;
    char buf[64];
    for (const Point& p : pts) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out += buf;
    }
    return out;
}

Json violation_to_json(const Violation& v) {
    Json j = Json::object();
    j["kind"] = violation_name(v.kind);
    j["vertex"] = v.vertex;
    j["value"] = v.value;
    return j;
}

Json export_tree(const TerminalSet& terminals, const SteinerTree& tree, const Tolerances& tol) {
    Json doc = header("tree", terminals);
    doc["steiner_points"] = points_json(tree.steiner_points);

    const std::size_t n = terminals.size();
    std::vector<Edge> global;
    for (const auto& [a, b] : tree.edges) {
        auto g = [&](std::size_t v) {
            return tree.is_steiner(v) ? n + (v - tree.terminals.size()) : tree.terminal_indices[v];
        };
        global.emplace_back(g(a), g(b));
    }
    doc["edges"] = edges_json(global);
    const SpanningTree base = terminals.size() >= 2 ? prim(terminals) : SpanningTree{};
    if (terminals.size() >= 2) {
        add_lengths(doc, tree.length, base);
    } else {
        doc["length"] = tree.length;
    }
    const auto violations = validate_tree(tree, tol);
    doc["subtrees"] = Json::array({subtree_json("full", tree, 0, violations)});
    return doc;
}

Json export_session(const Session& session) {
    const SessionState& st = session.state();
    Json doc = header("session", st.terminals);
    doc["phase"] = phase_name(st.phase);

    std::vector<Point> steiner;
    for (const Piece& p : st.committed)
        steiner.insert(steiner.end(), p.tree.steiner_points.begin(), p.tree.steiner_points.end());
    doc["steiner_points"] = points_json(steiner);
    doc["edges"] = edges_json(session.global_edges());
    add_lengths(doc, session.total_length(), st.prim_tree);
    doc["prim_edges"] = edges_json(st.prim_tree.edges);

    if (st.hull) {
        Json h = Json::object();
        h["vertices"] = st.hull->vertex_indices;
        h["interior"] = st.hull->interior_indices;
        h["markers"] = st.hull->markers;
        doc["hull"] = h;
    } else {
        doc["hull"] = nullptr;
    }
    doc["residual"] = st.residual;
    doc["omitted"] = st.omitted;
    doc["components"] = st.connection.labels();

    Json subs = Json::array();
    std::size_t offset = 0;
    for (const Piece& p : st.committed) {
        subs.push_back(subtree_json(piece_name(p.kind), p.tree, offset, p.violations));
        offset += p.tree.steiner_points.size();
    }
    doc["subtrees"] = subs;
    doc["connected"] = session.fully_connected();
    return doc;
}

Json export_spanning_tree(const TerminalSet& terminals, const SpanningTree& tree) {
    Json doc = header("spanning_tree", terminals);
    doc["edges"] = edges_json(tree.edges);
    add_lengths(doc, tree.length, tree);
    return doc;
}

Json export_hull(const TerminalSet& terminals, const SteinerHull& hull) {
    Json doc = header("hull", terminals);
    doc["vertices"] = hull.vertex_indices;
    doc["interior"] = hull.interior_indices;
    doc["markers"] = hull.markers;
    return doc;
}

SteinerTree import_tree(const Json& doc) {
    if (doc.at("format_version").get<int>() != kFormatVersion || doc.at("kind") != "tree")
        throw Error(Errc::DegenerateInput, "not a version 1 tree document");
    std::vector<Point> all;
    for (const auto& p : doc.at("terminals"))
        all.push_back(point_from(p));

    const Json& sub = doc.at("subtrees").at(0);
    SteinerTree t;
    t.terminal_indices = sub.at("terminal_indices").get<std::vector<std::size_t>>();
    for (std::size_t idx : t.terminal_indices)
        t.terminals.push_back(all.at(idx));
    const auto offset = sub.at("steiner_offset").get<std::size_t>();
    const auto count = sub.at("steiner_count").get<std::size_t>();
    const Json& sp = doc.at("steiner_points");
    for (std::size_t k = 0; k < count; ++k)
        t.steiner_points.push_back(point_from(sp.at(offset + k)));
    for (const auto& e : sub.at("edges"))
        t.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    t.length = sub.at("length").get<double>();
    t.valid = sub.at("valid").get<bool>();
    return t;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json action_to_json(const Action& a) {
    Json j = Json::object();
    j["kind"] = action_name(a.kind);
    switch (a.kind) {
    case ActionKind::FullStretch:
        j["first"] = a.indices.at(0);
        j["last"] = a.indices.at(1);
        break;
    case ActionKind::OmitPoints:
    case ActionKind::FermatJoin:
    case ActionKind::PolygonalEdge:
        j["indices"] = a.indices;
        break;
    default:
        break;
    }
    return j;
}

Action action_from_json(const Json& j) {
    try {
        if (!j.is_object())
            throw Error(Errc::MalformedAction, "action must be an object");
        const std::string kind = j.at("kind").get<std::string>();
        auto indices = [&]() { return j.at("indices").get<std::vector<std::size_t>>(); };
        if (kind == "OmitPoints")
            return Action::omit(indices());
        if (kind == "FullStretch") {
            if (j.contains("clicks"))
                return Action::stretch_from_clicks(j.at("clicks").get<std::vector<std::size_t>>());
            return Action::full_stretch(j.at("first").get<std::size_t>(), j.at("last").get<std::size_t>());
        }
        if (kind == "FullTreeAll")
            return Action::full_tree_all();
        if (kind == "FermatJoin")
            return {ActionKind::FermatJoin, indices()};
        if (kind == "PolygonalEdge")
            return Action::polygonal(indices());
        if (kind == "Undo")
            return Action::undo();
        if (kind == "Finish")
            return Action::finish();
        throw Error(Errc::MalformedAction, "unknown action kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::MalformedAction, e.what());
    }
}

Json report_to_json(const Report& r) {
    Json j = Json::object();
    j["action"] = action_name(r.action);
    j["status"] = report_status_name(r.status);
    j["added_length"] = r.added_length;
    j["total_length"] = r.total_length;
    j["lprim"] = r.lprim;
    j["gp_interval"] = interval_json(r.bound);
    j["residual"] = r.residual;
    j["violations"] = violations_json(r.violations);
    j["warnings"] = r.warnings;
    return j;
}

} // namespace stree
