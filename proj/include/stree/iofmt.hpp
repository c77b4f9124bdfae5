#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stree/fst.hpp"
#include "stree/hull.hpp"
#include "stree/mst.hpp"
#include "stree/session.hpp"

namespace stree {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct DuplicateWarning {
    std::size_t line;
    std::size_t first_index; // earlier terminal with the same coordinates
};

/// One point per line, two reals separated by whitespace. Blank lines are
/// skipped. Throws ParseError (with the line number) on anything else.
TerminalSet read_terminals(std::string_view text, std::vector<DuplicateWarning>* duplicates = nullptr,
                           double eps_pt = Tolerances{}.eps_pt);

/// Inverse of read_terminals; coordinates carry 17 significant digits.
std::string write_terminals(const TerminalSet& pts);

/// Export documents. All share format_version, kind and terminals; edges
/// use global vertex ids (terminals first, then Steiner points).
Json export_tree(const TerminalSet& terminals, const SteinerTree& tree, const Tolerances& tol = {});
Json export_session(const Session& session);
Json export_spanning_tree(const TerminalSet& terminals, const SpanningTree& tree);
Json export_hull(const TerminalSet& terminals, const SteinerHull& hull);

/// Reads back the tree of an export_tree document.
SteinerTree import_tree(const Json& doc);

/// Stable text form of a document: two-space indent, trailing newline.
std::string dump(const Json& doc);

Json action_to_json(const Action& a);
/// Throws MalformedAction on unknown kinds or bad payloads.
Action action_from_json(const Json& j);
Json report_to_json(const Report& r);
Json violation_to_json(const Violation& v);

} // namespace stree
