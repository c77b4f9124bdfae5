// Batch front end: each subcommand runs one pipeline stage on a terminal
// file (or stdin) and prints the result.
//
// Exit codes: 0 success, 2 usage, 3 parse error, 4 infeasible, 1 other.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "stree/api.hpp"
#include "stree/fst.hpp"
#include "stree/hull.hpp"
#include "stree/iofmt.hpp"
#include "stree/mst.hpp"
#include "stree/order.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitInfeasible = 4;

struct Options {
    std::string file = "-";
    std::string format;
    double angle_tol = 2.0;
    double eps = 1e-9;
    double lprim = 0.0;
    int port = 8080;
    std::string host = "127.0.0.1";
    std::string snapshot_dir;
};

std::string slurp(const std::string& path) {
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in)
        throw stree::Error(stree::Errc::ParseError, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

stree::Tolerances tolerances(const Options& o) {
    stree::Tolerances tol;
    tol.angle_tol_deg = o.angle_tol;
    tol.eps_pt = o.eps;
    tol.validate();
    return tol;
}

stree::TerminalSet load(const Options& o) {
    std::vector<stree::DuplicateWarning> dups;
    auto pts = stree::read_terminals(slurp(o.file), &dups, o.eps);
    for (const auto& d : dups)
        std::cerr << "warning: line " << d.line << " duplicates terminal " << d.first_index << "\n";
    return pts;
}

bool structured(const Options& o, bool default_structured) {
    if (o.format.empty())
        return default_structured;
    return o.format == "structured";
}

int run_prim(const Options& o) {
    const auto pts = load(o);
    const auto tree = stree::prim(pts);
    if (structured(o, true)) {
        std::cout << stree::dump(stree::export_spanning_tree(pts, tree));
    } else {
        for (const auto& [a, b] : tree.edges)
            std::cout << a << " " << b << "\n";
        std::printf("Lprim = %.4f\n", tree.length);
    }
    return 0;
}

int run_hull(const Options& o, bool refine) {
    const auto pts = load(o);
    stree::SteinerHull h;
    h.vertex_indices = stree::convex_hull(pts);
    if (refine)
        h.vertex_indices = stree::lune_refine(pts, h.vertex_indices);
    h.markers = stree::mark_angles(pts, h.vertex_indices);
    std::vector<bool> on(pts.size(), false);
    for (auto v : h.vertex_indices)
        on[v] = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!on[i])
            h.interior_indices.push_back(i);

    if (structured(o, true)) {
        std::cout << stree::dump(stree::export_hull(pts, h));
    } else {
        // Polygon vertices in order, as a terminal file.
        std::cout << stree::write_terminals(stree::permuted(pts, h.vertex_indices));
    }
    return 0;
}

int run_order(const Options& o, bool saw) {
    const auto pts = load(o);
    const auto perm = saw ? stree::mksaw(pts) : stree::rprim_order(pts);
    const auto out = stree::permuted(pts, perm);
    if (structured(o, false)) {
        stree::Json doc = stree::Json::object();
        doc["format_version"] = stree::kFormatVersion;
        doc["kind"] = saw ? "mksaw" : "rprim";
        doc["order"] = perm;
        doc["terminals"] = stree::Json::array();
        for (const auto& p : out)
            doc["terminals"].push_back(stree::Json::array({p.x, p.y}));
        std::cout << stree::dump(doc);
    } else {
        std::cout << stree::write_terminals(out);
    }
    return 0;
}

int run_fulltree(const Options& o) {
    const auto pts = load(o);
    stree::FullTreeOptions opts;
    opts.tol = tolerances(o);
    const auto tree = stree::best_full_tree(pts, opts);
    if (!tree) {
        std::cerr << "infeasible: no full Steiner tree validates for these terminals\n";
        return kExitInfeasible;
    }
    if (structured(o, true)) {
        std::cout << stree::dump(stree::export_tree(pts, *tree, opts.tol));
    } else {
        std::printf("Ltree = %.4f\n", tree->length);
        for (const auto& p : tree->steiner_points)
            std::printf("%.17g %.17g\n", p.x, p.y);
    }
    return 0;
}

int run_bound(const Options& o) {
    const auto b = stree::gp_interval(o.lprim);
    if (structured(o, false)) {
        stree::Json doc = stree::Json::object();
        doc["format_version"] = stree::kFormatVersion;
        doc["kind"] = "bound";
        doc["lprim"] = o.lprim;
        doc["lower"] = b.lower;
        doc["upper"] = b.upper;
        std::cout << stree::dump(doc);
    } else {
        std::printf("The length of a SMT ranges from/to\n%.4f\n%.4f\n", b.lower, b.upper);
    }
    return 0;
}

int run_serve(const Options& o) {
    stree::ServiceOptions sopts;
    sopts.session.full_tree.tol = tolerances(o);
    if (!o.snapshot_dir.empty())
        sopts.snapshot_dir = o.snapshot_dir;
    stree::SessionService service(sopts);
    httplib::Server server;
    stree::register_routes(server, service);
    std::cerr << "listening on " << o.host << ":" << o.port << "\n";
    if (!server.listen(o.host, o.port)) {
        std::cerr << "cannot bind " << o.host << ":" << o.port << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supervised Euclidean Steiner tree workbench"};
    app.require_subcommand(1);
    Options o;

    app.add_option("--angle-tol", o.angle_tol, "Steiner angle tolerance in degrees")
        ->capture_default_str();
    app.add_option("--eps", o.eps, "point coincidence tolerance")->capture_default_str();
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "structured"}));

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", o.file, "terminal file ('-' for stdin)")->capture_default_str();
        return sub;
    };
    auto* prim = add_file(app.add_subcommand("prim", "minimum spanning tree and its length"));
    auto* hull = add_file(app.add_subcommand("hull", "convex hull with angle markers"));
    auto* lune = add_file(app.add_subcommand("lune", "Steiner hull (convex hull refined by lunes)"));
    auto* rprim = add_file(app.add_subcommand("rprim", "reorder along the diameter projection"));
    auto* mksaw = add_file(app.add_subcommand("mksaw", "sawtooth rearrangement"));
    auto* full = add_file(app.add_subcommand("fulltree", "shortest valid full Steiner tree"));
    auto* bound = app.add_subcommand("bound", "Gilbert-Pollak interval for an MST length");
    bound->add_option("lprim", o.lprim, "spanning tree length")->required();
    auto* serve = app.add_subcommand("serve", "HTTP session service");
    serve->add_option("--port", o.port)->capture_default_str();
    serve->add_option("--host", o.host)->capture_default_str();
    serve->add_option("--snapshot-dir", o.snapshot_dir, "persist sessions in this directory");

    // Global flags are accepted after the subcommand too.
    for (auto* sub : {prim, hull, lune, rprim, mksaw, full, bound, serve})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*prim) return run_prim(o);
        if (*hull) return run_hull(o, false);
        if (*lune) return run_hull(o, true);
        if (*rprim) return run_order(o, false);
        if (*mksaw) return run_order(o, true);
        if (*full) return run_fulltree(o);
        if (*bound) return run_bound(o);
        if (*serve) return run_serve(o);
    } catch (const stree::Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        switch (e.code()) {
        case stree::Errc::ParseError: return kExitParse;
        case stree::Errc::TooFewPoints:
        case stree::Errc::NonPositiveLength:
        case stree::Errc::InvalidTolerances: return kExitUsage;
        case stree::Errc::DegenerateInput: return kExitInfeasible;
        default: return 1;
        }
    }
    return kExitUsage;
}
