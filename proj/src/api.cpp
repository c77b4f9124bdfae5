#include "stree/api.hpp"

#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include <httplib.h>

namespace stree {

int http_status(Errc code) noexcept {
    switch (code) {
    case Errc::UnknownSession:
        return 404;
    case Errc::InvalidPhase:
    case Errc::EmptyUndoStack:
    case Errc::NotConnectedYet:
    case Errc::DegenerateInput:
        return 409;
    default:
        return 422;
    }
}

SessionService::SessionService(ServiceOptions opts) : opts_(std::move(opts)) {
    if (opts_.snapshot_dir) {
        std::filesystem::create_directories(*opts_.snapshot_dir);
        load_snapshots();
    }
}

std::string SessionService::fresh_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    char buf[40];
    std::snprintf(buf, sizeof buf, "s%llu-%016llx", static_cast<unsigned long long>(++counter_),
                  static_cast<unsigned long long>(rng()));
    return buf;
}

std::string SessionService::create(TerminalSet terminals) {
    auto entry = std::make_shared<Entry>(Session(std::move(terminals), opts_.session));
    std::unique_lock lock(mutex_);
    std::string id = fresh_id();
    while (sessions_.count(id))
        id = fresh_id();
    sessions_.emplace(id, entry);
    persist(id, *entry);
    return id;
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw Error(Errc::UnknownSession, "unknown session '" + id + "'");
    return it->second;
}

Json SessionService::get_state(const std::string& id) const {
    auto entry = find(id);
    std::shared_lock lock(entry->mutex);
    return export_session(entry->session);
}

SessionService::Outcome SessionService::post_action(const std::string& id, const Action& action) {
    auto entry = find(id);
    std::unique_lock lock(entry->mutex);
    const Report report = entry->session.apply(action);
    entry->log.push_back(action);
    persist(id, *entry);
    return {export_session(entry->session), report_to_json(report)};
}

bool SessionService::remove(const std::string& id) {
    std::unique_lock lock(mutex_);
    const bool erased = sessions_.erase(id) > 0;
    if (erased && opts_.snapshot_dir)
        std::filesystem::remove(*opts_.snapshot_dir / (id + ".json"));
    return erased;
}

std::vector<std::string> SessionService::ids() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [id, _] : sessions_)
        out.push_back(id);
    return out;
}

void SessionService::persist(const std::string& id, const Entry& e) const {
    if (!opts_.snapshot_dir)
        return;
    Json doc = Json::object();
    doc["format_version"] = kFormatVersion;
    doc["id"] = id;
    doc["terminals"] = Json::array();
    for (const Point& p : e.session.state().terminals)
        doc["terminals"].push_back(Json::array({p.x, p.y}));
    doc["actions"] = Json::array();
    for (const Action& a : e.log)
        doc["actions"].push_back(action_to_json(a));

    const auto path = *opts_.snapshot_dir / (id + ".json");
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << dump(doc);
    }
    std::filesystem::rename(tmp, path);
}

void SessionService::load_snapshots() {
    for (const auto& item : std::filesystem::directory_iterator(*opts_.snapshot_dir)) {
        if (item.path().extension() != ".json")
            continue;
        std::ifstream in(item.path());
        const Json doc = Json::parse(in);
        TerminalSet pts;
        for (const auto& p : doc.at("terminals"))
            pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        auto entry = std::make_shared<Entry>(Session(std::move(pts), opts_.session));
        for (const auto& a : doc.at("actions")) {
            const Action action = action_from_json(a);
            entry->session.apply(action);
            entry->log.push_back(action);
        }
        const std::string id = doc.at("id").get<std::string>();
        sessions_[id] = entry;
        ++counter_;
    }
}

// ---------------------------------------------------------------- HTTP

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, std::string_view name, const std::string& msg) {
    Json body = Json::object();
    body["error"] = name;
    body["message"] = msg;
    res.status = status;
    res.set_content(dump(body), kJson);
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
    try {
        body();
    } catch (const Error& e) {
        send_error(res, http_status(e.code()), e.name(), e.what());
    } catch (const nlohmann::json::exception& e) {
        send_error(res, 422, "MalformedAction", e.what());
    }
}

TerminalSet terminals_from_request(const Json& body) {
    if (body.contains("file"))
        return read_terminals(body.at("file").get<std::string>());
    TerminalSet pts;
    for (const auto& p : body.at("terminals"))
        pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return pts;
}

} // namespace

void register_routes(httplib::Server& server, SessionService& service) {
    server.Post("/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = Json::parse(req.body);
            const std::string id = service.create(terminals_from_request(body));
            Json out = Json::object();
            out["id"] = id;
            out["state"] = service.get_state(id);
            res.status = 201;
            res.set_content(dump(out), kJson);
        });
    });

    server.Get(R"(/sessions/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            Json out = Json::object();
            out["id"] = req.matches[1].str();
            out["state"] = service.get_state(req.matches[1]);
            res.set_content(dump(out), kJson);
        });
    });

    server.Post(R"(/sessions/([^/]+)/actions)",
                [&service](const httplib::Request& req, httplib::Response& res) {
                    guarded(res, [&] {
                        const Action action = action_from_json(Json::parse(req.body));
                        auto outcome = service.post_action(req.matches[1], action);
                        Json out = Json::object();
                        out["id"] = req.matches[1].str();
                        out["state"] = std::move(outcome.state);
                        out["report"] = std::move(outcome.report);
                        res.set_content(dump(out), kJson);
                    });
                });

    server.Delete(R"(/sessions/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            if (!service.remove(req.matches[1]))
                throw Error(Errc::UnknownSession, "unknown session '" + req.matches[1].str() + "'");
            res.status = 204;
        });
    });
}

} // namespace stree
