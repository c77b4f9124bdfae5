#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "stree/iofmt.hpp"
#include "stree/session.hpp"

namespace httplib {
class Server;
}

namespace stree {

/// HTTP status for a session-module error.
int http_status(Errc code) noexcept;

struct ServiceOptions {
    SessionOptions session;
    /// When set, every session is stored as `<dir>/<id>.json` (terminals
    /// plus the applied action log) and reloaded by replay on startup.
    std::optional<std::filesystem::path> snapshot_dir;
};

/// In-memory registry of supervised sessions. Distinct sessions are
/// independent; actions on one session are serialized, and readers only
/// ever see a state between two actions.
class SessionService {
public:
    explicit SessionService(ServiceOptions opts = {});

    std::string create(TerminalSet terminals);
    /// Render model: the session export document.
    Json get_state(const std::string& id) const;

    struct Outcome {
        Json state;
        Json report;
    };
    Outcome post_action(const std::string& id, const Action& action);
    bool remove(const std::string& id);

    std::vector<std::string> ids() const;

private:
    struct Entry {
        mutable std::shared_mutex mutex;
        Session session;
        std::vector<Action> log;

        explicit Entry(Session s) : session(std::move(s)) {}
    };

    std::shared_ptr<Entry> find(const std::string& id) const;
    std::string fresh_id();
    void persist(const std::string& id, const Entry& e) const;
    void load_snapshots();

    ServiceOptions opts_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t counter_ = 0;
};

/// Routes:
///   POST   /sessions              {"terminals": [[x,y],...]} or {"file": "<terminal text>"}
///   GET    /sessions/{id}
///   POST   /sessions/{id}/actions <action document>
///   DELETE /sessions/{id}
/// Errors answer {"error": <name>, "message": <text>}.
void register_routes(httplib::Server& server, SessionService& service);

} // namespace stree
