#pragma once

#include "pplot/ingest.hpp"
#include "pplot/scene.hpp"
#include "pplot/timeline.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace pplot {

/// Failure carrying an HTTP status, a stable error code string, and an
/// optional JSON body extension (diagnostics, current state on conflict).
class ServiceError : public std::runtime_error {
public:
    ServiceError(int status, std::string code, const std::string& message, nlohmann::json extra = nullptr)
        : std::runtime_error(message), status_(status), code_(std::move(code)), extra_(std::move(extra)) {}

    [[nodiscard]] int status() const noexcept { return status_; }
    [[nodiscard]] const std::string& code() const noexcept { return code_; }
    [[nodiscard]] const nlohmann::json& extra() const noexcept { return extra_; }

private:
    int status_;
    std::string code_;
    nlohmann::json extra_;
};

[[nodiscard]] nlohmann::json event_to_json(const InteractionEvent& event);
/// Throws ServiceError 400 (BadEvent) for malformed events and 422
/// (IndexOutOfRange) for negative boundary indices.
[[nodiscard]] InteractionEvent event_from_json(const nlohmann::json& j);

struct ServiceOptions {
    std::chrono::seconds idle_timeout{30 * 60};
    double default_width = 1200.0;
    double default_height = 600.0;
    /// Defaults to std::chrono::steady_clock::now.
    std::function<std::chrono::steady_clock::time_point()> clock;
};

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/**
 * In-memory session store implementing the interaction protocol.
 *
 * Each session owns one ZoneLayout shared by all of its tracks. Events on a
 * session are serialized by a per-session lock; reads take a shared lock and
 * see a consistent (revision, layout, hover) triple. Distinct sessions never
 * contend beyond the brief store lookup. Idle sessions are evicted lazily.
 */
class SessionService {
public:
    explicit SessionService(ServiceOptions options = {});

    struct Snapshot {
        std::string id;
        std::uint64_t revision = 0;
        Scene scene;
    };

    /// Throws ServiceError 400 with ingest diagnostics.
    Snapshot create_session(std::string_view csv, std::string_view spec_text,
                            std::optional<double> width = std::nullopt, std::optional<double> height = std::nullopt);

    /// Throws ServiceError 404 UnknownSession, 409 RevisionConflict (extra
    /// holds the current revision and scene), 422 BoundaryLocked /
    /// IndexOutOfRange / InvalidArgument / TooSmall.
    Snapshot apply_event(const std::string& id, const InteractionEvent& event, std::uint64_t expected_revision,
                         std::optional<double> width = std::nullopt, std::optional<double> height = std::nullopt);

    /// Pure render of the current state. Throws 404, 422 TooSmall.
    [[nodiscard]] Snapshot get_scene(const std::string& id, std::optional<double> width = std::nullopt,
                                     std::optional<double> height = std::nullopt);

    /// Throws 404.
    void delete_session(const std::string& id);

    std::size_t evict_idle();
    [[nodiscard]] std::size_t session_count() const;

    // HTTP-shaped entry points; never throw.
    HttpResponse handle_create(std::string_view csv, std::string_view spec_text, std::optional<double> width,
                               std::optional<double> height);
    HttpResponse handle_event(const std::string& id, std::string_view body);
    HttpResponse handle_get_scene(const std::string& id, std::optional<double> width, std::optional<double> height,
                                  std::string_view format);
    HttpResponse handle_delete(const std::string& id);

private:
    struct Session {
        Dataset dataset;
        FigureSpec spec;
        ZoneLayout layout;
        std::optional<TimeMs> hover;
        std::uint64_t revision = 0;
        double width = 0.0;
        double height = 0.0;
    };
    struct Slot {
        Slot(Session s, std::chrono::steady_clock::time_point t) : session(std::move(s)), last_access(t) {}

        mutable std::shared_mutex mutex;
        Session session;
        std::chrono::steady_clock::time_point last_access;
    };

    std::shared_ptr<Slot> lookup(const std::string& id);
    std::size_t evict_idle_locked(std::chrono::steady_clock::time_point now);
    std::chrono::steady_clock::time_point now() const;
    std::string new_id();

    ServiceOptions options_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Slot>> sessions_;
    std::mt19937_64 rng_;
};

/// Renders a scene at the session's stored size unless overridden.
[[nodiscard]] Scene render_session_scene(const Dataset& dataset, const FigureSpec& spec, const ZoneLayout& layout,
                                         std::optional<TimeMs> hover, double width, double height);

/// Registers the session API routes on an existing server:
///   POST   /sessions                  multipart (data, spec) or JSON {data, spec}
///   GET    /sessions/{id}/scene       ?width&height&format=json|svg
///   POST   /sessions/{id}/events      {event, expected_revision[, width, height]}
///   DELETE /sessions/{id}
void mount_routes(httplib::Server& server, SessionService& service);

/// Blocking HTTP server on host:port exposing the session API. Optionally
/// serves static files (e.g. a browser client) from `static_dir`.
int run_http_server(SessionService& service, const std::string& host, int port,
                    const std::optional<std::string>& static_dir = std::nullopt);

}  // namespace pplot
