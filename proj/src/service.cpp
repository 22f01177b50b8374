#include "pplot/service.hpp"

#include "pplot/scene_json.hpp"

#include <cmath>
#include <cstdio>

namespace pplot {

using nlohmann::json;

namespace {

ServiceError unknown_session(const std::string& id) {
    return ServiceError(404, "UnknownSession", "no session '" + id + "'");
}

ServiceError from_ingest(const IngestError& e) {
    json diags = json::array();
    for (const auto& d : e.diagnostics()) diags.push_back({{"location", d.location}, {"message", d.message}});
    return ServiceError(400, std::string(to_string(e.code())), e.what(), {{"diagnostics", std::move(diags)}});
}

ServiceError from_timeline(const TimelineError& e) { return ServiceError(422, std::string(to_string(e.code())), e.what()); }

ServiceError from_scene(const SceneError& e) {
    const int status = e.code() == SceneErrc::TooSmall ? 422 : 500;
    return ServiceError(status, std::string(to_string(e.code())), e.what());
}

HttpResponse error_response(const ServiceError& e) {
    json body = {{"error", e.code()}, {"message", e.what()}};
    if (e.extra().is_object()) {
        for (const auto& [k, v] : e.extra().items()) body[k] = v;
    }
    return {e.status(), "application/json", body.dump()};
}

std::size_t boundary_index(const json& j) {
    const auto it = j.find("boundary");
    if (it == j.end() || !it->is_number_integer()) throw ServiceError(400, "BadEvent", "'boundary' must be an integer");
    if (it->get<long long>() < 0) throw ServiceError(422, "IndexOutOfRange", "boundary index must be non-negative");
    return it->get<std::size_t>();
}

TimeMs time_field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer())
        throw ServiceError(400, "BadEvent", std::string("'") + key + "' must be an integer (epoch ms)");
    return it->get<TimeMs>();
}

}  // namespace

json event_to_json(const InteractionEvent& event) {
    return std::visit(
        [](const auto& e) -> json {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, events::ResizeBoundary>) {
                return {{"type", "resize_boundary"}, {"boundary", e.boundary}, {"time", e.time}};
            } else if constexpr (std::is_same_v<E, events::ToggleLock>) {
                return {{"type", "toggle_lock"}, {"boundary", e.boundary}};
            } else if constexpr (std::is_same_v<E, events::Pan>) {
                return {{"type", "pan"}, {"delta", e.delta}};
            } else if constexpr (std::is_same_v<E, events::Zoom>) {
                return {{"type", "zoom"}, {"factor", e.factor}, {"anchor", e.anchor}};
            } else {
                return {{"type", "hover"}, {"time", e.time ? json(*e.time) : json(nullptr)}};
            }
        },
        event);
}

InteractionEvent event_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ServiceError(400, "BadEvent", "event must be an object with a string 'type'");
    const auto type = j["type"].get<std::string>();
    if (type == "resize_boundary") return events::ResizeBoundary{boundary_index(j), time_field(j, "time")};
    if (type == "toggle_lock") return events::ToggleLock{boundary_index(j)};
    if (type == "pan") return events::Pan{time_field(j, "delta")};
    if (type == "zoom") {
        const auto f = j.find("factor");
        if (f == j.end() || !f->is_number()) throw ServiceError(400, "BadEvent", "'factor' must be a number");
        return events::Zoom{f->get<double>(), time_field(j, "anchor")};
    }
    if (type == "hover") {
        const auto t = j.find("time");
        if (t == j.end() || t->is_null()) return events::Hover{std::nullopt};
        return events::Hover{time_field(j, "time")};
    }
    throw ServiceError(400, "BadEvent", "unknown event type '" + type + "'");
}

Scene render_session_scene(const Dataset& dataset, const FigureSpec& spec, const ZoneLayout& layout,
                           std::optional<TimeMs> hover, double width, double height) {
    try {
        return compose(dataset, spec, layout, width, height, hover);
    } catch (const SceneError& e) {
        throw from_scene(e);
    }
}

SessionService::SessionService(ServiceOptions options) : options_(std::move(options)), rng_(std::random_device{}()) {}

std::chrono::steady_clock::time_point SessionService::now() const {
    return options_.clock ? options_.clock() : std::chrono::steady_clock::now();
}

std::string SessionService::new_id() {
    char buf[33];
    std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    return buf;
}

std::size_t SessionService::evict_idle_locked(std::chrono::steady_clock::time_point t) {
    std::size_t evicted = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        if (t - it->second->last_access > options_.idle_timeout) {
            it = sessions_.erase(it);
            ++evicted;
        } else {
            ++it;
        }
    }
    return evicted;
}

std::size_t SessionService::evict_idle() {
    std::lock_guard lock(mutex_);
    return evict_idle_locked(now());
}

std::size_t SessionService::session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<SessionService::Slot> SessionService::lookup(const std::string& id) {
    std::lock_guard lock(mutex_);
    const auto t = now();
    evict_idle_locked(t);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw unknown_session(id);
    it->second->last_access = t;
    return it->second;
}

SessionService::Snapshot SessionService::create_session(std::string_view csv, std::string_view spec_text,
                                                        std::optional<double> width, std::optional<double> height) {
    FigureSpec spec;
    Dataset dataset;
    std::optional<ZoneLayout> layout;
    try {
        spec = parse_spec(spec_text);
        dataset = parse_csv(csv, spec);
        const TimeInterval domain = figure_domain(spec, dataset);
        layout = initial_layout(spec, domain);
    } catch (const IngestError& e) {
        throw from_ingest(e);
    } catch (const TimelineError& e) {
        throw ServiceError(400, "ZoneInvariantViolation", e.what());
    }

    const double w = width.value_or(options_.default_width);
    const double h = height.value_or(options_.default_height);
    Scene scene = render_session_scene(dataset, spec, *layout, std::nullopt, w, h);

    auto slot = std::make_shared<Slot>(Session{std::move(dataset), std::move(spec), *layout, std::nullopt, 0, w, h}, now());
    std::lock_guard lock(mutex_);
    evict_idle_locked(slot->last_access);
    std::string id = new_id();
    while (sessions_.count(id)) id = new_id();
    sessions_.emplace(id, std::move(slot));
    return {id, 0, std::move(scene)};
}

SessionService::Snapshot SessionService::apply_event(const std::string& id, const InteractionEvent& event,
                                                     std::uint64_t expected_revision, std::optional<double> width,
                                                     std::optional<double> height) {
    auto slot = lookup(id);

    std::unique_lock lock(slot->mutex);
    Session& s = slot->session;
    if (expected_revision != s.revision) {
        Scene current = render_session_scene(s.dataset, s.spec, s.layout, s.hover, s.width, s.height);
        throw ServiceError(409, "RevisionConflict",
                           "expected revision " + std::to_string(expected_revision) + ", session is at " +
                               std::to_string(s.revision),
                           {{"revision", s.revision}, {"scene", scene_to_json(current)}});
    }

    const double w = width.value_or(s.width);
    const double h = height.value_or(s.height);
    std::optional<ZoneLayout> next;
    std::optional<TimeMs> hover = s.hover;
    try {
        next = s.layout.apply(event);
    } catch (const TimelineError& e) {
        throw from_timeline(e);
    }
    if (const auto* hv = std::get_if<events::Hover>(&event)) hover = hv->time;

    // Render before committing so a TooSmall size leaves the session untouched.
    Scene scene = render_session_scene(s.dataset, s.spec, *next, hover, w, h);
    s.layout = *next;
    s.hover = hover;
    s.width = w;
    s.height = h;
    ++s.revision;
    return {id, s.revision, std::move(scene)};
}

SessionService::Snapshot SessionService::get_scene(const std::string& id, std::optional<double> width,
                                                   std::optional<double> height) {
    auto slot = lookup(id);
    std::shared_lock lock(slot->mutex);
    const Session& s = slot->session;
    return {id, s.revision,
            render_session_scene(s.dataset, s.spec, s.layout, s.hover, width.value_or(s.width),
                                 height.value_or(s.height))};
}

void SessionService::delete_session(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (sessions_.erase(id) == 0) throw unknown_session(id);
}

HttpResponse SessionService::handle_create(std::string_view csv, std::string_view spec_text,
                                           std::optional<double> width, std::optional<double> height) {
    try {
        auto snap = create_session(csv, spec_text, width, height);
        json body = {{"id", snap.id}, {"revision", snap.revision}, {"scene", scene_to_json(snap.scene)}};
        return {200, "application/json", body.dump()};
    } catch (const ServiceError& e) {
        return error_response(e);
    }
}

HttpResponse SessionService::handle_event(const std::string& id, std::string_view body) {
    try {
        json request;
        try {
            request = json::parse(body);
        } catch (const json::parse_error& e) {
            throw ServiceError(400, "BadEvent", std::string("malformed JSON: ") + e.what());
        }
        if (!request.is_object() || !request.contains("event"))
            throw ServiceError(400, "BadEvent", "request needs 'event' and 'expected_revision'");
        const auto rev = request.find("expected_revision");
        if (rev == request.end() || !rev->is_number_unsigned())
            throw ServiceError(400, "BadEvent", "'expected_revision' must be a non-negative integer");
        std::optional<double> w;
        std::optional<double> h;
        if (request.contains("width") && request["width"].is_number()) w = request["width"].get<double>();
        if (request.contains("height") && request["height"].is_number()) h = request["height"].get<double>();

        const InteractionEvent event = event_from_json(request["event"]);
        auto snap = apply_event(id, event, rev->get<std::uint64_t>(), w, h);
        json out = {{"revision", snap.revision}, {"scene", scene_to_json(snap.scene)}};
        return {200, "application/json", out.dump()};
    } catch (const ServiceError& e) {
        return error_response(e);
    }
}

HttpResponse SessionService::handle_get_scene(const std::string& id, std::optional<double> width,
                                              std::optional<double> height, std::string_view format) {
    try {
        if (!format.empty() && format != "json" && format != "svg")
            throw ServiceError(400, "BadRequest", "format must be json or svg");
        auto snap = get_scene(id, width, height);
        if (format == "svg") return {200, "image/svg+xml", to_svg(snap.scene)};
        json out = {{"revision", snap.revision}, {"scene", scene_to_json(snap.scene)}};
        return {200, "application/json", out.dump()};
    } catch (const ServiceError& e) {
        return error_response(e);
    }
}

HttpResponse SessionService::handle_delete(const std::string& id) {
    try {
        delete_session(id);
        return {200, "application/json", json{{"deleted", id}}.dump()};
    } catch (const ServiceError& e) {
        return error_response(e);
    }
}

}  // namespace pplot
