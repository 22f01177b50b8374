#include "pplot/scene_json.hpp"

namespace pplot {

using nlohmann::json;

namespace {

json rect_json(const Rect& r) { return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

json node_json(const SceneNode& n) {
    json j;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, marks::Group>) {
                j["type"] = "group";
                json kids = json::array();
                for (const auto& c : s.children) kids.push_back(node_json(c));
                j["children"] = std::move(kids);
            } else if constexpr (std::is_same_v<S, marks::Box>) {
                j["type"] = "rect";
                j["x"] = s.rect.x;
                j["y"] = s.rect.y;
                j["w"] = s.rect.w;
                j["h"] = s.rect.h;
            } else if constexpr (std::is_same_v<S, marks::Line>) {
                j["type"] = "line";
                j["x1"] = s.from.x;
                j["y1"] = s.from.y;
                j["x2"] = s.to.x;
                j["y2"] = s.to.y;
            } else if constexpr (std::is_same_v<S, marks::Circle>) {
                j["type"] = "circle";
                j["cx"] = s.center.x;
                j["cy"] = s.center.y;
                j["r"] = s.r;
            } else if constexpr (std::is_same_v<S, marks::Path>) {
                j["type"] = "path";
                json pts = json::array();
                for (const auto& p : s.points) pts.push_back({p.x, p.y});
                j["points"] = std::move(pts);
                j["closed"] = s.closed;
            } else {
                j["type"] = "text";
                j["x"] = s.at.x;
                j["y"] = s.at.y;
                j["text"] = s.text;
                j["size"] = s.size;
                j["anchor"] = s.anchor == marks::Anchor::Start ? "start"
                              : s.anchor == marks::Anchor::Middle ? "middle"
                                                                  : "end";
            }
        },
        n.shape);
    if (!n.role.empty()) j["role"] = n.role;
    if (!n.data.empty()) {
        json d = json::object();
        for (const auto& [k, v] : n.data) d[k] = v;
        j["data"] = std::move(d);
    }
    if (!n.is_group()) {
        j["style"] = {{"fill", n.style.fill},
                      {"stroke", n.style.stroke},
                      {"stroke_width", n.style.stroke_width},
                      {"dash", n.style.dash},
                      {"opacity", n.style.opacity}};
    } else if (n.style.opacity != 1.0) {
        j["style"] = {{"opacity", n.style.opacity}};
    }
    return j;
}

}  // namespace

json layout_to_json(const ZoneLayout& layout) {
    json zones = json::array();
    for (const auto& z : layout.zones())
        zones.push_back({{"kind", z.kind == ZoneKind::Focus ? "focus" : "context"},
                         {"start", z.interval.start},
                         {"end", z.interval.end}});
    json locks = json::array();
    for (bool l : layout.locks()) locks.push_back(l);
    return {{"zones", std::move(zones)},
            {"boundaries", layout.boundaries()},
            {"locks", std::move(locks)},
            {"focus_index", layout.focus_index()},
            {"axis_domain", {{"start", layout.axis_domain().start}, {"end", layout.axis_domain().end}}},
            {"min_zone_width", layout.min_zone_width()}};
}

json scene_to_json(const Scene& scene) {
    const auto& g = scene.geometry;
    json tracks = json::array();
    for (const auto& t : g.tracks) tracks.push_back(rect_json(t));
    json columns = json::array();
    for (const auto& c : g.columns) columns.push_back({c.x0, c.x1});

    json out;
    out["scene_version"] = kSceneVersion;
    out["geometry"] = {{"width", g.width},
                       {"height", g.height},
                       {"control", rect_json(g.control)},
                       {"tracks", std::move(tracks)},
                       {"columns", std::move(columns)},
                       {"boundary_x", g.boundary_x}};
    out["layout"] = layout_to_json(scene.layout);
    out["hover"] = scene.hover ? json(*scene.hover) : json(nullptr);
    out["root"] = node_json(scene.root);
    return out;
}

}  // namespace pplot
