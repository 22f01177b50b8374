#include "pplot/scene.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace pplot {

namespace {

// Fixed three-decimal formatting; negative zero prints as zero.
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string dimension(double v) {
    if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    return num(v);
}

void escape_into(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
}

void attr(std::string& out, std::string_view name, std::string_view value) {
    out += ' ';
    out += name;
    out += "=\"";
    escape_into(out, value);
    out += '"';
}

void common_attrs(std::string& out, const SceneNode& n, bool group) {
    if (!n.role.empty()) attr(out, "data-role", n.role);
    for (const auto& [k, v] : n.data) attr(out, "data-" + k, v);
    if (!group) {
        attr(out, "fill", n.style.fill);
        attr(out, "stroke", n.style.stroke);
        if (n.style.stroke != "none") attr(out, "stroke-width", num(n.style.stroke_width));
        if (!n.style.dash.empty()) attr(out, "stroke-dasharray", n.style.dash);
    }
    if (n.style.opacity != 1.0) attr(out, "opacity", num(n.style.opacity));
}

void write_node(std::string& out, const SceneNode& n) {
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, marks::Group>) {
                out += "<g";
                common_attrs(out, n, true);
                if (s.children.empty()) {
                    out += "/>\n";
                    return;
                }
                out += ">\n";
                for (const auto& c : s.children) write_node(out, c);
                out += "</g>\n";
            } else if constexpr (std::is_same_v<S, marks::Box>) {
                out += "<rect";
                attr(out, "x", num(s.rect.x));
                attr(out, "y", num(s.rect.y));
                attr(out, "width", num(s.rect.w));
                attr(out, "height", num(s.rect.h));
                common_attrs(out, n, false);
                out += "/>\n";
            } else if constexpr (std::is_same_v<S, marks::Line>) {
                out += "<line";
                attr(out, "x1", num(s.from.x));
                attr(out, "y1", num(s.from.y));
                attr(out, "x2", num(s.to.x));
                attr(out, "y2", num(s.to.y));
                common_attrs(out, n, false);
                out += "/>\n";
            } else if constexpr (std::is_same_v<S, marks::Circle>) {
                out += "<circle";
                attr(out, "cx", num(s.center.x));
                attr(out, "cy", num(s.center.y));
                attr(out, "r", num(s.r));
                common_attrs(out, n, false);
                out += "/>\n";
            } else if constexpr (std::is_same_v<S, marks::Path>) {
                std::string d;
                for (std::size_t i = 0; i < s.points.size(); ++i) {
                    d += i == 0 ? "M" : " L";
                    d += num(s.points[i].x);
                    d += ' ';
                    d += num(s.points[i].y);
                }
                if (s.closed && !s.points.empty()) d += " Z";
                out += "<path";
                attr(out, "d", d);
                common_attrs(out, n, false);
                out += "/>\n";
            } else {
                out += "<text";
                attr(out, "x", num(s.at.x));
                attr(out, "y", num(s.at.y));
                attr(out, "font-size", num(s.size));
                attr(out, "font-family", "sans-serif");
                attr(out, "text-anchor", s.anchor == marks::Anchor::Start    ? "start"
                                         : s.anchor == marks::Anchor::Middle ? "middle"
                                                                             : "end");
                common_attrs(out, n, false);
                out += '>';
                escape_into(out, s.text);
                out += "</text>\n";
            }
        },
        n.shape);
}

}  // namespace

std::string to_svg(const Scene& scene) {
    std::string out;
    out.reserve(1 << 16);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"";
    attr(out, "width", dimension(scene.geometry.width));
    attr(out, "height", dimension(scene.geometry.height));
    attr(out, "viewBox", "0.000 0.000 " + num(scene.geometry.width) + " " + num(scene.geometry.height));
    out += ">\n";
    write_node(out, scene.root);
    out += "</svg>\n";
    return out;
}

}  // namespace pplot
