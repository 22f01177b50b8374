#include "pplot/scene.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

namespace pplot {

namespace {

constexpr const char* kMarkColor = "#4682b4";
constexpr const char* kAnnotationColor = "#ff7f0e";
constexpr const char* kHandleColor = "#2ca02c";
constexpr const char* kFocusBrush = "#9ecae1";
constexpr const char* kContextBrush = "#d9d9d9";

SceneNode box(Rect r, Style style, std::string role = {}) {
    SceneNode n{marks::Box{r}, std::move(style), std::move(role), {}};
    return n;
}

SceneNode line(Point a, Point b, Style style, std::string role = {}) {
    return SceneNode{marks::Line{a, b}, std::move(style), std::move(role), {}};
}

SceneNode text(Point at, std::string s, double size, marks::Anchor anchor, std::string fill) {
    Style st;
    st.fill = std::move(fill);
    return SceneNode{marks::Text{at, std::move(s), size, anchor}, st, {}, {}};
}

Style filled(std::string fill, double opacity = 1.0) {
    Style s;
    s.fill = std::move(fill);
    s.opacity = opacity;
    return s;
}

Style stroked(std::string stroke, double width = 1.0, std::string dash = {}) {
    Style s;
    s.stroke = std::move(stroke);
    s.stroke_width = width;
    s.dash = std::move(dash);
    return s;
}

[[noreturn]] void scale_mismatch(const char* what) {
    throw SceneError(SceneErrc::ScaleMismatch, what);
}

const LinearScale& need_linear(const ValueScale& s, const char* what) {
    if (const auto* l = std::get_if<LinearScale>(&s)) return *l;
    scale_mismatch(what);
}

TimeInterval need_time(std::optional<TimeInterval> t, const char* what) {
    if (!t || !t->valid()) scale_mismatch(what);
    return *t;
}

/// Value axis position of a raw mark: linear y, or the center of its category row.
double mark_y(double value, const ValueScale& scale, const Rect& region) {
    if (const auto* l = std::get_if<LinearScale>(&scale)) return l->to_y(value, region);
    const auto& c = std::get<CategoryScale>(scale);
    return c.row_top(static_cast<std::size_t>(value), region) + 0.5 * c.row_height(region);
}

SceneNode raw_marks_node(const plots::RawMarks& m, const Rect& region, const ValueScale& vs, TimeInterval ts,
                         FocusPlot mark) {
    SceneNode g = make_group();
    if (m.times.empty()) return g;
    if (std::holds_alternative<std::monostate>(vs)) scale_mismatch("raw marks need a value scale");
    auto& kids = g.children();

    switch (mark) {
        case FocusPlot::Line: {
            const auto& lin = need_linear(vs, "line marks need a linear value scale");
            marks::Path path;
            path.points.reserve(m.times.size());
            for (std::size_t i = 0; i < m.times.size(); ++i)
                path.points.push_back({time_to_x(m.times[i], ts, region), lin.to_y(m.values[i], region)});
            kids.push_back(SceneNode{std::move(path), stroked(kMarkColor, 1.5), {}, {}});
            break;
        }
        case FocusPlot::Bar: {
            const auto& lin = need_linear(vs, "bar marks need a linear value scale");
            const double base = std::clamp(0.0, lin.lo, lin.hi);
            const double base_y = lin.to_y(base, region);
            const double bw =
                std::clamp(0.8 * region.w / static_cast<double>(m.times.size()), 1.0, 8.0);
            for (std::size_t i = 0; i < m.times.size(); ++i) {
                const double x = time_to_x(m.times[i], ts, region);
                const double y = lin.to_y(m.values[i], region);
                kids.push_back(box({x - 0.5 * bw, std::min(y, base_y), bw, std::fabs(base_y - y)},
                                   filled(kMarkColor)));
            }
            break;
        }
        case FocusPlot::Dot:
            for (std::size_t i = 0; i < m.times.size(); ++i) {
                kids.push_back(SceneNode{
                    marks::Circle{{time_to_x(m.times[i], ts, region), mark_y(m.values[i], vs, region)}, 2.0},
                    filled(kMarkColor, 0.8), {}, {}});
            }
            break;
        case FocusPlot::EventTicks:
            for (std::size_t i = 0; i < m.times.size(); ++i) {
                const double x = time_to_x(m.times[i], ts, region);
                double top = region.y + 0.2 * region.h;
                double bottom = region.bottom() - 0.2 * region.h;
                if (const auto* c = std::get_if<CategoryScale>(&vs)) {
                    const double rh = c->row_height(region);
                    top = c->row_top(static_cast<std::size_t>(m.values[i]), region) + 0.15 * rh;
                    bottom = top + 0.7 * rh;
                }
                kids.push_back(line({x, top}, {x, bottom}, stroked(kMarkColor, 1.0)));
            }
            break;
    }
    return g;
}

SceneNode envelope_node(const plots::Envelope& e, const Rect& region, const ValueScale& vs, TimeInterval ts) {
    SceneNode g = make_group();
    if (e.times.empty()) return g;
    const auto& lin = need_linear(vs, "envelopes need a linear value scale");
    marks::Path band;
    band.closed = true;
    marks::Path mean;
    for (std::size_t i = 0; i < e.times.size(); ++i) {
        const double x = time_to_x(e.times[i], ts, region);
        band.points.push_back({x, lin.to_y(e.max[i], region)});
        mean.points.push_back({x, lin.to_y(e.mean[i], region)});
    }
    for (std::size_t i = e.times.size(); i-- > 0;)
        band.points.push_back({time_to_x(e.times[i], ts, region), lin.to_y(e.min[i], region)});
    g.children().push_back(SceneNode{std::move(band), filled(kMarkColor, 0.25), "envelope-band", {}});
    g.children().push_back(SceneNode{std::move(mean), stroked(kMarkColor, 1.5), "envelope-mean", {}});
    return g;
}

SceneNode histogram_node(const plots::Histogram& h, const Rect& region, const ValueScale& vs) {
    const auto& lin = need_linear(vs, "histograms need a linear value scale");
    SceneNode g = make_group();
    const std::size_t peak = h.counts.empty() ? 0 : *std::max_element(h.counts.begin(), h.counts.end());
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double y_top = lin.to_y(h.edges[i + 1], region);
        const double y_bottom = lin.to_y(h.edges[i], region);
        const double len =
            peak == 0 ? 0.0 : region.w * static_cast<double>(h.counts[i]) / static_cast<double>(peak);
        auto bar = box({region.x, y_top, len, y_bottom - y_top}, filled(kMarkColor, 0.85));
        bar.data.emplace_back("count", std::to_string(h.counts[i]));
        g.children().push_back(std::move(bar));
    }
    return g;
}

SceneNode category_counts_node(const plots::CategoryCounts& c, const Rect& region, const ValueScale& vs) {
    const auto* cat = std::get_if<CategoryScale>(&vs);
    if (!cat || cat->count < c.counts.size()) scale_mismatch("category counts need a matching category scale");
    SceneNode g = make_group();
    const std::size_t peak = c.counts.empty() ? 0 : *std::max_element(c.counts.begin(), c.counts.end());
    const double rh = cat->row_height(region);
    for (std::size_t i = 0; i < c.counts.size(); ++i) {
        const double len =
            peak == 0 ? 0.0 : region.w * static_cast<double>(c.counts[i]) / static_cast<double>(peak);
        auto bar = box({region.x, cat->row_top(i, region) + 0.1 * rh, len, 0.8 * rh}, filled(kMarkColor, 0.85));
        bar.data.emplace_back("category", c.categories[i]);
        bar.data.emplace_back("count", std::to_string(c.counts[i]));
        g.children().push_back(std::move(bar));
    }
    return g;
}

SceneNode bin_counts_node(const plots::BinCounts& b, const Rect& region, TimeInterval ts) {
    SceneNode g = make_group();
    const std::size_t peak = b.counts.empty() ? 0 : *std::max_element(b.counts.begin(), b.counts.end());
    for (std::size_t i = 0; i < b.counts.size(); ++i) {
        const double x0 = time_to_x(b.edges[i], ts, region);
        const double x1 = time_to_x(b.edges[i + 1], ts, region);
        const double opacity = peak == 0 ? 0.0 : static_cast<double>(b.counts[i]) / static_cast<double>(peak);
        auto band = box({x0, region.y, x1 - x0, region.h}, filled(kMarkColor, opacity));
        band.data.emplace_back("count", std::to_string(b.counts[i]));
        g.children().push_back(std::move(band));
    }
    return g;
}

/// Grid fills the region; value bin 0 is the bottom row for continuous grids.
/// Category grids put code 0 on the top row, matching the category scale.
SceneNode density_node(const plots::DensityGrid& d, const Rect& region, bool top_down) {
    SceneNode g = make_group();
    const double peak = static_cast<double>(d.max_count());
    const double cw = region.w / static_cast<double>(d.nx);
    const double ch = region.h / static_cast<double>(d.ny);
    for (std::size_t tx = 0; tx < d.nx; ++tx) {
        for (std::size_t vy = 0; vy < d.ny; ++vy) {
            const double row = top_down ? static_cast<double>(vy) : static_cast<double>(d.ny - 1 - vy);
            const double opacity = peak == 0 ? 0.0 : static_cast<double>(d.at(tx, vy)) / peak;
            g.children().push_back(box({region.x + cw * static_cast<double>(tx), region.y + ch * row, cw, ch},
                                       filled(kMarkColor, opacity)));
        }
    }
    return g;
}

std::string plot_name(const PlotData& data) {
    switch (data.index()) {
        case 0: return "raw-marks";
        case 1: return "envelope";
        case 2: return "histogram";
        case 3: return "category-counts";
        case 4: return "bin-counts";
        default: return "density-grid";
    }
}

std::string role_for(std::string_view kind, std::size_t track, std::size_t zone) {
    return std::string(kind) + ":" + std::to_string(track) + ":" + std::to_string(zone);
}

}  // namespace

std::string_view to_string(SceneErrc code) {
    switch (code) {
        case SceneErrc::TooSmall: return "TooSmall";
        case SceneErrc::ScaleMismatch: return "ScaleMismatch";
        case SceneErrc::UnknownSeries: return "UnknownSeries";
        case SceneErrc::LayoutMismatch: return "LayoutMismatch";
    }
    return "Unknown";
}

const std::vector<SceneNode>& SceneNode::children() const { return std::get<marks::Group>(shape).children; }
std::vector<SceneNode>& SceneNode::children() { return std::get<marks::Group>(shape).children; }

std::optional<std::string> SceneNode::data_value(std::string_view key) const {
    for (const auto& [k, v] : data) {
        if (k == key) return v;
    }
    return std::nullopt;
}

const SceneNode* SceneNode::find(std::string_view wanted) const {
    if (role == wanted) return this;
    if (!is_group()) return nullptr;
    for (const auto& c : children()) {
        if (const auto* hit = c.find(wanted)) return hit;
    }
    return nullptr;
}

std::vector<const SceneNode*> SceneNode::find_all(std::string_view prefix) const {
    std::vector<const SceneNode*> out;
    const auto walk = [&](const SceneNode& n, const auto& self) -> void {
        if (!n.role.empty() && std::string_view(n.role).substr(0, prefix.size()) == prefix) out.push_back(&n);
        if (n.is_group()) {
            for (const auto& c : n.children()) self(c, self);
        }
    };
    walk(*this, walk);
    return out;
}

SceneNode make_group(std::string role) { return SceneNode{marks::Group{}, Style{}, std::move(role), {}}; }

Rect FigureGeometry::zone_region(std::size_t track, std::size_t zone) const {
    const Rect& t = tracks.at(track);
    const auto& c = columns.at(zone);
    return {c.x0, t.y, c.width(), t.h};
}

double time_to_x(TimeMs t, TimeInterval scale, const Rect& region) {
    return region.x + region.w * (static_cast<double>(t - scale.start) / static_cast<double>(scale.width()));
}

FigureGeometry layout_figure(const FigureSpec& spec, double width, double height) {
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
        throw SceneError(SceneErrc::TooSmall, "figure size must be positive");
    if (spec.tracks.empty()) throw SceneError(SceneErrc::TooSmall, "figure needs at least one track");

    FigureGeometry g;
    g.width = width;
    g.height = height;
    const double control_h = spec.layout.control_height_px;
    g.control = {0.0, 0.0, width, control_h};

    const auto n_tracks = static_cast<double>(spec.tracks.size());
    const double track_h = (height - control_h - kTrackGap * n_tracks) / n_tracks;
    if (track_h < kMinTrackHeight) {
        throw SceneError(SceneErrc::TooSmall, "track height " + std::to_string(track_h) + " px is below " +
                                                  std::to_string(kMinTrackHeight) + " px");
    }
    for (std::size_t i = 0; i < spec.tracks.size(); ++i) {
        const double y = control_h + kControlGap + static_cast<double>(i) * (track_h + kTrackGap);
        g.tracks.push_back({0.0, y, width, track_h});
    }

    const std::size_t n_zones = spec.initial_zones.size();
    const std::size_t n_context = static_cast<std::size_t>(std::count_if(
        spec.initial_zones.begin(), spec.initial_zones.end(), [](const ZoneSpec& z) { return z.kind == ZoneKind::Context; }));
    const double focus_w = n_context == 0 ? width : width * spec.layout.focus_fraction;
    const double context_w = n_context == 0 ? 0.0 : (width - focus_w) / static_cast<double>(n_context);

    double x = 0.0;
    for (std::size_t z = 0; z < n_zones; ++z) {
        const double w = spec.initial_zones[z].kind == ZoneKind::Focus ? focus_w : context_w;
        if (w < kMinColumnWidth) {
            throw SceneError(SceneErrc::TooSmall, "zone column " + std::to_string(z) + " is " + std::to_string(w) +
                                                      " px wide, below " + std::to_string(kMinColumnWidth) + " px");
        }
        const double x1 = z + 1 == n_zones ? width : x + w;
        g.columns.push_back({x, x1});
        g.boundary_x.push_back(x);
        x = x1;
    }
    g.boundary_x.push_back(width);
    return g;
}

SceneNode build_zone_plot(const PlotData& data, const Rect& region, const ValueScale& value_scale,
                          std::optional<TimeInterval> time_scale, FocusPlot mark) {
    SceneNode node = std::visit(
        [&](const auto& d) -> SceneNode {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, plots::RawMarks>) {
                if (d.times.empty()) return make_group();
                return raw_marks_node(d, region, value_scale, need_time(time_scale, "raw marks need a time scale"),
                                      mark);
            } else if constexpr (std::is_same_v<D, plots::Envelope>) {
                if (d.times.empty()) return make_group();
                return envelope_node(d, region, value_scale, need_time(time_scale, "envelopes need a time scale"));
            } else if constexpr (std::is_same_v<D, plots::Histogram>) {
                return histogram_node(d, region, value_scale);
            } else if constexpr (std::is_same_v<D, plots::CategoryCounts>) {
                return category_counts_node(d, region, value_scale);
            } else if constexpr (std::is_same_v<D, plots::BinCounts>) {
                return bin_counts_node(d, region, need_time(time_scale, "bin counts need a time scale"));
            } else {
                return density_node(d, region, std::holds_alternative<CategoryScale>(value_scale));
            }
        },
        data);
    node.data.emplace_back("plot", plot_name(data));
    return node;
}

SceneNode build_annotation(const AnnotationStats& stats, AnnotationKind kind, const Rect& region,
                           const LinearScale& value_scale) {
    if (kind == AnnotationKind::MeanLine) {
        if (!stats.mean) return make_group();
        const double y = value_scale.to_y(*stats.mean, region);
        auto n = line({region.x, y}, {region.right(), y}, stroked(kAnnotationColor, 1.5, "4,3"));
        n.data.emplace_back("value", std::to_string(*stats.mean));
        return n;
    }
    const auto q1 = stats.quantiles.find(0.25);
    const auto q3 = stats.quantiles.find(0.75);
    if (q1 == stats.quantiles.end() || q3 == stats.quantiles.end()) return make_group();
    const double y_top = value_scale.to_y(q3->second, region);
    const double y_bottom = value_scale.to_y(q1->second, region);
    return box({region.x, y_top, region.w, y_bottom - y_top}, filled(kAnnotationColor, 0.18));
}

SceneNode build_control_timeline(const ZoneLayout& layout, const Rect& region) {
    SceneNode root = make_group("control-timeline");
    auto& kids = root.children();
    const TimeInterval domain = layout.axis_domain();

    const double brush_top = region.y + 0.1 * region.h;
    const double brush_h = 0.55 * region.h;
    const double handle = std::min(8.0, 0.3 * region.h);
    const double lock = std::min(8.0, 0.25 * region.h);
    const double lock_top = region.y + 0.72 * region.h;

    kids.push_back(box({region.x, brush_top, region.w, brush_h}, filled("#f0f0f0"), "control-axis"));

    for (std::size_t z = 0; z < layout.zone_count(); ++z) {
        const auto iv = layout.interval(z);
        const double x0 = std::max(region.x, time_to_x(iv.start, domain, region));
        const double x1 = std::min(region.right(), time_to_x(iv.end, domain, region));
        if (x1 <= x0) continue;
        const bool focus = layout.kind(z) == ZoneKind::Focus;
        Style st = filled(focus ? kFocusBrush : kContextBrush, focus ? 0.8 : 0.6);
        st.stroke = "#636363";
        st.stroke_width = 0.5;
        auto brush = box({x0, brush_top, x1 - x0, brush_h}, st, "brush:" + std::to_string(z));
        brush.data.emplace_back("zone-kind", focus ? "focus" : "context");
        brush.data.emplace_back("start", std::to_string(iv.start));
        brush.data.emplace_back("end", std::to_string(iv.end));
        kids.push_back(std::move(brush));
    }

    for (std::size_t b = 0; b < layout.boundary_count(); ++b) {
        const TimeMs t = layout.boundary(b);
        if (t < domain.start || t > domain.end) continue;
        const double x = time_to_x(t, domain, region);
        if (!layout.locked(b)) {
            auto h = box({x - 0.5 * handle, brush_top + 0.5 * brush_h - 0.5 * handle, handle, handle},
                         filled(kHandleColor), "handle:" + std::to_string(b));
            h.data.emplace_back("time", std::to_string(t));
            kids.push_back(std::move(h));
        }
        Style ls = filled(layout.locked(b) ? "#000000" : "#ffffff");
        ls.stroke = "#000000";
        auto l = box({x - 0.5 * lock, lock_top, lock, lock}, ls, "lock:" + std::to_string(b));
        l.data.emplace_back("locked", layout.locked(b) ? "true" : "false");
        kids.push_back(std::move(l));
    }

    kids.push_back(text({region.x + lock + 2.0, region.bottom() - 1.0}, format_time(domain.start), 9.0,
                        marks::Anchor::Start, "#636363"));
    kids.push_back(text({region.right() - lock - 2.0, region.bottom() - 1.0}, format_time(domain.end), 9.0,
                        marks::Anchor::End, "#636363"));
    return root;
}

SceneNode build_hover_indicator(TimeMs time, const FigureGeometry& geometry, const ZoneLayout& layout) {
    const auto focus = layout.focus_interval();
    if (!focus.contains(time) || geometry.tracks.empty()) return make_group();

    const auto& col = geometry.columns.at(layout.focus_index());
    const Rect span{col.x0, geometry.tracks.front().y, col.width(),
                    geometry.tracks.back().bottom() - geometry.tracks.front().y};
    const double x = time_to_x(time, focus, span);

    SceneNode g = make_group("hover-indicator");
    g.data.emplace_back("time", std::to_string(time));
    g.children().push_back(line({x, span.y}, {x, span.bottom()}, stroked("#333333", 1.0), "hover-line"));
    auto label = text({x + 3.0, span.y + 10.0}, format_time(time), 10.0, marks::Anchor::Start, "#333333");
    label.role = "hover-label";
    g.children().push_back(std::move(label));
    return g;
}

LinearScale track_value_scale(const Series& series) {
    if (series.values.empty()) return {0.0, 1.0};
    const auto [mn, mx] = std::minmax_element(series.values.begin(), series.values.end());
    if (*mn == *mx) return {*mn - 0.5, *mx + 0.5};
    const double pad = 0.05 * (*mx - *mn);
    return {*mn - pad, *mx + pad};
}

Scene compose(const Dataset& dataset, const FigureSpec& spec, const ZoneLayout& layout, double width, double height,
              std::optional<TimeMs> hover) {
    if (layout.zone_count() != spec.initial_zones.size())
        throw SceneError(SceneErrc::LayoutMismatch, "layout zone count differs from the figure spec");
    for (std::size_t z = 0; z < layout.zone_count(); ++z) {
        if (layout.kind(z) != spec.initial_zones[z].kind)
            throw SceneError(SceneErrc::LayoutMismatch, "layout zone kinds differ from the figure spec");
    }
    std::vector<const Series*> series;
    for (const auto& t : spec.tracks) {
        const Series* s = dataset.find(t.series);
        if (!s) throw SceneError(SceneErrc::UnknownSeries, "dataset has no series '" + t.series + "'");
        series.push_back(s);
    }

    FigureGeometry geom = layout_figure(spec, width, height);
    SceneNode root = make_group("figure");
    root.children().push_back(box({0.0, 0.0, width, height}, filled("#ffffff"), "background"));
    root.children().push_back(build_control_timeline(layout, geom.control));

    for (std::size_t ti = 0; ti < spec.tracks.size(); ++ti) {
        const auto& track = spec.tracks[ti];
        const Series& s = *series[ti];
        SceneNode tg = make_group("track:" + std::to_string(ti));
        tg.data.emplace_back("series", track.series);

        ValueScale vscale;
        ValueDomain hist_domain{0.0, 1.0};
        LinearScale linear;
        if (track.value_kind == ValueKind::Continuous) {
            linear = track_value_scale(s);
            vscale = linear;
            if (!s.values.empty()) {
                const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
                hist_domain = *mn < *mx ? ValueDomain{*mn, *mx} : ValueDomain{*mn - 0.5, *mx + 0.5};
            }
        } else {
            vscale = CategoryScale{track.value_kind == ValueKind::Categorical
                                       ? std::max<std::size_t>(s.categories.size(), 1)
                                       : 1};
        }

        for (std::size_t z = 0; z < layout.zone_count(); ++z) {
            const Rect region = geom.zone_region(ti, z);
            const TimeInterval iv = layout.interval(z);
            const SeriesSlice sl = slice(s, iv);
            const bool is_focus = layout.kind(z) == ZoneKind::Focus;
            const std::size_t time_bins = static_cast<std::size_t>(
                std::clamp<TimeMs>(static_cast<TimeMs>(region.w / 4.0), 1, iv.width()));

            PlotType type = PlotType::TVAP;
            PlotData data;
            FocusPlot mark = track.focus_plot;
            if (is_focus) {
                data = raw_marks(sl);
            } else {
                type = select_plot_type(track.periphery_policy, sl.size());
                switch (type) {
                    case PlotType::TVAP:
                        if (track.value_kind == ValueKind::Continuous && track.envelope_window > 1) {
                            data = moving_average_envelope(sl, track.envelope_window);
                        } else {
                            data = raw_marks(sl);
                        }
                        break;
                    case PlotType::VAP:
                        if (track.value_kind == ValueKind::Continuous) {
                            data = histogram(sl, hist_domain, track.histogram_bins);
                        } else {
                            data = category_counts(sl);
                        }
                        break;
                    case PlotType::TAP: data = time_bin_counts(sl, iv, time_bins); break;
                    case PlotType::NAP:
                        if (track.value_kind == ValueKind::Continuous) {
                            data = density_grid(sl, iv, hist_domain, time_bins, track.histogram_bins);
                        } else {
                            data = category_grid(sl, iv, time_bins);
                        }
                        break;
                }
            }

            SceneNode zg = make_group(role_for("plot", ti, z));
            zg.data.emplace_back("zone-kind", is_focus ? "focus" : "context");
            zg.data.emplace_back("plot-type", std::string(to_string(type)));
            zg.data.emplace_back("count", std::to_string(sl.size()));
            Style frame = filled(is_focus ? "#ffffff" : "#fafafa");
            frame.stroke = "#cccccc";
            frame.stroke_width = 0.5;
            zg.children().push_back(box(region, frame, role_for("zone-frame", ti, z)));
            zg.children().push_back(build_zone_plot(data, region, vscale, iv, mark));

            if (track.value_kind == ValueKind::Continuous && !track.annotations.empty()) {
                const auto stats = summary_stats(sl);
                for (auto kind : track.annotations) {
                    auto a = build_annotation(stats, kind, region, linear);
                    if (a.is_group()) continue;
                    a.role = role_for(kind == AnnotationKind::MeanLine ? "mean-line" : "quantile-band", ti, z);
                    zg.children().push_back(std::move(a));
                }
            }
            tg.children().push_back(std::move(zg));
        }

        const Rect& tr = geom.tracks[ti];
        std::string label = track.display_label();
        if (track.units) label += " (" + *track.units + ")";
        tg.children().push_back(text({tr.x + 4.0, tr.y + 12.0}, label, 11.0, marks::Anchor::Start, "#222222"));
        root.children().push_back(std::move(tg));
    }

    if (hover) root.children().push_back(build_hover_indicator(*hover, geom, layout));

    return Scene{std::move(root), std::move(geom), layout, hover};
}

}  // namespace pplot
