#include "pplot/scene.hpp"
#include "pplot/scene_json.hpp"

#include "support.hpp"

#include "doctest.h"

#include <cmath>
#include <set>

using namespace pplot;
using pplot::testing::Rng;

namespace {

FigureSpec spec_with(std::size_t tracks, std::size_t contexts_left = 1, std::size_t contexts_right = 1) {
    FigureSpec s;
    s.time_column = "t";
    s.time_format = TimeFormat::EpochMillis;
    for (std::size_t i = 0; i < tracks; ++i) {
        TrackSpec t;
        t.series = "s" + std::to_string(i);
        t.annotations = {AnnotationKind::MeanLine, AnnotationKind::QuantileBand};
        s.tracks.push_back(t);
    }
    TimeMs t = 0;
    for (std::size_t i = 0; i < contexts_left; ++i, t += 10000) s.initial_zones.push_back({ZoneKind::Context, t, t + 10000});
    s.initial_zones.push_back({ZoneKind::Focus, t, t + 10000});
    t += 10000;
    for (std::size_t i = 0; i < contexts_right; ++i, t += 10000) s.initial_zones.push_back({ZoneKind::Context, t, t + 10000});
    return s;
}

ZoneLayout layout_for(const FigureSpec& spec) {
    return initial_layout(spec, {spec.initial_zones.front().start, spec.initial_zones.back().end});
}

Dataset dataset_for(const FigureSpec& spec, Rng& rng, std::size_t n) {
    Dataset d;
    for (const auto& t : spec.tracks) {
        auto s = pplot::testing::random_continuous(rng, n, 0, 30000);
        s.name = t.series;
        d.series[t.series] = s;
    }
    return d;
}

const marks::Line& line_of(const SceneNode* n) {
    REQUIRE(n != nullptr);
    REQUIRE(std::holds_alternative<marks::Line>(n->shape));
    return std::get<marks::Line>(n->shape);
}

const Rect& rect_of(const SceneNode* n) {
    REQUIRE(n != nullptr);
    REQUIRE(std::holds_alternative<marks::Box>(n->shape));
    return std::get<marks::Box>(n->shape).rect;
}

std::string plot_variant(const Scene& scene, const std::string& role) {
    const auto* p = scene.root.find(role);
    REQUIRE(p != nullptr);
    for (const auto& c : p->children())
        if (auto v = c.data_value("plot")) return *v;
    return {};
}

}  // namespace

TEST_CASE("layout_figure columns and tracks") {
    const auto g = layout_figure(spec_with(1), 1000, 240);
    REQUIRE(g.columns.size() == 3);
    CHECK(g.columns[0] == ColumnRange{0, 250});
    CHECK(g.columns[1] == ColumnRange{250, 750});
    CHECK(g.columns[2] == ColumnRange{750, 1000});
    CHECK(g.boundary_x == std::vector<double>{0, 250, 750, 1000});
    CHECK(g.control == Rect{0, 0, 1000, 40});
    REQUIRE(g.tracks.size() == 1);
    CHECK(g.tracks[0].y == 44);
    CHECK(g.tracks[0].bottom() == 240);
}

TEST_CASE("layout_figure rejects figures that are too small") {
    try {
        (void)layout_figure(spec_with(1, 2, 2), 100, 600);
        FAIL("expected TooSmall");
    } catch (const SceneError& e) {
        CHECK(e.code() == SceneErrc::TooSmall);
    }
    CHECK_THROWS_AS((void)layout_figure(spec_with(4), 1000, 150), SceneError);
    CHECK_NOTHROW((void)layout_figure(spec_with(1, 0, 0), 20, 74));
}

TEST_CASE("histogram bars are proportional to counts") {
    plots::Histogram h;
    h.edges = {0, 1, 2, 3, 4};
    h.counts = {0, 1, 2, 1};
    const Rect region{0, 0, 200, 100};
    const auto node = build_zone_plot(h, region, LinearScale{0, 4}, std::nullopt);
    std::vector<const SceneNode*> bars;
    for (const auto& c : node.children()) bars.push_back(&c);
    REQUIRE(bars.size() == 4);
    double longest = 0;
    for (const auto* b : bars) longest = std::max(longest, rect_of(b).w);
    CHECK(longest == doctest::Approx(region.w));
    CHECK(rect_of(bars[0]).w == 0);
    CHECK(rect_of(bars[1]).w == doctest::Approx(region.w / 2));
    CHECK(rect_of(bars[2]).w == doctest::Approx(region.w));
    CHECK(rect_of(bars[1]).y == doctest::Approx(50));
}

TEST_CASE("empty raw marks give an empty group") {
    const auto node = build_zone_plot(plots::RawMarks{}, {0, 0, 100, 100}, LinearScale{0, 1}, TimeInterval{0, 10});
    REQUIRE(node.is_group());
    CHECK(node.children().empty());
}

TEST_CASE("density grid opacity is max-normalized") {
    plots::DensityGrid g;
    g.nx = 2;
    g.ny = 2;
    g.cells = {1, 0, 0, 1};
    const auto node = build_zone_plot(g, {0, 0, 100, 100}, std::monostate{}, std::nullopt);
    std::vector<const SceneNode*> cells;
    for (const auto& c : node.children()) cells.push_back(&c);
    REQUIRE(cells.size() == 4);
    int full = 0;
    int empty = 0;
    for (const auto* c : cells) {
        if (c->style.opacity == 1.0) ++full;
        if (c->style.opacity == 0.0) ++empty;
    }
    CHECK(full == 2);
    CHECK(empty == 2);
}

TEST_CASE("zone plots reject mismatched scales") {
    plots::Histogram h;
    h.edges = {0, 1};
    h.counts = {1};
    CHECK_THROWS_AS((void)build_zone_plot(h, {0, 0, 10, 10}, std::monostate{}, std::nullopt), SceneError);
    CHECK_THROWS_AS((void)build_zone_plot(plots::RawMarks{{1}, {1}}, {0, 0, 10, 10}, LinearScale{}, std::nullopt),
                    SceneError);
    CHECK_THROWS_AS((void)build_zone_plot(plots::BinCounts{{0, 10}, {1}}, {0, 0, 10, 10}, LinearScale{}, std::nullopt),
                    SceneError);
}

TEST_CASE("annotations") {
    AnnotationStats st;
    st.count = 3;
    st.mean = 2.0;
    st.quantiles = {{0.25, 1.0}, {0.5, 2.0}, {0.75, 3.0}};
    const Rect region{0, 0, 80, 100};
    const auto mean = build_annotation(st, AnnotationKind::MeanLine, region, LinearScale{0, 4});
    const auto& l = line_of(&mean);
    CHECK(l.from.y == 50);
    CHECK(l.to.y == 50);
    CHECK(l.from.x == 0);
    CHECK(l.to.x == 80);
    CHECK_FALSE(mean.style.dash.empty());
    const auto band = build_annotation(st, AnnotationKind::QuantileBand, region, LinearScale{0, 4});
    const auto& r = rect_of(&band);
    CHECK(r.y == 25);
    CHECK(r.bottom() == 75);
    const auto none = build_annotation(AnnotationStats{}, AnnotationKind::MeanLine, region, LinearScale{0, 4});
    CHECK(none.is_group());
    CHECK(none.children().empty());
}

TEST_CASE("control timeline brushes, handles and locks") {
    const auto spec = spec_with(1);
    const auto layout = layout_for(spec);
    const Rect region{0, 0, 300, 40};
    const auto node = build_control_timeline(layout, region);
    CHECK(rect_of(node.find("brush:0")).x == 0);
    CHECK(rect_of(node.find("brush:0")).right() == 100);
    CHECK(rect_of(node.find("brush:1")).right() == 200);
    CHECK(rect_of(node.find("brush:2")).right() == 300);
    CHECK(node.find_all("handle:").size() == 4);
    CHECK(node.find_all("lock:").size() == 4);

    const auto locked = build_control_timeline(layout.toggle_lock(3), region);
    CHECK(locked.find_all("handle:").size() == 3);
    CHECK(locked.find("handle:3") == nullptr);
    CHECK(locked.find("lock:3")->data_value("locked") == "true");
    CHECK(locked.find("lock:3")->style.fill == "#000000");

    const auto panned = build_control_timeline(layout.pan(-5000), region);
    CHECK(rect_of(panned.find("brush:0")).x == 0);
    CHECK(rect_of(panned.find("brush:0")).right() == 50);
    CHECK(panned.find("handle:0") == nullptr);
}

TEST_CASE("property: every handle is a legal resize target") {
    Rng rng(51);
    for (int iter = 0; iter < 300; ++iter) {
        auto layout = pplot::testing::random_layout(rng, {3, 7, 500, 20, 0.3});
        for (int k = 0; k < 5; ++k) layout = layout.pan(pplot::testing::uniform(rng, -300, 300));
        const auto node = build_control_timeline(layout, {0, 0, 600, 40});
        for (const auto* h : node.find_all("handle:")) {
            const auto b = std::stoul(h->role.substr(7));
            CHECK_FALSE(layout.locked(b));
            CHECK_NOTHROW((void)layout.resize_boundary(b, layout.boundary(b)));
        }
        std::set<std::string> roles;
        for (const auto* n : node.find_all("")) {
            if (n->role.rfind("handle:", 0) == 0 || n->role.rfind("lock:", 0) == 0) CHECK(roles.insert(n->role).second);
        }
    }
}

TEST_CASE("hover indicator") {
    const auto spec = spec_with(2);
    const auto layout = layout_for(spec);
    const auto g = layout_figure(spec, 1000, 400);
    const auto mid = build_hover_indicator(15000, g, layout);
    const auto lines = mid.find_all("hover-line");
    REQUIRE(lines.size() == 1);
    const auto& l = line_of(lines[0]);
    CHECK(l.from.x == 500);
    CHECK(l.to.x == 500);
    CHECK(l.from.y == g.tracks.front().y);
    CHECK(l.to.y == g.tracks.back().bottom());
    CHECK(mid.find("hover-label") != nullptr);
    CHECK(build_hover_indicator(5000, g, layout).children().empty());
    CHECK(line_of(build_hover_indicator(10000, g, layout).find("hover-line")).from.x == 250);
    CHECK(build_hover_indicator(20000, g, layout).children().empty());
}

TEST_CASE("compose with no observations still draws the chrome") {
    const auto spec = spec_with(1);
    Dataset d;
    Series s;
    s.name = "s0";
    d.series["s0"] = s;
    const auto scene = compose(d, spec, layout_for(spec), 1000, 300);
    CHECK(scene.root.is_group());
    CHECK(scene.root.find("control-axis") != nullptr);
    CHECK(scene.root.find_all("brush:").size() == 3);
    CHECK(scene.root.find_all("handle:").size() == 4);
    for (std::size_t z = 0; z < 3; ++z) {
        const auto* p = scene.root.find("plot:0:" + std::to_string(z));
        REQUIRE(p != nullptr);
        CHECK(p->data_value("count") == "0");
    }
}

TEST_CASE("compose errors") {
    const auto spec = spec_with(1);
    Dataset d;
    try {
        (void)compose(d, spec, layout_for(spec), 1000, 300);
        FAIL("expected UnknownSeries");
    } catch (const SceneError& e) {
        CHECK(e.code() == SceneErrc::UnknownSeries);
    }
    Rng rng(52);
    const auto data = dataset_for(spec, rng, 10);
    CHECK_THROWS_AS((void)compose(data, spec, layout_for(spec), 10, 300), SceneError);
    const auto other = layout_for(spec_with(1, 2, 2));
    try {
        (void)compose(data, spec, other, 1000, 300);
        FAIL("expected LayoutMismatch");
    } catch (const SceneError& e) {
        CHECK(e.code() == SceneErrc::LayoutMismatch);
    }
}

TEST_CASE("dense context zones switch to a density grid") {
    auto spec = spec_with(1);
    Dataset d;
    Series s;
    s.name = "s0";
    for (int i = 0; i < 10000; ++i) {
        s.times.push_back(i);
        s.values.push_back(std::sin(i * 0.01));
    }
    for (int i = 10000; i < 10100; ++i) {
        s.times.push_back(i * 2);
        s.values.push_back(0.0);
    }
    d.series["s0"] = s;
    const auto scene = compose(d, spec, layout_for(spec), 1000, 300);
    CHECK(plot_variant(scene, "plot:0:0") == "density-grid");
    CHECK(scene.root.find("plot:0:0")->data_value("plot-type") == "NAP");
    CHECK(plot_variant(scene, "plot:0:1") == "raw-marks");
    CHECK(scene.root.find("plot:0:2")->data_value("plot-type") == "VAP");
    CHECK(plot_variant(scene, "plot:0:2") == "histogram");
}

TEST_CASE("property: columns align across tracks and follow zone order") {
    Rng rng(53);
    for (int iter = 0; iter < 50; ++iter) {
        const auto tracks = static_cast<std::size_t>(pplot::testing::uniform(rng, 2, 5));
        const auto spec = spec_with(tracks, static_cast<std::size_t>(pplot::testing::uniform(rng, 0, 3)),
                                    static_cast<std::size_t>(pplot::testing::uniform(rng, 0, 3)));
        const auto data = dataset_for(spec, rng, 200);
        const auto scene = compose(data, spec, layout_for(spec), 1100, 700);
        const auto& g = scene.geometry;
        for (std::size_t z = 0; z < g.columns.size(); ++z) {
            if (z > 0) CHECK(g.columns[z].x0 == g.columns[z - 1].x1);
            const auto ref = rect_of(scene.root.find("zone-frame:0:" + std::to_string(z)));
            for (std::size_t t = 1; t < tracks; ++t) {
                const auto r = rect_of(scene.root.find("zone-frame:" + std::to_string(t) + ":" + std::to_string(z)));
                CHECK(r.x == ref.x);
                CHECK(r.w == ref.w);
            }
        }
    }
}

TEST_CASE("property: mean lines sit at the value-scale image of the slice mean") {
    Rng rng(54);
    for (int iter = 0; iter < 30; ++iter) {
        const auto spec = spec_with(2);
        const auto data = dataset_for(spec, rng, static_cast<std::size_t>(pplot::testing::uniform(rng, 1, 3000)));
        const auto layout = layout_for(spec);
        const auto scene = compose(data, spec, layout, 900, 500);
        for (std::size_t t = 0; t < 2; ++t) {
            const Series& s = data.series.at(spec.tracks[t].series);
            const auto scale = track_value_scale(s);
            for (std::size_t z = 0; z < 3; ++z) {
                const auto st = summary_stats(slice(s, layout.interval(z)));
                const auto* node = scene.root.find("mean-line:" + std::to_string(t) + ":" + std::to_string(z));
                if (!st.mean) {
                    CHECK((node == nullptr || node->children().empty()));
                    continue;
                }
                const double expect = scale.to_y(*st.mean, scene.geometry.zone_region(t, z));
                CHECK(std::fabs(line_of(node).from.y - expect) <= 1e-9);
            }
        }
    }
}

TEST_CASE("svg output") {
    Scene empty{make_group(), {}, layout_for(spec_with(1)), std::nullopt};
    empty.geometry.width = 100;
    empty.geometry.height = 50;
    const auto svg = to_svg(empty);
    CHECK(svg.find("width=\"100\"") != std::string::npos);
    CHECK(svg.find("height=\"50\"") != std::string::npos);
    CHECK(svg.find("<g/>") != std::string::npos);

    Scene one = empty;
    SceneNode r;
    r.shape = marks::Box{{0, 0, 10, 10}};
    one.root.children().push_back(r);
    const auto s1 = to_svg(one);
    CHECK(s1.find("<rect x=\"0.000\"") != std::string::npos);
    std::size_t rects = 0;
    for (auto pos = s1.find("<rect"); pos != std::string::npos; pos = s1.find("<rect", pos + 1)) ++rects;
    CHECK(rects == 1);
    CHECK(to_svg(one) == s1);
}

TEST_CASE("svg escapes text and is deterministic for composed scenes") {
    auto spec = spec_with(2);
    spec.tracks[0].label = "a < b & \"c\"";
    Rng rng(55);
    const auto data = dataset_for(spec, rng, 500);
    const auto scene = compose(data, spec, layout_for(spec), 1000, 400, 15000);
    const auto svg = to_svg(scene);
    CHECK(svg.find("a &lt; b &amp; &quot;c&quot;") != std::string::npos);
    CHECK(svg == to_svg(compose(data, spec, layout_for(spec), 1000, 400, 15000)));
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("scene json carries version, geometry and layout") {
    const auto spec = spec_with(1);
    Rng rng(56);
    const auto data = dataset_for(spec, rng, 50);
    const auto layout = layout_for(spec).toggle_lock(0);
    const auto j = scene_to_json(compose(data, spec, layout, 1200, 600));
    CHECK(j["scene_version"] == 1);
    CHECK(j["geometry"]["width"] == 1200);
    CHECK(j["layout"]["boundaries"] == nlohmann::json::array({0, 10000, 20000, 30000}));
    CHECK(j["layout"]["locks"][0] == true);
    CHECK(j["layout"]["focus_index"] == 1);
    CHECK(j["hover"].is_null());
    CHECK(j["root"]["type"] == "group");
}
