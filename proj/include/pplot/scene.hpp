#pragma once

#include "pplot/ingest.hpp"
#include "pplot/summarize.hpp"
#include "pplot/timeline.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pplot {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    [[nodiscard]] double right() const { return x + w; }
    [[nodiscard]] double bottom() const { return y + h; }

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct Style {
    std::string fill = "none";
    std::string stroke = "none";
    double stroke_width = 1.0;
    std::string dash;
    double opacity = 1.0;
};

struct SceneNode;

namespace marks {
struct Group {
    std::vector<SceneNode> children;
};
struct Box {
    Rect rect;
};
struct Line {
    Point from;
    Point to;
};
struct Circle {
    Point center;
    double r = 0.0;
};
/// Polyline, or polygon when `closed`.
struct Path {
    std::vector<Point> points;
    bool closed = false;
};
enum class Anchor { Start, Middle, End };
struct Text {
    Point at;
    std::string text;
    double size = 11.0;
    Anchor anchor = Anchor::Start;
};
}  // namespace marks

/// A mark in figure pixel space (y grows downward). `role` tags nodes that
/// clients hit-test or look up, e.g. "handle:2", "lock:0", "brush:1",
/// "plot:0:2", "mean-line:0:1", "hover-indicator". `data` becomes extra
/// data-* attributes in SVG output.
struct SceneNode {
    std::variant<marks::Group, marks::Box, marks::Line, marks::Circle, marks::Path, marks::Text> shape;
    Style style;
    std::string role;
    std::vector<std::pair<std::string, std::string>> data;

    [[nodiscard]] bool is_group() const { return std::holds_alternative<marks::Group>(shape); }
    [[nodiscard]] const std::vector<SceneNode>& children() const;
    [[nodiscard]] std::vector<SceneNode>& children();
    [[nodiscard]] std::optional<std::string> data_value(std::string_view key) const;

    /// Depth-first search by role.
    [[nodiscard]] const SceneNode* find(std::string_view role) const;
    /// All nodes whose role starts with `prefix`, in tree order.
    [[nodiscard]] std::vector<const SceneNode*> find_all(std::string_view prefix) const;
};

[[nodiscard]] SceneNode make_group(std::string role = {});

struct ColumnRange {
    double x0 = 0.0;
    double x1 = 0.0;

    [[nodiscard]] double width() const { return x1 - x0; }
    friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

struct FigureGeometry {
    double width = 0.0;
    double height = 0.0;
    Rect control;
    std::vector<Rect> tracks;
    /// Zone columns left to right, shared by every track.
    std::vector<ColumnRange> columns;
    /// x of each zone boundary: columns[i].x0 for i < n, columns.back().x1 last.
    std::vector<double> boundary_x;

    [[nodiscard]] Rect zone_region(std::size_t track, std::size_t zone) const;
};

struct Scene {
    SceneNode root;
    FigureGeometry geometry;
    ZoneLayout layout;
    std::optional<TimeMs> hover;
};

enum class SceneErrc { TooSmall, ScaleMismatch, UnknownSeries, LayoutMismatch };

[[nodiscard]] std::string_view to_string(SceneErrc code);

class SceneError : public std::runtime_error {
public:
    SceneError(SceneErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] SceneErrc code() const noexcept { return code_; }

private:
    SceneErrc code_;
};

/// Continuous value axis: lo at the bottom of a region, hi at the top.
struct LinearScale {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] double to_y(double v, const Rect& region) const {
        return region.y + region.h * (hi - v) / (hi - lo);
    }
};

/// Categorical axis: `count` equal rows, category 0 at the top.
struct CategoryScale {
    std::size_t count = 1;

    [[nodiscard]] double row_top(std::size_t code, const Rect& region) const {
        return region.y + region.h * static_cast<double>(code) / static_cast<double>(count);
    }
    [[nodiscard]] double row_height(const Rect& region) const { return region.h / static_cast<double>(count); }
};

using ValueScale = std::variant<std::monostate, LinearScale, CategoryScale>;

[[nodiscard]] double time_to_x(TimeMs t, TimeInterval scale, const Rect& region);

inline constexpr double kControlGap = 4.0;
inline constexpr double kTrackGap = 4.0;
inline constexpr double kMinColumnWidth = 20.0;
inline constexpr double kMinTrackHeight = 30.0;

/// Control strip across the top, tracks stacked below it, and zone columns
/// (focus_fraction of the width for the focus, the rest split evenly among
/// context zones). Throws SceneError(TooSmall).
[[nodiscard]] FigureGeometry layout_figure(const FigureSpec& spec, double width, double height);

/// Marks for one zone plot. RawMarks are drawn with `mark`; Histogram and
/// CategoryCounts draw horizontal bars along a vertical value axis.
/// Throws SceneError(ScaleMismatch) when the scales do not fit the data.
[[nodiscard]] SceneNode build_zone_plot(const PlotData& data, const Rect& region, const ValueScale& value_scale,
                                        std::optional<TimeInterval> time_scale, FocusPlot mark = FocusPlot::Dot);

/// Mean line or interquartile band. Missing statistics give an empty group.
[[nodiscard]] SceneNode build_annotation(const AnnotationStats& stats, AnnotationKind kind, const Rect& region,
                                         const LinearScale& value_scale);

/// Axis bar, one brush per zone, a handle per unlocked boundary, and a lock
/// toggle per boundary. Boundaries outside the axis domain are clipped.
[[nodiscard]] SceneNode build_control_timeline(const ZoneLayout& layout, const Rect& region);

/// Vertical time indicator across every track's focus column; an empty group
/// unless `time` lies in the focus interval.
[[nodiscard]] SceneNode build_hover_indicator(TimeMs time, const FigureGeometry& geometry, const ZoneLayout& layout);

/// Shared value scale for a continuous track: full-series min/max, padded 5%.
[[nodiscard]] LinearScale track_value_scale(const Series& series);

/// Full figure: control timeline, one track per spec track with a plot per
/// zone, annotations, and the optional hover indicator.
[[nodiscard]] Scene compose(const Dataset& dataset, const FigureSpec& spec, const ZoneLayout& layout, double width,
                            double height, std::optional<TimeMs> hover = std::nullopt);

/// Standalone SVG 1.1; byte-deterministic for a given scene.
[[nodiscard]] std::string to_svg(const Scene& scene);

}  // namespace pplot
