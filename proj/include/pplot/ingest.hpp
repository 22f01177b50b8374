#pragma once

#include "pplot/summarize.hpp"
#include "pplot/timefmt.hpp"
#include "pplot/timeline.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pplot {

enum class FocusPlot { Line, Bar, Dot, EventTicks };
enum class AnnotationKind { MeanLine, QuantileBand };

[[nodiscard]] std::string_view to_string(FocusPlot plot);
[[nodiscard]] std::string_view to_string(AnnotationKind kind);

struct TrackSpec {
    std::string series;
    std::optional<std::string> label;
    std::optional<std::string> units;
    ValueKind value_kind = ValueKind::Continuous;
    FocusPlot focus_plot = FocusPlot::Line;
    PlotPolicy periphery_policy;
    std::vector<AnnotationKind> annotations;
    std::size_t histogram_bins = 10;
    std::size_t envelope_window = 5;
    /// Declared category order for categorical tracks. When empty, categories
    /// are taken in order of first appearance (by time).
    std::vector<std::string> categories;

    [[nodiscard]] const std::string& display_label() const { return label ? *label : series; }
    [[nodiscard]] bool has_annotation(AnnotationKind kind) const;

    friend bool operator==(const TrackSpec&, const TrackSpec&) = default;
};

struct ZoneSpec {
    ZoneKind kind = ZoneKind::Context;
    TimeMs start = 0;
    TimeMs end = 0;
    bool lock_left = false;
    bool lock_right = false;

    friend bool operator==(const ZoneSpec&, const ZoneSpec&) = default;
};

struct LayoutSpec {
    double focus_fraction = 0.5;
    double control_height_px = 40.0;
    TimeMs min_zone_width_ms = 1;

    friend bool operator==(const LayoutSpec&, const LayoutSpec&) = default;
};

struct FigureSpec {
    std::string time_column;
    TimeFormat time_format = TimeFormat::DateOnly;
    std::vector<TrackSpec> tracks;
    std::vector<ZoneSpec> initial_zones;
    LayoutSpec layout;
    /// Control-timeline extent; the dataset extent when absent.
    std::optional<TimeInterval> axis_domain;

    friend bool operator==(const FigureSpec&, const FigureSpec&) = default;
};

/// A located message: "line 12", "row 40, column 'tmax'", "/tracks/0/focus_plot".
struct Diagnostic {
    std::string location;
    std::string message;
};

enum class IngestErrc {
    MalformedJson,
    InvalidField,
    ZoneInvariantViolation,
    MissingColumn,
    UnparseableTime,
    MalformedCsv,
    EmptyDataset,
};

[[nodiscard]] std::string_view to_string(IngestErrc code);

class IngestError : public std::runtime_error {
public:
    IngestError(IngestErrc code, std::vector<Diagnostic> diagnostics);

    [[nodiscard]] IngestErrc code() const noexcept { return code_; }
    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    IngestErrc code_;
    std::vector<Diagnostic> diagnostics_;
};

struct Dataset {
    std::map<std::string, Series> series;
    std::size_t rows = 0;
    /// Non-fatal row-level problems (skipped rows, dropped cells).
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] const Series* find(const std::string& name) const;
    [[nodiscard]] std::size_t observation_count() const;
};

/// Parses and validates a JSON figure spec. Unknown keys are rejected.
/// Throws IngestError (MalformedJson, InvalidField, ZoneInvariantViolation)
/// carrying every diagnostic found.
[[nodiscard]] FigureSpec parse_spec(std::string_view text);

/// Canonical JSON for a spec; zone times are written as epoch milliseconds.
[[nodiscard]] std::string serialize_spec(const FigureSpec& spec);

/// Parses an RFC 4180 CSV with a header row into one series per track.
/// Empty cells are missing observations. Bad cells and rows become
/// diagnostics; UnparseableTime is fatal only when more than 10% of rows
/// have an unreadable timestamp.
[[nodiscard]] Dataset parse_csv(std::string_view bytes, const FigureSpec& spec);

/// [earliest timestamp, latest timestamp + 1). Throws EmptyDataset.
[[nodiscard]] TimeInterval dataset_extent(const Dataset& dataset);

/// The spec's axis_domain if given, else the dataset extent.
[[nodiscard]] TimeInterval figure_domain(const FigureSpec& spec, const Dataset& dataset);

/// Zone layout for the spec's initial zones, with declared locks engaged.
[[nodiscard]] ZoneLayout initial_layout(const FigureSpec& spec, TimeInterval axis_domain);

}  // namespace pplot
