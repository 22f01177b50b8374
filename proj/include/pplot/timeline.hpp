#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pplot {

/// Milliseconds since the Unix epoch, UTC.
using TimeMs = std::int64_t;

/// Boundaries are kept within +/- this many ms so that every zone
/// computation stays exact in both int64 and double arithmetic.
inline constexpr TimeMs kTimeLimit = TimeMs{1} << 50;

/// Half-open interval [start, end).
struct TimeInterval {
    TimeMs start = 0;
    TimeMs end = 0;

    [[nodiscard]] TimeMs width() const { return end - start; }
    [[nodiscard]] bool valid() const { return start < end; }
    [[nodiscard]] bool contains(TimeMs t) const { return t >= start && t < end; }

    friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

enum class ZoneKind { Focus, Context };

[[nodiscard]] std::string_view to_string(ZoneKind kind);

struct Zone {
    ZoneKind kind = ZoneKind::Context;
    TimeInterval interval;

    friend bool operator==(const Zone&, const Zone&) = default;
};

enum class TimelineErrc {
    EmptyLayout,
    NotContiguous,
    NoFocus,
    MultipleFocus,
    ZoneTooNarrow,
    InvalidArgument,
    BoundaryLocked,
    IndexOutOfRange,
};

[[nodiscard]] std::string_view to_string(TimelineErrc code);

class TimelineError : public std::runtime_error {
public:
    TimelineError(TimelineErrc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] TimelineErrc code() const noexcept { return code_; }

private:
    TimelineErrc code_;
};

namespace events {
struct ResizeBoundary {
    std::size_t boundary = 0;
    TimeMs time = 0;
    friend bool operator==(const ResizeBoundary&, const ResizeBoundary&) = default;
};
struct ToggleLock {
    std::size_t boundary = 0;
    friend bool operator==(const ToggleLock&, const ToggleLock&) = default;
};
struct Pan {
    TimeMs delta = 0;
    friend bool operator==(const Pan&, const Pan&) = default;
};
struct Zoom {
    double factor = 1.0;
    TimeMs anchor = 0;
    friend bool operator==(const Zoom&, const Zoom&) = default;
};
struct Hover {
    std::optional<TimeMs> time;
    friend bool operator==(const Hover&, const Hover&) = default;
};
}  // namespace events

using InteractionEvent =
    std::variant<events::ResizeBoundary, events::ToggleLock, events::Pan, events::Zoom, events::Hover>;

/**
 * Ordered, contiguous focus/context zones plus one lock flag per boundary.
 *
 * The layout is stored as its boundary times: zone i spans
 * [boundaries[i], boundaries[i+1]). Boundary 0 is the left edge of the first
 * zone and boundary zone_count() is the right edge of the last one.
 *
 * Values are immutable; every interaction returns a new layout.
 */
class ZoneLayout {
public:
    /// Validates zones and builds a layout with every lock released.
    /// Throws TimelineError (EmptyLayout, NotContiguous, NoFocus,
    /// MultipleFocus, ZoneTooNarrow, InvalidArgument).
    static ZoneLayout create(std::span<const Zone> zones, TimeInterval axis_domain,
                             TimeMs min_zone_width = 1);

    [[nodiscard]] std::size_t zone_count() const { return kinds_.size(); }
    [[nodiscard]] std::size_t boundary_count() const { return boundaries_.size(); }
    [[nodiscard]] std::size_t focus_index() const { return focus_; }

    [[nodiscard]] TimeMs boundary(std::size_t i) const { return boundaries_.at(i); }
    [[nodiscard]] bool locked(std::size_t i) const { return locks_.at(i); }
    [[nodiscard]] const std::vector<TimeMs>& boundaries() const { return boundaries_; }
    [[nodiscard]] const std::vector<bool>& locks() const { return locks_; }

    [[nodiscard]] ZoneKind kind(std::size_t zone) const { return kinds_.at(zone); }
    [[nodiscard]] TimeInterval interval(std::size_t zone) const {
        return {boundaries_.at(zone), boundaries_.at(zone + 1)};
    }
    [[nodiscard]] TimeInterval focus_interval() const { return interval(focus_); }

    /// Zones in temporal order.
    [[nodiscard]] std::vector<Zone> zones() const;

    [[nodiscard]] TimeInterval axis_domain() const { return axis_domain_; }
    [[nodiscard]] TimeMs min_zone_width() const { return min_width_; }

    /// Drag boundary `index` toward `new_time`. Zones ahead of the motion are
    /// pushed rigidly until the first lock, where the zone inside the lock
    /// absorbs the displacement. Throws BoundaryLocked / IndexOutOfRange.
    [[nodiscard]] ZoneLayout resize_boundary(std::size_t index, TimeMs new_time) const;

    /// Throws IndexOutOfRange.
    [[nodiscard]] ZoneLayout toggle_lock(std::size_t index) const;

    /// Translate every unlocked boundary by delta, clamped so no zone drops
    /// below the minimum width.
    [[nodiscard]] ZoneLayout pan(TimeMs delta) const;

    /// Scale unlocked boundaries about `anchor`; factor > 1 zooms out. The
    /// factor is pulled toward 1 until the result is valid. Throws
    /// InvalidArgument for a non-positive or non-finite factor.
    [[nodiscard]] ZoneLayout zoom(double factor, TimeMs anchor) const;

    /// Dispatch an interaction. Hover events leave the layout unchanged.
    [[nodiscard]] ZoneLayout apply(const InteractionEvent& event) const;

    /// Empty when every layout invariant holds, otherwise a description of
    /// the first violation.
    [[nodiscard]] std::optional<std::string> check_invariants() const;

    friend bool operator==(const ZoneLayout&, const ZoneLayout&) = default;

private:
    ZoneLayout() = default;

    [[nodiscard]] bool widths_ok(std::span<const TimeMs> boundaries) const;

    std::vector<ZoneKind> kinds_;
    std::vector<TimeMs> boundaries_;
    std::vector<bool> locks_;
    std::size_t focus_ = 0;
    TimeInterval axis_domain_;
    TimeMs min_width_ = 1;
};

/// Zones as (kind, interval) pairs in temporal order.
[[nodiscard]] std::vector<Zone> zone_intervals(const ZoneLayout& layout);

}  // namespace pplot
