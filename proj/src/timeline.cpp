#include "pplot/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pplot {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

[[noreturn]] void fail(TimelineErrc code, const std::string& msg) { throw TimelineError(code, msg); }

bool within_limit(TimeMs t) { return t >= -kTimeLimit && t <= kTimeLimit; }

}  // namespace

std::string_view to_string(ZoneKind kind) { return kind == ZoneKind::Focus ? "Focus" : "Context"; }

std::string_view to_string(TimelineErrc code) {
    switch (code) {
        case TimelineErrc::EmptyLayout: return "EmptyLayout";
        case TimelineErrc::NotContiguous: return "NotContiguous";
        case TimelineErrc::NoFocus: return "NoFocus";
        case TimelineErrc::MultipleFocus: return "MultipleFocus";
        case TimelineErrc::ZoneTooNarrow: return "ZoneTooNarrow";
        case TimelineErrc::InvalidArgument: return "InvalidArgument";
        case TimelineErrc::BoundaryLocked: return "BoundaryLocked";
        case TimelineErrc::IndexOutOfRange: return "IndexOutOfRange";
    }
    return "Unknown";
}

ZoneLayout ZoneLayout::create(std::span<const Zone> zones, TimeInterval axis_domain, TimeMs min_zone_width) {
    if (zones.empty()) fail(TimelineErrc::EmptyLayout, "layout needs at least one zone");
    if (min_zone_width <= 0) fail(TimelineErrc::InvalidArgument, "min_zone_width must be positive");
    if (!axis_domain.valid()) fail(TimelineErrc::InvalidArgument, "axis domain must satisfy start < end");

    ZoneLayout layout;
    layout.axis_domain_ = axis_domain;
    layout.min_width_ = min_zone_width;

    std::size_t focus_count = 0;
    for (std::size_t i = 0; i < zones.size(); ++i) {
        if (zones[i].kind == ZoneKind::Focus) {
            layout.focus_ = i;
            ++focus_count;
        }
        layout.kinds_.push_back(zones[i].kind);
    }
    if (focus_count == 0) fail(TimelineErrc::NoFocus, "layout has no focus zone");
    if (focus_count > 1) fail(TimelineErrc::MultipleFocus, "layout has more than one focus zone");

    for (std::size_t i = 0; i + 1 < zones.size(); ++i) {
        if (zones[i].interval.end != zones[i + 1].interval.start) {
            std::ostringstream msg;
            msg << "zones " << i << " and " << i + 1 << " are not contiguous at boundary " << i + 1 << " ("
                << zones[i].interval.end << " != " << zones[i + 1].interval.start << ")";
            fail(TimelineErrc::NotContiguous, msg.str());
        }
    }
    for (std::size_t i = 0; i < zones.size(); ++i) {
        const auto& iv = zones[i].interval;
        if (!within_limit(iv.start) || !within_limit(iv.end))
            fail(TimelineErrc::InvalidArgument, "zone " + std::to_string(i) + " lies outside the representable range");
        if (iv.width() < min_zone_width) {
            fail(TimelineErrc::ZoneTooNarrow, "zone " + std::to_string(i) + " is narrower than the minimum width of " +
                                                  std::to_string(min_zone_width) + " ms");
        }
    }

    layout.boundaries_.reserve(zones.size() + 1);
    for (const auto& z : zones) layout.boundaries_.push_back(z.interval.start);
    layout.boundaries_.push_back(zones.back().interval.end);
    layout.locks_.assign(layout.boundaries_.size(), false);
    return layout;
}

std::vector<Zone> ZoneLayout::zones() const {
    std::vector<Zone> out;
    out.reserve(zone_count());
    for (std::size_t i = 0; i < zone_count(); ++i) out.push_back({kinds_[i], interval(i)});
    return out;
}

bool ZoneLayout::widths_ok(std::span<const TimeMs> boundaries) const {
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (!within_limit(boundaries[i])) return false;
        if (i > 0 && boundaries[i] - boundaries[i - 1] < min_width_) return false;
    }
    return true;
}

ZoneLayout ZoneLayout::resize_boundary(std::size_t index, TimeMs new_time) const {
    if (index >= boundary_count())
        fail(TimelineErrc::IndexOutOfRange, "boundary index " + std::to_string(index) + " out of range");
    if (locks_[index]) fail(TimelineErrc::BoundaryLocked, "boundary " + std::to_string(index) + " is locked");

    const TimeMs target = std::clamp(new_time, axis_domain_.start, axis_domain_.end);
    TimeMs delta = target - boundaries_[index];
    if (delta == 0) return *this;

    const std::size_t last = boundary_count() - 1;
    ZoneLayout next = *this;

    if (delta > 0) {
        std::size_t lock = npos;
        for (std::size_t k = index + 1; k <= last; ++k) {
            if (locks_[k]) {
                lock = k;
                break;
            }
        }
        std::size_t stop = last;
        if (lock != npos) {
            // The zone just inside the lock absorbs the push.
            delta = std::min(delta, boundaries_[lock] - boundaries_[lock - 1] - min_width_);
            stop = lock - 1;
        } else {
            delta = std::min(delta, kTimeLimit - boundaries_[last]);
        }
        for (std::size_t k = index; k <= stop; ++k) next.boundaries_[k] += delta;
    } else {
        std::size_t lock = npos;
        for (std::size_t k = index; k-- > 0;) {
            if (locks_[k]) {
                lock = k;
                break;
            }
        }
        std::size_t stop = 0;
        if (lock != npos) {
            delta = std::max(delta, -(boundaries_[lock + 1] - boundaries_[lock] - min_width_));
            stop = lock + 1;
        } else {
            delta = std::max(delta, -kTimeLimit - boundaries_[0]);
        }
        for (std::size_t k = stop; k <= index; ++k) next.boundaries_[k] += delta;
    }
    return next;
}

ZoneLayout ZoneLayout::toggle_lock(std::size_t index) const {
    if (index >= boundary_count())
        fail(TimelineErrc::IndexOutOfRange, "boundary index " + std::to_string(index) + " out of range");
    ZoneLayout next = *this;
    next.locks_[index] = !locks_[index];
    return next;
}

ZoneLayout ZoneLayout::pan(TimeMs delta) const {
    if (delta == 0) return *this;
    delta = std::clamp(delta, -2 * kTimeLimit, 2 * kTimeLimit);

    // Largest admissible magnitude in the direction of delta.
    TimeMs limit = delta > 0 ? delta : -delta;
    for (std::size_t i = 0; i < boundary_count(); ++i) {
        if (locks_[i]) continue;
        const TimeMs room = delta > 0 ? kTimeLimit - boundaries_[i] : boundaries_[i] + kTimeLimit;
        limit = std::min(limit, room);
    }
    for (std::size_t z = 0; z < zone_count(); ++z) {
        const bool left_moves = !locks_[z];
        const bool right_moves = !locks_[z + 1];
        if (left_moves == right_moves) continue;
        // Zone shrinks when its free edge moves toward its fixed edge.
        const bool shrinks = right_moves ? delta < 0 : delta > 0;
        if (shrinks) limit = std::min(limit, boundaries_[z + 1] - boundaries_[z] - min_width_);
    }
    const TimeMs applied = delta > 0 ? limit : -limit;
    if (applied == 0) return *this;

    ZoneLayout next = *this;
    for (std::size_t i = 0; i < boundary_count(); ++i) {
        if (!locks_[i]) next.boundaries_[i] += applied;
    }
    return next;
}

ZoneLayout ZoneLayout::zoom(double factor, TimeMs anchor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
        fail(TimelineErrc::InvalidArgument, "zoom factor must be positive and finite");
    if (factor == 1.0) return *this;

    std::vector<TimeMs> mapped(boundaries_.size());
    const auto map_with = [&](double f) {
        for (std::size_t i = 0; i < boundaries_.size(); ++i) {
            if (locks_[i]) {
                mapped[i] = boundaries_[i];
                continue;
            }
            const double offset = static_cast<double>(boundaries_[i]) - static_cast<double>(anchor);
            const double t = static_cast<double>(anchor) + f * offset;
            if (!(std::fabs(t) <= static_cast<double>(kTimeLimit))) return false;
            mapped[i] = std::llround(t);
        }
        return widths_ok(mapped);
    };

    ZoneLayout next = *this;
    if (map_with(factor)) {
        next.boundaries_ = mapped;
        return next;
    }

    // The admissible factors form an interval around 1; bisect on log(factor)
    // for the one closest to the requested factor.
    double good = 0.0;
    double bad = std::log(factor);
    for (int iter = 0; iter < 64; ++iter) {
        const double mid = 0.5 * (good + bad);
        if (map_with(std::exp(mid))) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    if (good == 0.0) return *this;
    map_with(std::exp(good));
    next.boundaries_ = mapped;
    return next;
}

ZoneLayout ZoneLayout::apply(const InteractionEvent& event) const {
    return std::visit(
        [this](const auto& e) -> ZoneLayout {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, events::ResizeBoundary>) {
                return resize_boundary(e.boundary, e.time);
            } else if constexpr (std::is_same_v<E, events::ToggleLock>) {
                return toggle_lock(e.boundary);
            } else if constexpr (std::is_same_v<E, events::Pan>) {
                return pan(e.delta);
            } else if constexpr (std::is_same_v<E, events::Zoom>) {
                return zoom(e.factor, e.anchor);
            } else {
                return *this;
            }
        },
        event);
}

std::optional<std::string> ZoneLayout::check_invariants() const {
    if (kinds_.empty()) return "no zones";
    if (boundaries_.size() != kinds_.size() + 1) return "boundary count mismatch";
    if (locks_.size() != boundaries_.size()) return "lock count mismatch";
    const auto focus_count = std::count(kinds_.begin(), kinds_.end(), ZoneKind::Focus);
    if (focus_count != 1) return "expected exactly one focus zone, found " + std::to_string(focus_count);
    if (kinds_[focus_] != ZoneKind::Focus) return "focus index is stale";
    if (min_width_ <= 0) return "non-positive minimum width";
    for (std::size_t i = 0; i < boundaries_.size(); ++i) {
        if (!within_limit(boundaries_[i])) return "boundary " + std::to_string(i) + " out of range";
        if (i > 0 && boundaries_[i] - boundaries_[i - 1] < min_width_)
            return "zone " + std::to_string(i - 1) + " narrower than minimum width";
    }
    return std::nullopt;
}

std::vector<Zone> zone_intervals(const ZoneLayout& layout) { return layout.zones(); }

}  // namespace pplot
